#pragma once

// Seeded generators and independent oracles shared by the test suites. Nothing
// here calls into the library's solvers, so the oracles stay independent of
// the code paths they check.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

namespace testing_support {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline Mat random_matrix(Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat a(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) a(i, j) = Complex(u(rng), u(rng));
    return a;
}

inline Mat random_hermitian(Index n, std::uint64_t seed)
{
    const Mat a = random_matrix(n, seed);
    return 0.5 * (a + a.adjoint());
}

inline Mat random_real_symmetric(Index n, std::uint64_t seed)
{
    Mat a = random_matrix(n, seed);
    a = a.real().cast<Complex>();
    return 0.5 * (a + a.adjoint());
}

/// Hermitian positive definite with eigenvalues in [shift, shift + n].
inline Mat random_hpd(Index n, std::uint64_t seed, double shift = 1.0)
{
    const Mat a = random_matrix(n, seed);
    return a * a.adjoint() / static_cast<double>(n) + shift * Mat::Identity(n, n);
}

/// Number of eigenvalues of Hermitian A strictly below x, from the signs of
/// the pivots of an unpivoted LDL^* factorization of A - xI (Sylvester inertia).
inline Index count_below(const Mat& a, double x)
{
    Mat m = a - x * Mat::Identity(a.rows(), a.cols());
    const Index n = m.rows();
    Index negative = 0;
    for (Index k = 0; k < n; ++k) {
        double d = m(k, k).real();
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++negative;
        for (Index i = k + 1; i < n; ++i) {
            const Complex l = m(i, k) / d;
            m.block(i, k + 1, 1, n - k - 1) -= l * m.block(k, k + 1, 1, n - k - 1);
        }
    }
    return negative;
}

/// k-th smallest eigenvalue (0-based) by bisection on the inertia count.
inline double bisect_eigenvalue(const Mat& a, Index k, double tol = 1e-12)
{
    double radius = 0.0;
    for (Index i = 0; i < a.rows(); ++i) radius = std::max(radius, a.row(i).cwiseAbs().sum());
    double lo = -radius - 1.0;
    double hi = radius + 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(a, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Adaptive Simpson quadrature of a real function on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps, int depth = 50)
{
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double tol, int d) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid);
            const double rm = 0.5 * (mid + hi);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
            const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
            if (d <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return rec(lo, mid, flo, flm, fmid, left, tol / 2.0, d - 1) + rec(mid, hi, fmid, frm, fhi, right, tol / 2.0, d - 1);
        };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, eps, depth);
}

inline double max_abs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

} // namespace testing_support
