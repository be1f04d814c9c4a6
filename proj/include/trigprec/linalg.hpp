#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "trigprec/errors.hpp"

namespace trigprec {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using DenseMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;
using RealVector = Vector<double>;

/// Real eigenvalues (or singular values) sorted ascending.
struct Spectrum {
    RealVector values;

    Index size() const noexcept { return values.size(); }
    double min() const { return values.size() ? values(0) : 0.0; }
    double max() const { return values.size() ? values(values.size() - 1) : 0.0; }
};

template <typename Scalar>
struct EigenDecomposition {
    Spectrum spectrum;
    Matrix<Scalar> vectors; ///< orthonormal columns, empty when not requested
};

struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius mass is below tolerance * ||A||_F.
    double tolerance = 1e-12;
    /// Sweep cap; a negative value means 60 * order.
    int max_sweeps = -1;
    bool want_vectors = true;
};

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

inline double conj_if(double x) { return x; }
inline Complex conj_if(const Complex& z) { return std::conj(z); }

template <typename Scalar>
double real_part(const Scalar& s)
{
    if constexpr (is_complex<Scalar>::value) return s.real();
    else return s;
}

/// Blocked in-place conjugate transpose of a square matrix or strided map.
template <typename M>
void adjoint_in_place(M& a)
{
    using Scalar = typename M::Scalar;
    constexpr Index bs = 32;
    const Index n = a.rows();
    for (Index jb = 0; jb < n; jb += bs) {
        const Index je = std::min(jb + bs, n);
        for (Index j = jb; j < je; ++j) a(j, j) = conj_if(a(j, j));
        for (Index ib = jb; ib < n; ib += bs) {
            const Index ie = std::min(ib + bs, n);
            for (Index j = jb; j < je; ++j)
                for (Index i = std::max(ib, j + 1); i < ie; ++i) {
                    const Scalar t = a(i, j);
                    a(i, j) = conj_if(a(j, i));
                    a(j, i) = conj_if(t);
                }
        }
    }
}

} // namespace detail

/// Sum of squared moduli of all entries.
template <typename Derived>
double frobenius_norm_sq(const Eigen::MatrixBase<Derived>& a)
{
    return a.squaredNorm();
}

/// Largest |A - A^*| entry against 1e-12 * (1 + max |A|) unless a tolerance is given.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol = 1e-12)
{
    if (a.rows() != a.cols()) return false;
    if (a.size() == 0) return true;
    const double scale = 1.0 + a.cwiseAbs().maxCoeff();
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    return asym <= rel_tol * scale;
}

template <typename Derived>
bool has_zero_imaginary_part(const Eigen::MatrixBase<Derived>& a)
{
    if constexpr (detail::is_complex<typename Derived::Scalar>::value)
        return (a.imag().array() == 0.0).all();
    else
        return true;
}

/// Cyclic Jacobi eigensolver for a Hermitian (or real symmetric) matrix.
///
/// Uses the round-robin (parallel) cyclic ordering: each step pairs every
/// index with exactly one partner, so the step's rotations commute. A step is
/// applied as B = A J on columns, then J^* A J = (B^* J) since A is Hermitian,
/// which keeps every update a contiguous column operation.
template <typename Scalar>
EigenDecomposition<Scalar> jacobi_eigen(const Matrix<Scalar>& input, const JacobiOptions& opt = {})
{
    const Index n = input.rows();
    if (input.cols() != n) throw DimensionMismatch("hermitian_eig: matrix is not square");
    if (!is_hermitian(input, 1e-10)) throw NotHermitian("hermitian_eig: input is not Hermitian");

    // Working copy with a padded leading dimension: power-of-two column
    // strides alias in cache during the per-step transposes.
    const Index ld = n + ((n % 32 == 0) ? 4 : 0);
    std::vector<Scalar> storage(static_cast<std::size_t>(ld * n));
    using Strided = Eigen::Map<Matrix<Scalar>, Eigen::Unaligned, Eigen::OuterStride<>>;
    Strided a(storage.data(), n, n, Eigen::OuterStride<>(ld));
    a = 0.5 * (input + input.adjoint());
    for (Index i = 0; i < n; ++i) a(i, i) = detail::real_part(a(i, i));

    Matrix<Scalar> v;
    if (opt.want_vectors) v = Matrix<Scalar>::Identity(n, n);

    const double norm = a.norm();
    const double target = opt.tolerance * norm;
    const double skip = n > 1 ? target / static_cast<double>(n) : 0.0;
    const long max_sweeps = opt.max_sweeps >= 0 ? opt.max_sweeps : 60L * static_cast<long>(n);

    auto off_mass = [&]() {
        double s = 0.0;
        for (Index q = 0; q < n; ++q)
            s += a.col(q).tail(n - q - 1).squaredNorm();
        return std::sqrt(2.0 * s);
    };

    struct Rotation {
        Index p, q;
        double c, s;
        Scalar phase_c; // e^{-i phi}
        double new_pp, new_qq;
    };

    // Round-robin schedule over m players (a dummy slot when n is odd).
    const Index m = n + (n % 2);
    std::vector<Index> players(static_cast<std::size_t>(m));
    std::iota(players.begin(), players.end(), Index{0});

    auto rotate_columns = [](auto& x, const Rotation& r) {
        Scalar* cp = &x(0, r.p);
        Scalar* cq = &x(0, r.q);
        const Scalar sp = r.s * r.phase_c;
        const Scalar cpc = r.c * r.phase_c;
        const Index len = x.rows();
        for (Index i = 0; i < len; ++i) {
            const Scalar xp = cp[i];
            const Scalar xq = cq[i];
            cp[i] = r.c * xp - sp * xq;
            cq[i] = r.s * xp + cpc * xq;
        }
    };

    std::vector<Rotation> step;
    step.reserve(static_cast<std::size_t>(m / 2));
    bool converged = norm == 0.0 || n < 2;
    for (long sweep = 0; !converged && sweep < max_sweeps; ++sweep) {
        if (off_mass() <= target) {
            converged = true;
            break;
        }
        for (Index round = 0; round + 1 < m; ++round) {
            step.clear();
            for (Index k = 0; k < m / 2; ++k) {
                Index p = players[static_cast<std::size_t>(k)];
                Index q = players[static_cast<std::size_t>(m - 1 - k)];
                if (p >= n || q >= n) continue;
                if (p > q) std::swap(p, q);
                const Scalar apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= skip || mag == 0.0) continue;
                const double app = detail::real_part(a(p, p));
                const double aqq = detail::real_part(a(q, q));
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                step.push_back({p, q, c, t * c, detail::conj_if(Scalar(apq / mag)), app - t * mag, aqq + t * mag});
            }
            // Rotate the tournament, player 0 stays fixed.
            std::rotate(players.begin() + 1, players.end() - 1, players.end());
            if (step.empty()) continue;

            for (const auto& r : step) rotate_columns(a, r);
            detail::adjoint_in_place(a);
            for (const auto& r : step) rotate_columns(a, r);
            for (const auto& r : step) {
                a(r.p, r.p) = r.new_pp;
                a(r.q, r.q) = r.new_qq;
                a(r.p, r.q) = Scalar(0);
                a(r.q, r.p) = Scalar(0);
            }
            if (opt.want_vectors)
                for (const auto& r : step) rotate_columns(v, r);
        }
        // Roundoff drift away from exact Hermitian symmetry.
        for (Index q = 0; q < n; ++q)
            for (Index p = q + 1; p < n; ++p) {
                const Scalar avg = 0.5 * (a(p, q) + detail::conj_if(a(q, p)));
                a(p, q) = avg;
                a(q, p) = detail::conj_if(avg);
            }
    }
    if (!converged && off_mass() > target)
        throw NoConvergence("hermitian_eig: sweep cap of " + std::to_string(max_sweeps) + " exceeded");

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
        return detail::real_part(a(i, i)) < detail::real_part(a(j, j));
    });

    EigenDecomposition<Scalar> out;
    out.spectrum.values.resize(n);
    if (opt.want_vectors) out.vectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.spectrum.values(k) = detail::real_part(a(src, src));
        if (opt.want_vectors) out.vectors.col(k) = v.col(src);
    }
    return out;
}

/// Hermitian eigendecomposition. Matrices with an exactly zero imaginary part
/// are routed through the real-symmetric path.
EigenDecomposition<Complex> hermitian_eig(const DenseMatrix& a, const JacobiOptions& opt = {});

/// Eigenvalues only (skips eigenvector accumulation).
Spectrum hermitian_eigenvalues(const DenseMatrix& a, const JacobiOptions& opt = {});

/// Singular values ascending. Hermitian inputs use |eigenvalues|; general
/// inputs use the square roots of the eigenvalues of A^*A.
Spectrum singular_values(const DenseMatrix& a);

/// Solves A x = b for Hermitian, numerically nonsingular A.
ComplexVector solve_hermitian(const DenseMatrix& a, const ComplexVector& b);

/// Number of singular values strictly above the threshold.
Index numerical_rank(const DenseMatrix& a, double threshold = 1e-10);

/// Largest singular value.
double operator_norm(const DenseMatrix& a);

/// || U^* U - I ||_F
double unitarity_defect(const DenseMatrix& u);

} // namespace trigprec
