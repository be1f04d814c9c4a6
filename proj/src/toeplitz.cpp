#include "trigprec/toeplitz.hpp"

#include <unsupported/Eigen/FFT>

namespace trigprec {

DenseMatrix toeplitz_section(const Symbol& f, Index n)
{
    if (n < 1) throw DimensionMismatch("toeplitz_section: order must be positive");
    DenseMatrix t = DenseMatrix::Zero(n, n);
    for (const auto& [k, a] : f.coefficients()) {
        if (std::abs(k) >= n) continue;
        // diagonal j - col = k
        for (Index col = std::max<Index>(0, -k); col < n && col + k < n; ++col) t(col + k, col) = a;
    }
    return t;
}

namespace {

DenseMatrix hankel_from(const Symbol& f, Index n, int sign)
{
    if (n < 1) throw DimensionMismatch("hankel_section: order must be positive");
    DenseMatrix h = DenseMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) {
            const Index freq = j + k + 1;
            if (freq > f.degree()) break;
            h(j, k) = f.coefficient(sign * static_cast<int>(freq));
        }
    return h;
}

} // namespace

DenseMatrix hankel_section(const Symbol& f, Index n) { return hankel_from(f, n, 1); }

DenseMatrix hankel_section_negative(const Symbol& f, Index n) { return hankel_from(f, n, -1); }

DenseMatrix product_correction(const Symbol& g, Index n, bool verify)
{
    if (!g.is_real()) throw NotHermitian("product_correction: symbol must be real-valued");
    const DenseMatrix t = toeplitz_section(g, n);
    DenseMatrix r = toeplitz_section(product(g, g), n) - t * t;
    if (verify) {
        const Spectrum sv = singular_values(r);
        const Index allowed = 2 * g.degree();
        const Index rank = static_cast<Index>((sv.values.array() > 1e-10).count());
        if (rank > allowed)
            throw InvariantViolation("product_correction: rank " + std::to_string(rank) + " exceeds 2*degree = " +
                                     std::to_string(allowed));
    }
    return r;
}

std::vector<ProductCorrectionSample> product_correction_ladder(const Symbol& g, const std::vector<Index>& ladder)
{
    std::vector<ProductCorrectionSample> out;
    const Index allowed = 2 * g.degree();
    for (const Index n : ladder) {
        const DenseMatrix r = product_correction(g, n, false);
        const Spectrum sv = singular_values(r);
        ProductCorrectionSample s;
        s.n = n;
        s.rank = static_cast<Index>((sv.values.array() > 1e-10).count());
        s.norm = sv.max();
        // values are ascending; index `allowed` counted from the top
        s.tail_singular_value = n > allowed ? sv.values(n - allowed - 1) : 0.0;
        out.push_back(s);
    }
    return out;
}

Complex toeplitz_form(const Symbol& f, const Eigen::Ref<const Eigen::RowVectorXcd>& v)
{
    const Index n = v.size();
    Complex sum(0.0);
    for (const auto& [m, a] : f.coefficients()) {
        if (std::abs(m) >= n) continue;
        // sum over j - k = m of v_j conj(v_k)
        const Index len = n - std::abs(m);
        const Index j0 = m >= 0 ? m : 0;
        const Index k0 = m >= 0 ? 0 : -m;
        sum += a * v.segment(k0, len).dot(v.segment(j0, len)); // dot conjugates its left side
    }
    return sum;
}

ComplexVector toeplitz_multiply(const Symbol& f, const ComplexVector& x)
{
    const Index n = x.size();
    if (n == 0) return x;
    // First column of the 2n circulant: a_0..a_{n-1}, 0, a_{-(n-1)}..a_{-1}.
    const auto m = static_cast<std::size_t>(2 * n);
    std::vector<Complex> col(m, Complex(0.0));
    for (const auto& [k, a] : f.coefficients()) {
        if (std::abs(k) >= n) continue;
        col[k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k)] = a;
    }
    std::vector<Complex> padded(m, Complex(0.0));
    for (Index i = 0; i < n; ++i) padded[static_cast<std::size_t>(i)] = x(i);

    Eigen::FFT<double> fft;
    std::vector<Complex> col_hat;
    std::vector<Complex> x_hat;
    fft.fwd(col_hat, col);
    fft.fwd(x_hat, padded);
    for (std::size_t i = 0; i < m; ++i) x_hat[i] *= col_hat[i];
    std::vector<Complex> y;
    fft.inv(y, x_hat);

    ComplexVector out(n);
    for (Index i = 0; i < n; ++i) out(i) = y[static_cast<std::size_t>(i)];
    return out;
}

} // namespace trigprec
