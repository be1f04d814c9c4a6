#include "trigprec/algebras.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "trigprec/toeplitz.hpp"

namespace trigprec {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> to_std(const ComplexVector& x) { return {x.data(), x.data() + x.size()}; }

ComplexVector from_std(const std::vector<Complex>& x)
{
    return Eigen::Map<const ComplexVector>(x.data(), static_cast<Index>(x.size()));
}

void check_square(const DenseMatrix& a, Index n, const char* where)
{
    if (a.rows() != n || a.cols() != n)
        throw DimensionMismatch(std::string(where) + ": matrix order does not match the algebra");
}

} // namespace

std::string to_string(AlgebraKind kind)
{
    switch (kind) {
    case AlgebraKind::Fourier: return "fourier";
    case AlgebraKind::Sine: return "sine";
    case AlgebraKind::Hartley: return "hartley";
    case AlgebraKind::CustomVandermonde: return "custom";
    }
    return "unknown";
}

AlgebraKind parse_algebra_kind(const std::string& name)
{
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "fourier" || lower == "circulant") return AlgebraKind::Fourier;
    if (lower == "sine" || lower == "tau") return AlgebraKind::Sine;
    if (lower == "hartley") return AlgebraKind::Hartley;
    if (lower == "custom" || lower == "random") return AlgebraKind::CustomVandermonde;
    throw ParseError("unknown algebra '" + name + "'", 0);
}

Eigen::RowVectorXcd TransformAlgebra::basis_row(double x) const
{
    const Index n = order();
    Eigen::RowVectorXcd row(n);
    switch (kind_) {
    case AlgebraKind::Fourier: {
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (Index j = 0; j < n; ++j) row(j) = std::polar(scale, static_cast<double>(j) * x);
        break;
    }
    case AlgebraKind::Sine: {
        const double scale = std::sqrt(2.0 / static_cast<double>(n + 1));
        for (Index j = 0; j < n; ++j) row(j) = scale * std::sin(static_cast<double>(j + 1) * x);
        break;
    }
    case AlgebraKind::Hartley: {
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (Index j = 0; j < n; ++j) {
            const double jx = static_cast<double>(j) * x;
            row(j) = scale * (std::sin(jx) + std::cos(jx));
        }
        break;
    }
    case AlgebraKind::CustomVandermonde:
        throw Unsupported("basis_row: custom unitaries carry no basis functions");
    }
    return row;
}

std::pair<double, double> TransformAlgebra::domain() const
{
    if (kind_ == AlgebraKind::Sine) return {0.0, kPi};
    return {0.0, 2.0 * kPi};
}

ComplexVector TransformAlgebra::to_spectral(const ComplexVector& x) const
{
    if (x.size() != order()) throw DimensionMismatch("to_spectral: vector length does not match the algebra");
    if (kind_ == AlgebraKind::Fourier) {
        // (V x)_i = n^{-1/2} sum_j e^{2 pi i ij/n} x_j
        Eigen::FFT<double> fft;
        std::vector<Complex> out;
        fft.inv(out, to_std(x));
        return from_std(out) * std::sqrt(static_cast<double>(order()));
    }
    // TODO: route the sine and Hartley algebras through a DST-I / DHT built on the FFT.
    return vandermonde_ * x;
}

ComplexVector TransformAlgebra::from_spectral(const ComplexVector& y) const
{
    if (y.size() != order()) throw DimensionMismatch("from_spectral: vector length does not match the algebra");
    if (kind_ == AlgebraKind::Fourier) {
        Eigen::FFT<double> fft;
        std::vector<Complex> out;
        fft.fwd(out, to_std(y));
        return from_std(out) / std::sqrt(static_cast<double>(order()));
    }
    return unitary_ * y;
}

TransformAlgebra make_algebra(AlgebraKind kind, Index n)
{
    if (kind == AlgebraKind::CustomVandermonde)
        throw Unsupported("make_algebra: custom algebras need an explicit unitary");
    if (n < 2) throw DimensionMismatch("make_algebra: order must be at least 2");

    TransformAlgebra alg;
    alg.kind_ = kind;
    alg.label_ = to_string(kind);
    alg.grid_.resize(n);
    for (Index i = 0; i < n; ++i) {
        alg.grid_(i) = kind == AlgebraKind::Sine ? static_cast<double>(i + 1) * kPi / static_cast<double>(n + 1)
                                                 : 2.0 * static_cast<double>(i) * kPi / static_cast<double>(n);
    }
    alg.vandermonde_.resize(n, n);
    for (Index i = 0; i < n; ++i) alg.vandermonde_.row(i) = alg.basis_row(alg.grid_(i));
    alg.unitary_ = alg.vandermonde_.adjoint();

    const double defect = unitarity_defect(alg.unitary_);
    if (!(defect <= 1e-10 * std::sqrt(static_cast<double>(n))))
        throw NotUnitary("make_algebra: " + alg.label_ + " matrix of order " + std::to_string(n) +
                         " is not unitary (defect " + std::to_string(defect) + ")");
    return alg;
}

TransformAlgebra make_custom_algebra(const DenseMatrix& unitary, std::string label)
{
    const Index n = unitary.rows();
    if (unitary.cols() != n || n < 1) throw DimensionMismatch("make_custom_algebra: unitary must be square");
    const double defect = unitarity_defect(unitary);
    if (!(defect <= 1e-10 * std::sqrt(static_cast<double>(n))))
        throw NotUnitary("make_custom_algebra: matrix is not unitary");

    TransformAlgebra alg;
    alg.kind_ = AlgebraKind::CustomVandermonde;
    alg.label_ = std::move(label);
    alg.grid_.resize(n);
    for (Index i = 0; i < n; ++i) alg.grid_(i) = 2.0 * static_cast<double>(i) * kPi / static_cast<double>(n);
    alg.unitary_ = unitary;
    alg.vandermonde_ = unitary.adjoint();
    return alg;
}

DenseMatrix random_unitary(Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    DenseMatrix z(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<DenseMatrix> qr(z);
    DenseMatrix q = qr.householderQ();
    const DenseMatrix& r = qr.matrixQR();
    // Fix the column phases so the distribution is Haar.
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

TransformAlgebra make_random_algebra(Index n, std::uint64_t seed)
{
    return make_custom_algebra(random_unitary(n, seed), "random(" + std::to_string(seed) + ")");
}

ComplexVector algebra_eigenvalues(const TransformAlgebra& alg, const DenseMatrix& a)
{
    check_square(a, alg.order(), "algebra_eigenvalues");
    const DenseMatrix& u = alg.unitary();
    // diag(U^* A U)_i = u_i^* A u_i
    const DenseMatrix au = a * u;
    return (u.conjugate().cwiseProduct(au)).colwise().sum().transpose();
}

DenseMatrix algebra_member(const TransformAlgebra& alg, const ComplexVector& lambda)
{
    if (lambda.size() != alg.order()) throw DimensionMismatch("algebra_member: eigenvalue count does not match");
    const DenseMatrix& u = alg.unitary();
    return u * lambda.asDiagonal() * u.adjoint();
}

DenseMatrix project(const TransformAlgebra& alg, const DenseMatrix& a)
{
    return algebra_member(alg, algebra_eigenvalues(alg, a));
}

ComplexVector optimal_circulant_column(const Symbol& f, Index n)
{
    if (n < 1) throw DimensionMismatch("optimal_circulant_column: order must be positive");
    ComplexVector c(n);
    const double nd = static_cast<double>(n);
    for (Index k = 0; k < n; ++k) {
        const int ki = static_cast<int>(k);
        const double kd = static_cast<double>(k);
        c(k) = ((nd - kd) * f.coefficient(ki) + kd * f.coefficient(ki - static_cast<int>(n))) / nd;
    }
    return c;
}

DenseMatrix circulant(const ComplexVector& first_column)
{
    const Index n = first_column.size();
    DenseMatrix c(n, n);
    for (Index k = 0; k < n; ++k) {
        // column k is the first column shifted down by k
        c.col(k).tail(n - k) = first_column.head(n - k);
        c.col(k).head(k) = first_column.tail(k);
    }
    return c;
}

ComplexVector circulant_eigenvalues(const ComplexVector& first_column)
{
    // lambda_i = sum_m c_m e^{2 pi i im/n}
    Eigen::FFT<double> fft;
    std::vector<Complex> out;
    fft.inv(out, to_std(first_column));
    return from_std(out) * static_cast<double>(first_column.size());
}

DenseMatrix project_toeplitz_fast(const Symbol& f, Index n)
{
    return circulant(optimal_circulant_column(f, n));
}

ComplexVector toeplitz_algebra_eigenvalues(const TransformAlgebra& alg, const Symbol& f)
{
    const Index n = alg.order();
    if (alg.kind() == AlgebraKind::Fourier) return circulant_eigenvalues(optimal_circulant_column(f, n));
    if (!alg.has_basis()) return algebra_eigenvalues(alg, toeplitz_section(f, n));
    ComplexVector lambda(n);
    for (Index i = 0; i < n; ++i) lambda(i) = toeplitz_form(f, alg.vandermonde().row(i));
    return lambda;
}

void PinchingPartition::validate(Index n) const
{
    std::vector<char> seen(static_cast<std::size_t>(std::max<Index>(n, 0)), 0);
    Index covered = 0;
    for (const auto& block : blocks) {
        if (block.empty()) throw BadPartition("pinching partition has an empty block");
        for (const Index i : block) {
            if (i < 0 || i >= n) throw BadPartition("pinching partition index " + std::to_string(i) + " out of range");
            if (seen[static_cast<std::size_t>(i)]) throw BadPartition("pinching partition blocks overlap at " + std::to_string(i));
            seen[static_cast<std::size_t>(i)] = 1;
            ++covered;
        }
    }
    if (covered != n) throw BadPartition("pinching partition does not cover every index");
}

std::vector<Index> PinchingPartition::block_of(Index n) const
{
    validate(n);
    std::vector<Index> owner(static_cast<std::size_t>(n));
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (const Index i : blocks[b]) owner[static_cast<std::size_t>(i)] = static_cast<Index>(b);
    return owner;
}

PinchingPartition PinchingPartition::whole(Index n) { return contiguous(n, n); }

PinchingPartition PinchingPartition::singletons(Index n) { return contiguous(n, 1); }

PinchingPartition PinchingPartition::contiguous(Index n, Index block_size)
{
    if (block_size < 1) throw BadPartition("block size must be positive");
    PinchingPartition p;
    for (Index start = 0; start < n; start += block_size) {
        std::vector<Index> block;
        for (Index i = start; i < std::min(n, start + block_size); ++i) block.push_back(i);
        p.blocks.push_back(std::move(block));
    }
    return p;
}

DenseMatrix pinch(const PinchingPartition& partition, const DenseMatrix& a)
{
    if (a.rows() != a.cols()) throw DimensionMismatch("pinch: matrix must be square");
    const std::vector<Index> owner = partition.block_of(a.rows());
    DenseMatrix out = a;
    for (Index k = 0; k < a.cols(); ++k)
        for (Index j = 0; j < a.rows(); ++j)
            if (owner[static_cast<std::size_t>(j)] != owner[static_cast<std::size_t>(k)]) out(j, k) = Complex(0.0);
    return out;
}

DenseMatrix project_pinched(const TransformAlgebra& alg, const PinchingPartition& partition, const DenseMatrix& a)
{
    check_square(a, alg.order(), "project_pinched");
    const DenseMatrix& u = alg.unitary();
    const DenseMatrix inner = u.adjoint() * a * u;
    return u * pinch(partition, inner) * u.adjoint();
}

} // namespace trigprec
