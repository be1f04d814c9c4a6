#include "trigprec/linalg.hpp"

namespace trigprec {

EigenDecomposition<Complex> hermitian_eig(const DenseMatrix& a, const JacobiOptions& opt)
{
    if (has_zero_imaginary_part(a)) {
        auto real = jacobi_eigen<double>(a.real(), opt);
        EigenDecomposition<Complex> out;
        out.spectrum = std::move(real.spectrum);
        if (opt.want_vectors) out.vectors = real.vectors.cast<Complex>();
        return out;
    }
    return jacobi_eigen<Complex>(a, opt);
}

Spectrum hermitian_eigenvalues(const DenseMatrix& a, const JacobiOptions& opt)
{
    JacobiOptions values_only = opt;
    values_only.want_vectors = false;
    return hermitian_eig(a, values_only).spectrum;
}

Spectrum singular_values(const DenseMatrix& a)
{
    Spectrum out;
    if (a.rows() == a.cols() && is_hermitian(a)) {
        out = hermitian_eigenvalues(a);
        out.values = out.values.cwiseAbs();
    } else {
        const DenseMatrix gram = a.adjoint() * a;
        out = hermitian_eigenvalues(gram);
        out.values = out.values.cwiseMax(0.0).cwiseSqrt();
    }
    std::sort(out.values.begin(), out.values.end());
    return out;
}

ComplexVector solve_hermitian(const DenseMatrix& a, const ComplexVector& b)
{
    if (a.rows() != b.size()) throw DimensionMismatch("solve_hermitian: size mismatch");
    if (!is_hermitian(a, 1e-10)) throw NotHermitian("solve_hermitian: matrix is not Hermitian");
    const auto eig = hermitian_eig(a);
    const RealVector& lambda = eig.spectrum.values;
    const double largest = lambda.cwiseAbs().maxCoeff();
    const double smallest = lambda.cwiseAbs().minCoeff();
    if (!(smallest > 1e-12 * largest)) throw Singular("solve_hermitian: matrix is numerically singular");
    ComplexVector coeffs = eig.vectors.adjoint() * b;
    coeffs.array() /= lambda.array().cast<Complex>();
    return eig.vectors * coeffs;
}

Index numerical_rank(const DenseMatrix& a, double threshold)
{
    const Spectrum sv = singular_values(a);
    return static_cast<Index>((sv.values.array() > threshold).count());
}

double operator_norm(const DenseMatrix& a)
{
    if (a.size() == 0) return 0.0;
    return singular_values(a).max();
}

double unitarity_defect(const DenseMatrix& u)
{
    return (u.adjoint() * u - DenseMatrix::Identity(u.cols(), u.cols())).norm();
}

} // namespace trigprec
