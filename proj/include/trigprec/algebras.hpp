#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trigprec/linalg.hpp"
#include "trigprec/symbols.hpp"

namespace trigprec {

enum class AlgebraKind { Fourier, Sine, Hartley, CustomVandermonde };

std::string to_string(AlgebraKind kind);
/// Accepts fourier, sine, hartley, custom (case-insensitive).
AlgebraKind parse_algebra_kind(const std::string& name);

/// A matrix algebra M_U = { U D U^* : D diagonal } built from a generalized
/// trigonometric Vandermonde matrix V with V(i,j) = v_j(x_i), and U = V^*.
///
/// Eigenvalue i of an algebra member is attached to grid point x_i:
/// (U^* A U)_{ii} = v(x_i) A v(x_i)^*.
class TransformAlgebra {
public:
    AlgebraKind kind() const noexcept { return kind_; }
    Index order() const noexcept { return vandermonde_.rows(); }
    const RealVector& grid() const noexcept { return grid_; }
    const DenseMatrix& vandermonde() const noexcept { return vandermonde_; }
    const DenseMatrix& unitary() const noexcept { return unitary_; }
    const std::string& label() const noexcept { return label_; }

    /// Whether basis functions v_j(x) exist off the grid (false for custom unitaries).
    bool has_basis() const noexcept { return kind_ != AlgebraKind::CustomVandermonde; }

    /// (v_0(x), ..., v_{n-1}(x)); throws Unsupported for custom unitaries.
    Eigen::RowVectorXcd basis_row(double x) const;

    /// Interval carrying the grid: [0, 2pi] or [0, pi] for the sine algebra.
    std::pair<double, double> domain() const;

    /// U^* x (coordinates in the eigenbasis).
    ComplexVector to_spectral(const ComplexVector& x) const;
    /// U y
    ComplexVector from_spectral(const ComplexVector& y) const;

private:
    friend TransformAlgebra make_algebra(AlgebraKind kind, Index n);
    friend TransformAlgebra make_custom_algebra(const DenseMatrix& unitary, std::string label);

    AlgebraKind kind_ = AlgebraKind::Fourier;
    RealVector grid_;
    DenseMatrix vandermonde_;
    DenseMatrix unitary_;
    std::string label_;
};

/// Fourier, sine or Hartley algebra of order n >= 2. Throws NotUnitary when
/// the constructed matrix fails ||U^*U - I||_F <= 1e-10 sqrt(n).
TransformAlgebra make_algebra(AlgebraKind kind, Index n);

/// Algebra diagonalized by an arbitrary unitary (columns are the eigenvectors).
TransformAlgebra make_custom_algebra(const DenseMatrix& unitary, std::string label = "custom");

/// Haar-distributed random unitary of order n from a seeded generator.
DenseMatrix random_unitary(Index n, std::uint64_t seed);
TransformAlgebra make_random_algebra(Index n, std::uint64_t seed);

/// diag(U^* A U): the eigenvalues of project(alg, A), ordered by grid point.
ComplexVector algebra_eigenvalues(const TransformAlgebra& alg, const DenseMatrix& a);

/// U diag(lambda) U^*
DenseMatrix algebra_member(const TransformAlgebra& alg, const ComplexVector& lambda);

/// Frobenius-optimal approximation of A in the algebra.
DenseMatrix project(const TransformAlgebra& alg, const DenseMatrix& a);

/// First column of the optimal circulant for T_n(f):
/// c_k = ((n - k) a_k + k a_{k-n}) / n.
ComplexVector optimal_circulant_column(const Symbol& f, Index n);

/// Dense circulant with the given first column.
DenseMatrix circulant(const ComplexVector& first_column);

/// Eigenvalues of the circulant with this first column, in Fourier grid order.
ComplexVector circulant_eigenvalues(const ComplexVector& first_column);

/// project(Fourier, toeplitz_section(f, n)) through the closed form.
DenseMatrix project_toeplitz_fast(const Symbol& f, Index n);

/// Eigenvalues of project(alg, toeplitz_section(f, n)) without forming the
/// Toeplitz matrix: v(x_i) T_n(f) v(x_i)^* for algebras with a basis.
ComplexVector toeplitz_algebra_eigenvalues(const TransformAlgebra& alg, const Symbol& f);

/// Disjoint index blocks covering {0, ..., n-1}.
struct PinchingPartition {
    std::vector<std::vector<Index>> blocks;

    Index count() const noexcept { return static_cast<Index>(blocks.size()); }
    /// Throws BadPartition unless the blocks are nonempty and partition {0..n-1}.
    void validate(Index n) const;
    /// Index -> block number.
    std::vector<Index> block_of(Index n) const;

    static PinchingPartition whole(Index n);
    static PinchingPartition singletons(Index n);
    /// Consecutive blocks of the given size (the last one may be shorter).
    static PinchingPartition contiguous(Index n, Index block_size);
};

/// Sum_k P_k A P_k: entries coupling different blocks are zeroed.
DenseMatrix pinch(const PinchingPartition& partition, const DenseMatrix& a);

/// U pinch(U^* A U) U^*
DenseMatrix project_pinched(const TransformAlgebra& alg, const PinchingPartition& partition, const DenseMatrix& a);

} // namespace trigprec
