#pragma once

#include <vector>

#include "trigprec/linalg.hpp"
#include "trigprec/symbols.hpp"

namespace trigprec {

/// Finite Toeplitz section, entry (j,k) = a_{j-k}.
DenseMatrix toeplitz_section(const Symbol& f, Index n);

/// Finite Hankel section, entry (j,k) = a_{j+k+1}.
DenseMatrix hankel_section(const Symbol& f, Index n);

/// Hankel section built from the negative frequencies, entry (j,k) = a_{-(j+k+1)}.
DenseMatrix hankel_section_negative(const Symbol& f, Index n);

/// T_n(g^2) - T_n(g)^2 for real g. With `verify`, the numerical rank is
/// checked against 2 * degree(g) and InvariantViolation is thrown on excess.
DenseMatrix product_correction(const Symbol& g, Index n, bool verify = true);

/// Rank and spectral norm of the product correction across a ladder.
struct ProductCorrectionSample {
    Index n = 0;
    Index rank = 0;
    double norm = 0.0;
    double tail_singular_value = 0.0; ///< largest singular value beyond index 2*degree
};

std::vector<ProductCorrectionSample> product_correction_ladder(const Symbol& g, const std::vector<Index>& ladder);

/// v T_n(f) v^* for a row vector v, computed from the band of f in O(n * degree).
Complex toeplitz_form(const Symbol& f, const Eigen::Ref<const Eigen::RowVectorXcd>& v);

/// y = T_n(f) x via circulant embedding of order 2n and the FFT.
ComplexVector toeplitz_multiply(const Symbol& f, const ComplexVector& x);

} // namespace trigprec
