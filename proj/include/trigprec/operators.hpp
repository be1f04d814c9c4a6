#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trigprec/algebras.hpp"
#include "trigprec/clustering.hpp"
#include "trigprec/symbols.hpp"

namespace trigprec {

enum class DecayClass { hilbert_schmidt, compact, bounded };

std::string to_string(DecayClass d);

/// A bounded operator on l^2 given by its matrix entries in the coordinate basis.
struct OperatorSource {
    std::function<Complex(Index, Index)> entry; ///< pure and reentrant
    DecayClass decay = DecayClass::bounded;
    std::string label;
    bool self_adjoint = false;
    std::optional<Symbol> symbol;       ///< set for Toeplitz sources
    std::optional<double> hs_norm_sq;   ///< ||A||_HS^2 when known in closed form
};

OperatorSource identity_source();
/// Rank one, entry p^{j+k} for 0 < p < 1.
OperatorSource rank1_source(double p);
/// Entry c / ((1+j)(1+k))^p; Hilbert-Schmidt for p > 1/2.
OperatorSource hs_decay_source(double p, double c = 1.0);
/// 2 delta_{jk} + 1/((1+j)(1+k))^2: identity-like diagonal plus a compact part.
OperatorSource diag_plus_compact_source();
OperatorSource toeplitz_source(const Symbol& f);

/// Catalog names: identity, rank1(p), hs_decay(p), diag_plus_compact,
/// toeplitz:<symbol-file>, toeplitz:preset:<name>. Throws ParseError otherwise.
OperatorSource operator_source(const std::string& name);

/// P_n A P_n as an n x n matrix.
DenseMatrix truncate(const OperatorSource& src, Index n);

/// Squared mass of the last row and column of the n x n truncation, relative
/// to the squared mass of the whole truncation.
double border_fraction(const OperatorSource& src, Index n);

/// Phi_n(A) = project(algebra, truncate(src, n)); the custom kind draws a
/// random unitary from `seed`.
DenseMatrix preconditioner_of(const OperatorSource& src, AlgebraKind kind, Index n, std::uint64_t seed = 42);

/// Cluster analysis of Phi_n(A) against A_n over the ladder.
ClusterReport distribution_convergence(const OperatorSource& src, AlgebraKind kind, const std::vector<Index>& ladder,
                                       const std::vector<double>& epsilons, std::uint64_t seed = 42,
                                       const ClassifierConfig& cfg = {});

} // namespace trigprec
