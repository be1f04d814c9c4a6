#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trigprec/algebras.hpp"
#include "trigprec/clustering.hpp"
#include "trigprec/symbols.hpp"

namespace trigprec {

/// Points of the uniform grid on which sup-norms are measured.
inline constexpr Index kSupGridPoints = 4096;

/// Sup errors at or below this are read as exact zeros by the rate fits.
inline constexpr double kZeroError = 1e-13;

/// L_n[U_n](f)(x) = v(x) T_n(f) v(x)^*, with v(x) the algebra's basis row.
double lpo_eval(const TransformAlgebra& alg, const Symbol& f, double x);

/// lpo_eval on every point of xs.
RealVector lpo_values(const TransformAlgebra& alg, const Symbol& f, const RealVector& xs);

/// kSupGridPoints equispaced points a + (b - a) k / kSupGridPoints on the algebra's domain.
RealVector sup_grid(const TransformAlgebra& alg);

/// max over sup_grid of |L_n(f) - f|.
double lpo_sup_error(const TransformAlgebra& alg, const Symbol& f);

/// Least-squares slope of log(error) against log(n) on the last four ladder
/// points with error above kZeroError; empty when fewer than two remain.
std::optional<double> fit_rate(const std::vector<Index>& ladder, const std::vector<double>& errors);

struct LpoSeries {
    std::string symbol;
    std::vector<double> sup_error; ///< per ladder entry
    std::optional<double> rate;
};

struct LpoReport {
    AlgebraKind kind = AlgebraKind::Fourier;
    std::vector<Index> ladder;
    std::vector<LpoSeries> series;

    /// Columns n,symbol,sup_error.
    void write_csv(std::ostream& os) const;
};

/// Sup errors of L_n for every symbol of the test set across the ladder.
LpoReport lpo_rates(AlgebraKind kind, const std::vector<Symbol>& test_set, const std::vector<Index>& ladder);

/// Outcome of the cluster analysis of P_U(T_n(f)) against T_n(f) for one symbol.
struct FunctionVerdict {
    std::string symbol;
    std::string role; ///< generator, square, sum_sq, product or holdout
    ClusterReport report;

    /// Cluster counts or the Frobenius criterion show at least a strong cluster.
    bool strong() const;
};

struct KorovkinReport {
    std::string algebra;
    std::vector<FunctionVerdict> functions;
    bool test_set_strong = false; ///< every generator and square (or the sum of squares) is strong
    bool holdout_strong = false;  ///< every product and holdout is strong
    /// The implication test set strong => holdout strong was observed: true
    /// when the premise holds and the conclusion follows. Not claimed otherwise.
    bool implication_observed = false;

    void write_csv(std::ostream& os) const;
};

/// Which functions make up the test set next to the generators.
enum class KorovkinVariant {
    squares,        ///< every g_k^2
    sum_of_squares, ///< the single function sum_k g_k^2
};

/// T_n(f) against its algebra projection for the generators, the squares (or
/// their sum), the pairwise products and the holdout symbols. Custom kinds use
/// a random unitary drawn from `seed`.
KorovkinReport korovkin_test(AlgebraKind kind, const std::vector<Symbol>& generators, const std::vector<Symbol>& holdout,
                             const std::vector<Index>& ladder, const std::vector<double>& epsilons,
                             std::uint64_t seed = 42, const ClassifierConfig& cfg = {},
                             KorovkinVariant variant = KorovkinVariant::squares);

/// Order-n algebra of the given kind; the custom kind draws a random unitary.
TransformAlgebra algebra_for(AlgebraKind kind, Index n, std::uint64_t seed = 42);

/// Pair (T_n(f), P_U(T_n(f))), through the closed form for the Fourier algebra.
std::pair<DenseMatrix, DenseMatrix> toeplitz_and_projection(AlgebraKind kind, const Symbol& f, Index n,
                                                            std::uint64_t seed = 42);

struct RemainderReport {
    AlgebraKind kind = AlgebraKind::Fourier;
    std::vector<Index> ladder;
    std::vector<LpoSeries> generators;
    LpoSeries sum_of_squares;
    std::vector<LpoSeries> products; ///< g_k g_l for k <= l
    std::vector<double> theta;       ///< max generator sup error per ladder entry
    double factor = 10.0;
    /// Every product error is within factor * theta at every ladder entry.
    bool within_factor = false;

    void write_csv(std::ostream& os) const;
};

RemainderReport remainder_propagation(AlgebraKind kind, const std::vector<Symbol>& generators,
                                      const std::vector<Index>& ladder, double factor = 10.0);

struct QuadratureRow {
    Index n = 0;
    double grid_sum = 0.0;     ///< sum_i g^2(x_i)
    double integral = 0.0;     ///< (n / |D|) int_D g^2 over the algebra's domain D
    double frobenius_sq = 0.0; ///< ||T_n(g)||_F^2
    double full_integral = 0.0; ///< (n / 2pi) int_0^{2pi} g^2
};

struct QuadratureReport {
    AlgebraKind kind = AlgebraKind::Fourier;
    std::string symbol;
    std::vector<QuadratureRow> rows;
    bool grid_gap_sublinear = false;      ///< |grid_sum - integral| / n shrinks along the ladder
    bool frobenius_gap_sublinear = false; ///< |frobenius_sq - full_integral| / n shrinks along the ladder

    void write_csv(std::ostream& os) const;
};

QuadratureReport grid_quadrature_check(AlgebraKind kind, const Symbol& g, const std::vector<Index>& ladder);

} // namespace trigprec
