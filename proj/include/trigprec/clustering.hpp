#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trigprec/linalg.hpp"

namespace trigprec {

enum class ClusterClass { uniform, strong, weak, none };
enum class FrobeniusVerdict { strong, weak, inconclusive };

std::string to_string(ClusterClass c);
std::string to_string(FrobeniusVerdict v);

/// Finite-sample decision rules for the asymptotic cluster notions.
struct ClassifierConfig {
    /// Counts over the last three ladder sizes plateau when they all fit in
    /// [c - tol, c + tol] for some center c.
    Index plateau_tolerance = 1;
    /// Largest log-log slope of N(n) against n still read as o(n).
    double weak_slope = 0.8;
    /// d(n) counts as bounded when max d <= ratio * d(ladder[1]).
    double bounded_ratio = 1.2;
};

/// Outlier counts N(n, eps); counts[i][e] belongs to ladder[i] and epsilons[e].
struct CountTable {
    std::vector<Index> ladder;
    std::vector<double> epsilons;
    std::vector<std::vector<Index>> counts;

    Index at(std::size_t i, std::size_t e) const { return counts.at(i).at(e); }
};

struct Classification {
    ClusterClass verdict = ClusterClass::none;
    std::vector<double> slopes;  ///< least-squares slope of log max(N,1) vs log n, per eps
    std::vector<bool> plateaus;  ///< plateau flag per eps
};

/// Throws InsufficientLadder for fewer than four sizes or a ladder that is
/// not strictly increasing, DimensionMismatch for a ragged table.
Classification classify_detailed(const CountTable& table, const ClassifierConfig& cfg = {});
ClusterClass classify(const CountTable& table, const ClassifierConfig& cfg = {});

/// Number of singular values of A - B that are >= eps.
Index outlier_count(const DenseMatrix& a, const DenseMatrix& b, double eps);

/// Number of values >= eps, for each eps, from one spectrum of singular values.
std::vector<Index> count_at_least(const Spectrum& singular, const std::vector<double>& epsilons);

/// Number of values outside the open interval (1 - eps, 1 + eps).
Index count_outside_unit_band(const Spectrum& s, double eps);

/// Bounded / o(n) / neither, from d(n) = ||A_n - B_n||_F^2 on a ladder.
FrobeniusVerdict frobenius_criterion(const std::vector<Index>& ladder, const std::vector<double>& d,
                                     const ClassifierConfig& cfg = {});
FrobeniusVerdict frobenius_criterion(const std::map<Index, DenseMatrix>& a, const std::map<Index, DenseMatrix>& b,
                                     const ClassifierConfig& cfg = {});

struct PreconditionedSpectrum {
    Spectrum spectrum;  ///< eigenvalues of B^{-1/2} A B^{-1/2}, the same as those of B^{-1} A
    Index outliers = 0; ///< eigenvalues outside (1 - eps, 1 + eps)
    double delta = 0.0; ///< smallest eigenvalue of B
};

/// Throws NotPositiveDefinite unless B is Hermitian with lambda_min(B) > 0,
/// NotHermitian when A is not Hermitian.
PreconditionedSpectrum preconditioned_spectrum(const DenseMatrix& a, const DenseMatrix& b, double eps);

/// Which spectrum the outlier counts come from.
enum class ClusterMode {
    difference,     ///< singular values of A_n - B_n at least eps
    preconditioned, ///< eigenvalues of B_n^{-1} A_n outside (1 - eps, 1 + eps)
};

std::string to_string(ClusterMode m);

struct ClusterReport {
    ClusterMode mode = ClusterMode::difference;
    CountTable table;
    std::vector<double> frobenius_sq; ///< ||A_n - B_n||_F^2 per ladder entry
    Classification classification;
    FrobeniusVerdict frobenius = FrobeniusVerdict::inconclusive;
    std::string label;

    /// The stronger of the count-based class and the Frobenius criterion
    /// (bounded d(n) implies a strong cluster, d(n) = o(n) a weak one).
    ClusterClass verdict() const;

    /// Columns n,eps,outliers,frobenius_sq; one row per (n, eps).
    void write_csv(std::ostream& os) const;
};

/// Produces the pair (A_n, B_n) for a given order.
using MatrixPairGenerator = std::function<std::pair<DenseMatrix, DenseMatrix>(Index n)>;

/// Builds the count table over the ladder (ladder entries run on the worker
/// pool) and attaches both classifications.
ClusterReport analyze_cluster(const MatrixPairGenerator& generate, const std::vector<Index>& ladder,
                              const std::vector<double>& epsilons, ClusterMode mode = ClusterMode::difference,
                              const ClassifierConfig& cfg = {}, std::string label = {});

/// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace trigprec
