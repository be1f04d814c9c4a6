#include "trigprec/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "trigprec/format.hpp"
#include "trigprec/parallel.hpp"

namespace trigprec {

namespace {

/// Some center c has every value within [c - tol, c + tol].
bool within_band(const std::vector<Index>& v, Index tol)
{
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo <= 2 * tol;
}

void check_ladder(const std::vector<Index>& ladder, std::size_t minimum, const char* where)
{
    if (ladder.size() < minimum)
        throw InsufficientLadder(std::string(where) + ": ladder needs at least " + std::to_string(minimum) + " sizes");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1]) throw InsufficientLadder(std::string(where) + ": ladder must be strictly increasing");
    if (ladder.front() < 1) throw InsufficientLadder(std::string(where) + ": ladder sizes must be positive");
}

} // namespace

std::string to_string(ClusterClass c)
{
    switch (c) {
    case ClusterClass::uniform: return "uniform";
    case ClusterClass::strong: return "strong";
    case ClusterClass::weak: return "weak";
    case ClusterClass::none: return "none";
    }
    return "none";
}

std::string to_string(FrobeniusVerdict v)
{
    switch (v) {
    case FrobeniusVerdict::strong: return "strong";
    case FrobeniusVerdict::weak: return "weak";
    case FrobeniusVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::string to_string(ClusterMode m) { return m == ClusterMode::difference ? "difference" : "preconditioned"; }

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw DimensionMismatch("least_squares_slope: need two or more paired points");
    const double k = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

Classification classify_detailed(const CountTable& table, const ClassifierConfig& cfg)
{
    check_ladder(table.ladder, 4, "classify");
    if (table.epsilons.empty()) throw DimensionMismatch("classify: empty eps grid");
    if (table.counts.size() != table.ladder.size()) throw DimensionMismatch("classify: count rows do not match the ladder");
    for (const auto& row : table.counts)
        if (row.size() != table.epsilons.size()) throw DimensionMismatch("classify: count columns do not match the eps grid");

    const std::size_t rows = table.ladder.size();
    std::vector<double> log_n;
    for (const Index n : table.ladder) log_n.push_back(std::log(static_cast<double>(n)));

    Classification out;
    std::vector<Index> pooled;
    for (std::size_t e = 0; e < table.epsilons.size(); ++e) {
        std::vector<Index> tail;
        for (std::size_t i = rows - 3; i < rows; ++i) tail.push_back(table.at(i, e));
        out.plateaus.push_back(within_band(tail, cfg.plateau_tolerance));
        pooled.insert(pooled.end(), tail.begin(), tail.end());

        std::vector<double> log_count;
        for (std::size_t i = 0; i < rows; ++i)
            log_count.push_back(std::log(static_cast<double>(std::max<Index>(table.at(i, e), 1))));
        out.slopes.push_back(least_squares_slope(log_n, log_count));
    }

    const bool all_plateau = std::all_of(out.plateaus.begin(), out.plateaus.end(), [](bool b) { return b; });
    const bool slopes_sublinear =
        std::all_of(out.slopes.begin(), out.slopes.end(), [&](double s) { return s <= cfg.weak_slope; });
    if (all_plateau && within_band(pooled, cfg.plateau_tolerance)) out.verdict = ClusterClass::uniform;
    else if (all_plateau) out.verdict = ClusterClass::strong;
    else if (slopes_sublinear) out.verdict = ClusterClass::weak;
    else out.verdict = ClusterClass::none;
    return out;
}

ClusterClass classify(const CountTable& table, const ClassifierConfig& cfg)
{
    return classify_detailed(table, cfg).verdict;
}

std::vector<Index> count_at_least(const Spectrum& singular, const std::vector<double>& epsilons)
{
    std::vector<Index> counts;
    for (const double eps : epsilons) {
        if (!(eps > 0.0)) throw DimensionMismatch("outlier count: eps must be positive");
        counts.push_back(std::count_if(singular.values.begin(), singular.values.end(), [&](double s) { return s >= eps; }));
    }
    return counts;
}

Index outlier_count(const DenseMatrix& a, const DenseMatrix& b, double eps)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("outlier_count: orders differ");
    return count_at_least(singular_values(a - b), {eps}).front();
}

Index count_outside_unit_band(const Spectrum& s, double eps)
{
    return std::count_if(s.values.begin(), s.values.end(), [&](double v) { return !(v > 1.0 - eps && v < 1.0 + eps); });
}

FrobeniusVerdict frobenius_criterion(const std::vector<Index>& ladder, const std::vector<double>& d,
                                     const ClassifierConfig& cfg)
{
    if (ladder.size() != d.size()) throw DimensionMismatch("frobenius_criterion: ladder and values differ in length");
    check_ladder(ladder, 2, "frobenius_criterion");

    const double peak = *std::max_element(d.begin(), d.end());
    if (peak <= 1e-20) return FrobeniusVerdict::strong;
    if (peak <= cfg.bounded_ratio * d[1]) return FrobeniusVerdict::strong;

    std::vector<double> per_n;
    for (std::size_t i = 0; i < d.size(); ++i) per_n.push_back(d[i] / static_cast<double>(ladder[i]));
    const bool decreasing = std::adjacent_find(per_n.begin(), per_n.end(), std::less_equal<double>()) == per_n.end();
    if (decreasing && per_n.back() <= 0.5 * per_n.front()) return FrobeniusVerdict::weak;
    return FrobeniusVerdict::inconclusive;
}

FrobeniusVerdict frobenius_criterion(const std::map<Index, DenseMatrix>& a, const std::map<Index, DenseMatrix>& b,
                                     const ClassifierConfig& cfg)
{
    std::vector<Index> ladder;
    std::vector<double> d;
    for (const auto& [n, an] : a) {
        const auto it = b.find(n);
        if (it == b.end()) throw DimensionMismatch("frobenius_criterion: sequences do not share a ladder");
        if (it->second.rows() != an.rows() || it->second.cols() != an.cols())
            throw DimensionMismatch("frobenius_criterion: matrix orders differ");
        ladder.push_back(n);
        d.push_back(frobenius_norm_sq(an - it->second));
    }
    if (a.size() != b.size()) throw DimensionMismatch("frobenius_criterion: sequences do not share a ladder");
    return frobenius_criterion(ladder, d, cfg);
}

PreconditionedSpectrum preconditioned_spectrum(const DenseMatrix& a, const DenseMatrix& b, double eps)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("preconditioned_spectrum: orders differ");
    if (!is_hermitian(b, 1e-10)) throw NotPositiveDefinite("preconditioned_spectrum: B is not Hermitian");
    if (!is_hermitian(a, 1e-10)) throw NotHermitian("preconditioned_spectrum: A is not Hermitian");

    const auto eb = hermitian_eig(b);
    PreconditionedSpectrum out;
    out.delta = eb.spectrum.min();
    if (!(out.delta > 0.0) || out.delta <= 1e-14 * std::abs(eb.spectrum.max()))
        throw NotPositiveDefinite("preconditioned_spectrum: lambda_min(B) = " + format_double(out.delta));

    // B^{-1/2} A B^{-1/2} is similar to B^{-1} A and Hermitian.
    const RealVector inv_sqrt = eb.spectrum.values.cwiseSqrt().cwiseInverse();
    const DenseMatrix w = eb.vectors * inv_sqrt.cast<Complex>().asDiagonal();
    DenseMatrix c = w.adjoint() * a * w;
    c = 0.5 * (c + c.adjoint()).eval();
    if (has_zero_imaginary_part(a) && has_zero_imaginary_part(b)) c = c.real().cast<Complex>();
    out.spectrum = hermitian_eigenvalues(c);
    out.outliers = count_outside_unit_band(out.spectrum, eps);
    return out;
}

ClusterClass ClusterReport::verdict() const
{
    const ClusterClass counted = classification.verdict;
    if (counted == ClusterClass::uniform || counted == ClusterClass::strong) return counted;
    if (frobenius == FrobeniusVerdict::strong) return ClusterClass::strong;
    if (counted == ClusterClass::weak || frobenius == FrobeniusVerdict::weak) return ClusterClass::weak;
    return ClusterClass::none;
}

void ClusterReport::write_csv(std::ostream& os) const
{
    os << "n,eps,outliers,frobenius_sq\n";
    for (std::size_t i = 0; i < table.ladder.size(); ++i)
        for (std::size_t e = 0; e < table.epsilons.size(); ++e)
            os << table.ladder[i] << ',' << format_double(table.epsilons[e]) << ',' << table.at(i, e) << ','
               << format_double(frobenius_sq[i]) << '\n';
}

ClusterReport analyze_cluster(const MatrixPairGenerator& generate, const std::vector<Index>& ladder,
                              const std::vector<double>& epsilons, ClusterMode mode, const ClassifierConfig& cfg,
                              std::string label)
{
    check_ladder(ladder, 4, "analyze_cluster");
    ClusterReport report;
    report.mode = mode;
    report.label = std::move(label);
    report.table.ladder = ladder;
    report.table.epsilons = epsilons;
    report.table.counts.assign(ladder.size(), {});
    report.frobenius_sq.assign(ladder.size(), 0.0);

    parallel_for(ladder.size(), [&](std::size_t i) {
        const auto [a, b] = generate(ladder[i]);
        if (a.rows() != ladder[i] || b.rows() != ladder[i]) throw DimensionMismatch("analyze_cluster: generator returned the wrong order");
        report.frobenius_sq[i] = frobenius_norm_sq(a - b);
        if (mode == ClusterMode::difference) {
            report.table.counts[i] = count_at_least(singular_values(a - b), epsilons);
        } else {
            const auto pre = preconditioned_spectrum(a, b, epsilons.front());
            std::vector<Index> row;
            for (const double eps : epsilons) row.push_back(count_outside_unit_band(pre.spectrum, eps));
            report.table.counts[i] = std::move(row);
        }
    });

    report.classification = classify_detailed(report.table, cfg);
    report.frobenius = frobenius_criterion(ladder, report.frobenius_sq, cfg);
    return report;
}

} // namespace trigprec
