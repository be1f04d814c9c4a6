#include "trigprec/korovkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "trigprec/format.hpp"
#include "trigprec/parallel.hpp"
#include "trigprec/toeplitz.hpp"

namespace trigprec {

namespace {

/// Ratios gap/n shrink along the ladder: nonincreasing and the last at most
/// half the first, or all negligible against the scale.
bool sublinear(const std::vector<double>& ratio, double scale)
{
    const double floor = 1e-12 * (1.0 + scale);
    if (std::all_of(ratio.begin(), ratio.end(), [&](double r) { return r <= floor; })) return true;
    for (std::size_t i = 1; i < ratio.size(); ++i)
        if (ratio[i] > ratio[i - 1] + floor) return false;
    return ratio.back() <= 0.5 * ratio.front() || ratio.back() <= floor;
}

/// int_a^b f(x) dx for a trigonometric polynomial.
double integrate(const Symbol& f, double a, double b)
{
    Complex total(0.0);
    for (const auto& [k, c] : f.coefficients()) {
        if (k == 0) total += c * (b - a);
        else total += c * (std::polar(1.0, k * b) - std::polar(1.0, k * a)) / Complex(0.0, k);
    }
    return total.real();
}

LpoSeries sup_series(AlgebraKind kind, const Symbol& f, const std::vector<Index>& ladder)
{
    LpoSeries s;
    s.symbol = f.label();
    s.sup_error.assign(ladder.size(), 0.0);
    parallel_for(ladder.size(), [&](std::size_t i) { s.sup_error[i] = lpo_sup_error(make_algebra(kind, ladder[i]), f); });
    s.rate = fit_rate(ladder, s.sup_error);
    return s;
}

void write_series(std::ostream& os, const std::vector<Index>& ladder, const LpoSeries& s)
{
    for (std::size_t i = 0; i < ladder.size(); ++i)
        os << ladder[i] << ',' << s.symbol << ',' << format_double(s.sup_error[i]) << '\n';
}

} // namespace

double lpo_eval(const TransformAlgebra& alg, const Symbol& f, double x)
{
    return toeplitz_form(f, alg.basis_row(x)).real();
}

RealVector lpo_values(const TransformAlgebra& alg, const Symbol& f, const RealVector& xs)
{
    RealVector out(xs.size());
    for (Index i = 0; i < xs.size(); ++i) out(i) = lpo_eval(alg, f, xs(i));
    return out;
}

RealVector sup_grid(const TransformAlgebra& alg)
{
    const auto [a, b] = alg.domain();
    RealVector xs(kSupGridPoints);
    for (Index k = 0; k < kSupGridPoints; ++k)
        xs(k) = a + (b - a) * static_cast<double>(k) / static_cast<double>(kSupGridPoints);
    return xs;
}

double lpo_sup_error(const TransformAlgebra& alg, const Symbol& f)
{
    const RealVector xs = sup_grid(alg);
    double worst = 0.0;
    for (Index k = 0; k < xs.size(); ++k)
        worst = std::max(worst, std::abs(lpo_eval(alg, f, xs(k)) - f(xs(k)).real()));
    return worst;
}

std::optional<double> fit_rate(const std::vector<Index>& ladder, const std::vector<double>& errors)
{
    if (ladder.size() != errors.size()) throw DimensionMismatch("fit_rate: ladder and errors differ in length");
    std::vector<double> x;
    std::vector<double> y;
    const std::size_t first = ladder.size() > 4 ? ladder.size() - 4 : 0;
    for (std::size_t i = first; i < ladder.size(); ++i) {
        if (errors[i] <= kZeroError) continue;
        x.push_back(std::log(static_cast<double>(ladder[i])));
        y.push_back(std::log(errors[i]));
    }
    if (x.size() < 2) return std::nullopt;
    return least_squares_slope(x, y);
}

void LpoReport::write_csv(std::ostream& os) const
{
    os << "n,symbol,sup_error\n";
    for (const auto& s : series) write_series(os, ladder, s);
}

LpoReport lpo_rates(AlgebraKind kind, const std::vector<Symbol>& test_set, const std::vector<Index>& ladder)
{
    LpoReport report;
    report.kind = kind;
    report.ladder = ladder;
    for (const auto& f : test_set) report.series.push_back(sup_series(kind, f, ladder));
    return report;
}

TransformAlgebra algebra_for(AlgebraKind kind, Index n, std::uint64_t seed)
{
    if (kind == AlgebraKind::CustomVandermonde) return make_random_algebra(n, seed);
    return make_algebra(kind, n);
}

std::pair<DenseMatrix, DenseMatrix> toeplitz_and_projection(AlgebraKind kind, const Symbol& f, Index n, std::uint64_t seed)
{
    DenseMatrix a = toeplitz_section(f, n);
    if (kind == AlgebraKind::Fourier) return {std::move(a), project_toeplitz_fast(f, n)};
    const TransformAlgebra alg = algebra_for(kind, n, seed);
    ComplexVector lambda = alg.has_basis() ? toeplitz_algebra_eigenvalues(alg, f) : algebra_eigenvalues(alg, a);
    // Eigenvalues of the projection of a Hermitian matrix are real.
    if (f.is_real()) lambda = lambda.real().cast<Complex>();
    return {std::move(a), algebra_member(alg, lambda)};
}

bool FunctionVerdict::strong() const
{
    const ClusterClass c = report.verdict();
    return c == ClusterClass::uniform || c == ClusterClass::strong;
}

void KorovkinReport::write_csv(std::ostream& os) const
{
    os << "symbol,role,n,eps,outliers,frobenius_sq\n";
    for (const auto& fv : functions) {
        const auto& t = fv.report.table;
        for (std::size_t i = 0; i < t.ladder.size(); ++i)
            for (std::size_t e = 0; e < t.epsilons.size(); ++e)
                os << fv.symbol << ',' << fv.role << ',' << t.ladder[i] << ',' << format_double(t.epsilons[e]) << ','
                   << t.at(i, e) << ',' << format_double(fv.report.frobenius_sq[i]) << '\n';
    }
}

KorovkinReport korovkin_test(AlgebraKind kind, const std::vector<Symbol>& generators, const std::vector<Symbol>& holdout,
                             const std::vector<Index>& ladder, const std::vector<double>& epsilons, std::uint64_t seed,
                             const ClassifierConfig& cfg, KorovkinVariant variant)
{
    for (const auto& g : generators)
        if (!g.is_real()) throw NotHermitian("korovkin_test: generator '" + g.label() + "' is not real");

    std::vector<std::pair<Symbol, std::string>> jobs;
    for (const auto& g : generators) jobs.emplace_back(g, "generator");
    if (variant == KorovkinVariant::squares)
        for (const auto& g : generators) jobs.emplace_back(product(g, g), "square");
    else
        jobs.emplace_back(trigprec::sum_of_squares(generators), "sum_sq");
    for (std::size_t k = 0; k < generators.size(); ++k)
        for (std::size_t l = k + 1; l < generators.size(); ++l)
            jobs.emplace_back(product(generators[k], generators[l]), "product");
    for (const auto& f : holdout) jobs.emplace_back(f, "holdout");

    KorovkinReport out;
    out.algebra = to_string(kind);
    for (const auto& [f, role] : jobs) {
        const Symbol sym = f;
        auto gen = [&, sym](Index n) { return toeplitz_and_projection(kind, sym, n, seed); };
        out.functions.push_back({f.label(), role, analyze_cluster(gen, ladder, epsilons, ClusterMode::difference, cfg, f.label())});
    }

    out.test_set_strong = true;
    out.holdout_strong = true;
    for (const auto& fv : out.functions) {
        const bool premise = fv.role == "generator" || fv.role == "square" || fv.role == "sum_sq";
        (premise ? out.test_set_strong : out.holdout_strong) &= fv.strong();
    }
    out.implication_observed = out.test_set_strong && out.holdout_strong;
    return out;
}

void RemainderReport::write_csv(std::ostream& os) const
{
    os << "n,symbol,sup_error\n";
    for (const auto& s : generators) write_series(os, ladder, s);
    write_series(os, ladder, sum_of_squares);
    for (const auto& s : products) write_series(os, ladder, s);
}

RemainderReport remainder_propagation(AlgebraKind kind, const std::vector<Symbol>& generators,
                                      const std::vector<Index>& ladder, double factor)
{
    for (const auto& g : generators)
        if (!g.is_real()) throw NotHermitian("remainder_propagation: generator '" + g.label() + "' is not real");

    RemainderReport out;
    out.kind = kind;
    out.ladder = ladder;
    out.factor = factor;
    for (const auto& g : generators) out.generators.push_back(sup_series(kind, g, ladder));
    out.sum_of_squares = sup_series(kind, trigprec::sum_of_squares(generators), ladder);
    for (std::size_t k = 0; k < generators.size(); ++k)
        for (std::size_t l = k; l < generators.size(); ++l)
            out.products.push_back(sup_series(kind, product(generators[k], generators[l]), ladder));

    out.theta.assign(ladder.size(), 0.0);
    for (const auto& s : out.generators)
        for (std::size_t i = 0; i < ladder.size(); ++i) out.theta[i] = std::max(out.theta[i], s.sup_error[i]);

    out.within_factor = true;
    for (const auto& s : out.products)
        for (std::size_t i = 0; i < ladder.size(); ++i)
            if (s.sup_error[i] > factor * out.theta[i] + kZeroError) out.within_factor = false;
    return out;
}

void QuadratureReport::write_csv(std::ostream& os) const
{
    os << "n,grid_sum,integral,frobenius_sq,full_integral\n";
    for (const auto& r : rows)
        os << r.n << ',' << format_double(r.grid_sum) << ',' << format_double(r.integral) << ','
           << format_double(r.frobenius_sq) << ',' << format_double(r.full_integral) << '\n';
}

QuadratureReport grid_quadrature_check(AlgebraKind kind, const Symbol& g, const std::vector<Index>& ladder)
{
    if (!g.is_real()) throw NotHermitian("grid_quadrature_check: symbol is not real");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const Symbol g2 = product(g, g);

    QuadratureReport out;
    out.kind = kind;
    out.symbol = g.label();
    out.rows.resize(ladder.size());
    parallel_for(ladder.size(), [&](std::size_t i) {
        const Index n = ladder[i];
        const TransformAlgebra alg = make_algebra(kind, n);
        const auto [a, b] = alg.domain();
        QuadratureRow& r = out.rows[i];
        r.n = n;
        for (Index j = 0; j < n; ++j) r.grid_sum += g2(alg.grid()(j)).real();
        r.integral = static_cast<double>(n) / (b - a) * integrate(g2, a, b);
        r.full_integral = static_cast<double>(n) / two_pi * integrate(g2, 0.0, two_pi);
        // ||T_n(g)||_F^2 = sum_k (n - |k|) |a_k|^2
        for (const auto& [k, c] : g.coefficients())
            if (std::abs(k) < n) r.frobenius_sq += static_cast<double>(n - std::abs(k)) * std::norm(c);
    });

    std::vector<double> grid_ratio;
    std::vector<double> frob_ratio;
    double scale = 0.0;
    for (const auto& r : out.rows) {
        const double nd = static_cast<double>(r.n);
        grid_ratio.push_back(std::abs(r.grid_sum - r.integral) / nd);
        frob_ratio.push_back(std::abs(r.frobenius_sq - r.full_integral) / nd);
        scale = std::max(scale, r.full_integral / nd);
    }
    out.grid_gap_sublinear = sublinear(grid_ratio, scale);
    out.frobenius_gap_sublinear = sublinear(frob_ratio, scale);
    return out;
}

} // namespace trigprec
