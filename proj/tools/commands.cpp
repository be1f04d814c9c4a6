#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trigprec/algebras.hpp"
#include "trigprec/clustering.hpp"
#include "trigprec/format.hpp"
#include "trigprec/korovkin.hpp"
#include "trigprec/operators.hpp"
#include "trigprec/solver.hpp"
#include "trigprec/toeplitz.hpp"

namespace trigprec::cli {

namespace {

const std::vector<Index> kClusterLadder{64, 128, 256, 512};
const std::vector<Index> kLpoLadder{8, 16, 32, 64, 128, 256, 512, 1024};
const std::vector<Index> kPcgLadder{128, 256, 512, 1024};

ClassifierConfig classifier_of(const ExperimentConfig& cfg)
{
    return {cfg.plateau_tolerance, cfg.weak_slope, cfg.bounded_ratio};
}

std::string symbol_spec(const ExperimentConfig& cfg, const std::string& fallback)
{
    return cfg.symbol.value_or(fallback);
}

std::vector<Symbol> resolve_all(const std::vector<std::string>& specs)
{
    std::vector<Symbol> out;
    for (const auto& s : specs) out.push_back(resolve_symbol(s));
    return out;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json cluster_json(const ClusterReport& r)
{
    Json j;
    j["label"] = r.label;
    j["mode"] = to_string(r.mode);
    j["ladder"] = r.table.ladder;
    j["eps"] = r.table.epsilons;
    j["classification"] = to_string(r.classification.verdict);
    j["frobenius_criterion"] = to_string(r.frobenius);
    j["verdict"] = to_string(r.verdict());
    const ClusterClass v = r.verdict();
    j["strong_or_better"] = v == ClusterClass::uniform || v == ClusterClass::strong;
    j["slopes"] = r.classification.slopes;
    j["plateaus"] = r.classification.plateaus;
    j["frobenius_sq"] = r.frobenius_sq;
    return j;
}

std::string csv_of(const auto& report)
{
    std::ostringstream os;
    report.write_csv(os);
    return os.str();
}

void finish(const ExperimentConfig& cfg, const std::string& name, const std::string& csv, const Json& summary)
{
    write_artifact(cfg, name + ".csv", csv);
    write_artifact(cfg, name + ".json", summary.dump(2) + "\n");
}

} // namespace

void write_artifact(const ExperimentConfig& cfg, const std::string& name, const std::string& text)
{
    std::filesystem::create_directories(cfg.out);
    const auto path = std::filesystem::path(cfg.out) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

Json plan(const std::string& subcommand, const ExperimentConfig& cfg, bool remainder, bool quadrature)
{
    Json j;
    j["subcommand"] = subcommand;
    j["out"] = cfg.out;
    j["seed"] = cfg.seed;
    if (subcommand == "project") {
        j["algebra"] = cfg.algebra;
        j["symbol"] = symbol_spec(cfg, "preset:2+cos");
        j["ladder"] = cfg.ladder_or(kClusterLadder);
        j["pinch_block"] = cfg.pinch_block;
    } else if (subcommand == "cluster-scan") {
        j["algebra"] = cfg.algebra;
        j["symbol"] = symbol_spec(cfg, "preset:2+cos");
        j["ladder"] = cfg.ladder_or(kClusterLadder);
        j["eps"] = cfg.eps;
        j["mode"] = cfg.mode;
    } else if (subcommand == "korovkin-test") {
        j["algebra"] = cfg.algebra;
        j["generators"] = cfg.generators;
        j["holdout"] = cfg.holdout;
        j["variant"] = cfg.variant;
        j["ladder"] = cfg.ladder_or(kClusterLadder);
        j["eps"] = cfg.eps;
    } else if (subcommand == "lpo-rates") {
        j["algebra"] = cfg.algebra;
        j["testset"] = cfg.testset;
        j["ladder"] = cfg.ladder_or(kLpoLadder);
        j["remainder"] = remainder;
        if (remainder) {
            j["generators"] = cfg.generators;
            j["remainder_factor"] = cfg.remainder_factor;
        }
        j["quadrature"] = quadrature;
    } else if (subcommand == "operator-scan") {
        j["algebra"] = cfg.algebra;
        j["source"] = cfg.source;
        j["ladder"] = cfg.ladder_or(kClusterLadder);
        j["eps"] = cfg.eps;
    } else if (subcommand == "pcg-bench") {
        j["algebra"] = cfg.algebra;
        j["symbol"] = symbol_spec(cfg, "preset:2-2cos+delta(0.01)");
        j["ladder"] = cfg.ladder_or(kPcgLadder);
        j["tolerance"] = cfg.tolerance;
        j["preconds"] = cfg.preconds;
        j["pinch_block"] = cfg.pinch_block;
        j["timings"] = cfg.timings;
    }
    j["files"] = Json::array({subcommand + ".csv", subcommand + ".json"});
    return j;
}

int run_project(const ExperimentConfig& cfg)
{
    const AlgebraKind kind = parse_algebra_kind(cfg.algebra);
    const Symbol f = resolve_symbol(symbol_spec(cfg, "preset:2+cos"));
    const auto ladder = cfg.ladder_or(kClusterLadder);

    std::ostringstream csv;
    csv << "n,i,x,eigenvalue_re,eigenvalue_im\n";
    Json rows = Json::array();
    bool ok = true;
    for (const Index n : ladder) {
        const TransformAlgebra alg = algebra_for(kind, n, cfg.seed);
        const DenseMatrix a = toeplitz_section(f, n);
        const ComplexVector lambda = algebra_eigenvalues(alg, a);
        const DenseMatrix p = algebra_member(alg, lambda);
        for (Index i = 0; i < n; ++i)
            csv << n << ',' << i << ',' << format_double(alg.grid()(i)) << ',' << format_double(lambda(i).real()) << ','
                << format_double(lambda(i).imag()) << '\n';

        const double norm_a = frobenius_norm_sq(a);
        const double distance = frobenius_norm_sq(a - p);
        const double pythagoras = std::abs(distance - (norm_a - frobenius_norm_sq(p))) / std::max(norm_a, 1e-300);
        const Complex tr_a = a.trace();
        const double trace_gap = std::abs(p.trace() - tr_a) / (1.0 + std::abs(tr_a));
        const PinchingPartition blocks = PinchingPartition::contiguous(n, cfg.pinch_block);
        const DenseMatrix pinched = project_pinched(alg, blocks, a);
        const double pinched_distance = frobenius_norm_sq(a - pinched);
        const double pinched_pythagoras =
            std::abs(pinched_distance - (norm_a - frobenius_norm_sq(pinched))) / std::max(norm_a, 1e-300);

        Json r;
        r["n"] = n;
        r["frobenius_sq"] = norm_a;
        r["distance_sq"] = distance;
        r["pinched_distance_sq"] = pinched_distance;
        r["pythagoras_gap"] = pythagoras;
        r["pinched_pythagoras_gap"] = pinched_pythagoras;
        r["trace_gap"] = trace_gap;
        ok = ok && pythagoras <= 1e-9 && pinched_pythagoras <= 1e-9 && trace_gap <= 1e-10;
        if (kind == AlgebraKind::Fourier) {
            const double fast_gap = (project_toeplitz_fast(f, n) - p).cwiseAbs().maxCoeff();
            r["fast_path_gap"] = fast_gap;
            ok = ok && fast_gap <= 1e-10;
        }
        if (alg.has_basis() && f.is_real()) {
            double lpo_gap = 0.0;
            for (Index i = 0; i < n; ++i)
                lpo_gap = std::max(lpo_gap, std::abs(lpo_eval(alg, f, alg.grid()(i)) - lambda(i).real()));
            r["lpo_grid_gap"] = lpo_gap;
            ok = ok && lpo_gap <= 1e-10;
        }
        rows.push_back(r);
    }

    Json summary;
    summary["algebra"] = to_string(kind);
    summary["symbol"] = f.label();
    summary["identities_hold"] = ok;
    summary["sizes"] = rows;
    finish(cfg, "project", csv.str(), summary);
    std::cout << "project " << to_string(kind) << ' ' << f.label() << ": identities " << (ok ? "hold" : "VIOLATED")
              << " on n=" << join(ladder) << '\n';
    return ok ? kOk : kViolation;
}

int run_cluster_scan(const ExperimentConfig& cfg)
{
    const AlgebraKind kind = parse_algebra_kind(cfg.algebra);
    const Symbol f = resolve_symbol(symbol_spec(cfg, "preset:2+cos"));
    const ClusterMode mode = cfg.mode == "preconditioned" ? ClusterMode::preconditioned : ClusterMode::difference;
    const auto gen = [&](Index n) { return toeplitz_and_projection(kind, f, n, cfg.seed); };
    const ClusterReport r = analyze_cluster(gen, cfg.ladder_or(kClusterLadder), cfg.eps, mode, classifier_of(cfg), f.label());

    Json summary = cluster_json(r);
    summary["algebra"] = to_string(kind);
    finish(cfg, "cluster-scan", csv_of(r), summary);
    std::cout << "cluster-scan " << to_string(kind) << ' ' << f.label() << ": " << to_string(r.verdict())
              << " (counts " << to_string(r.classification.verdict) << ", frobenius " << to_string(r.frobenius) << ")\n";
    return kOk;
}

int run_korovkin_test(const ExperimentConfig& cfg)
{
    const AlgebraKind kind = parse_algebra_kind(cfg.algebra);
    const auto variant = cfg.variant == "sum" ? KorovkinVariant::sum_of_squares : KorovkinVariant::squares;
    const KorovkinReport r = korovkin_test(kind, resolve_all(cfg.generators), resolve_all(cfg.holdout),
                                           cfg.ladder_or(kClusterLadder), cfg.eps, cfg.seed, classifier_of(cfg), variant);

    Json summary;
    summary["algebra"] = r.algebra;
    summary["variant"] = cfg.variant;
    summary["test_set_strong"] = r.test_set_strong;
    summary["holdout_strong"] = r.holdout_strong;
    summary["implication_observed"] = r.implication_observed;
    Json functions = Json::array();
    for (const auto& fv : r.functions) {
        Json j = cluster_json(fv.report);
        j["role"] = fv.role;
        j["strong"] = fv.strong();
        functions.push_back(j);
    }
    summary["functions"] = functions;
    finish(cfg, "korovkin-test", csv_of(r), summary);
    std::cout << "korovkin-test " << r.algebra << ": test set " << (r.test_set_strong ? "strong" : "not strong")
              << ", holdout " << (r.holdout_strong ? "strong" : "not strong") << ", implication "
              << (r.implication_observed ? "observed" : "not claimed") << '\n';
    return kOk;
}

int run_lpo_rates(const ExperimentConfig& cfg, bool remainder, bool quadrature)
{
    const AlgebraKind kind = parse_algebra_kind(cfg.algebra);
    const auto test_set = standard_test_set(cfg.testset == "fourier_basic" ? TestSetName::fourier_basic : TestSetName::classical);
    const auto ladder = cfg.ladder_or(kLpoLadder);
    const LpoReport r = lpo_rates(kind, test_set, ladder);

    Json summary;
    summary["algebra"] = to_string(kind);
    summary["testset"] = cfg.testset;
    summary["ladder"] = ladder;
    Json series = Json::array();
    for (const auto& s : r.series) series.push_back({{"symbol", s.symbol}, {"rate", optional_number(s.rate)}, {"sup_error", s.sup_error}});
    summary["series"] = series;

    bool ok = true;
    if (remainder) {
        const RemainderReport rem = remainder_propagation(kind, resolve_all(cfg.generators), ladder, cfg.remainder_factor);
        Json j;
        j["factor"] = rem.factor;
        j["within_factor"] = rem.within_factor;
        j["theta"] = rem.theta;
        j["sum_of_squares_rate"] = optional_number(rem.sum_of_squares.rate);
        Json products = Json::array();
        for (const auto& s : rem.products) products.push_back({{"symbol", s.symbol}, {"rate", optional_number(s.rate)}});
        j["products"] = products;
        summary["remainder"] = j;
        write_artifact(cfg, "lpo-rates-remainder.csv", csv_of(rem));
    }
    if (quadrature) {
        Json q = Json::array();
        std::string text;
        for (const auto& g : test_set) {
            const QuadratureReport qr = grid_quadrature_check(kind, g, ladder);
            q.push_back({{"symbol", qr.symbol},
                         {"grid_gap_sublinear", qr.grid_gap_sublinear},
                         {"frobenius_gap_sublinear", qr.frobenius_gap_sublinear}});
            std::ostringstream os;
            qr.write_csv(os);
            std::istringstream lines(os.str());
            std::string line;
            std::getline(lines, line);
            if (text.empty()) text = "symbol," + line + "\n";
            while (std::getline(lines, line)) text += qr.symbol + "," + line + "\n";
        }
        summary["quadrature"] = q;
        write_artifact(cfg, "lpo-rates-quadrature.csv", text);
    }
    finish(cfg, "lpo-rates", csv_of(r), summary);

    std::cout << "lpo-rates " << to_string(kind) << ' ' << cfg.testset << ":";
    for (const auto& s : r.series) std::cout << ' ' << s.symbol << '=' << (s.rate ? format_double(std::round(*s.rate * 1000) / 1000) : "exact");
    std::cout << '\n';
    return ok ? kOk : kViolation;
}

int run_operator_scan(const ExperimentConfig& cfg)
{
    const AlgebraKind kind = parse_algebra_kind(cfg.algebra);
    const OperatorSource src = operator_source(cfg.source);
    const auto ladder = cfg.ladder_or(kClusterLadder);
    const ClusterReport r = distribution_convergence(src, kind, ladder, cfg.eps, cfg.seed, classifier_of(cfg));

    // Pythagoras on the truncations: ||A_n - Phi_n||^2 = ||A_n||^2 - ||Phi_n||^2.
    double worst = 0.0;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const DenseMatrix a = truncate(src, ladder[i]);
        const DenseMatrix phi = preconditioner_of(src, kind, ladder[i], cfg.seed);
        const double norm_a = frobenius_norm_sq(a);
        worst = std::max(worst, std::abs(r.frobenius_sq[i] - (norm_a - frobenius_norm_sq(phi))) / std::max(norm_a, 1e-300));
    }
    const bool ok = worst <= 1e-9;

    Json summary = cluster_json(r);
    summary["algebra"] = to_string(kind);
    summary["source"] = src.label;
    summary["decay_class"] = to_string(src.decay);
    summary["hs_norm_sq"] = optional_number(src.hs_norm_sq);
    summary["frobenius_ratio_last_first"] = r.frobenius_sq.front() > 0.0 ? Json(r.frobenius_sq.back() / r.frobenius_sq.front()) : Json(nullptr);
    summary["border_fraction"] = border_fraction(src, ladder.back());
    summary["pythagoras_gap"] = worst;
    finish(cfg, "operator-scan", csv_of(r), summary);
    std::cout << "operator-scan " << src.label << ' ' << to_string(kind) << ": " << to_string(r.verdict()) << " (counts "
              << to_string(r.classification.verdict) << ", frobenius " << to_string(r.frobenius) << ")"
              << (ok ? "" : ", Pythagoras VIOLATED") << '\n';
    return ok ? kOk : kViolation;
}

int run_pcg_bench(const ExperimentConfig& cfg)
{
    const Symbol f = resolve_symbol(symbol_spec(cfg, "preset:2-2cos+delta(0.01)"));
    ScalingOptions opt;
    opt.kinds.clear();
    for (const auto& p : cfg.preconds) opt.kinds.push_back(parse_preconditioner_kind(p));
    opt.algebra = parse_algebra_kind(cfg.algebra);
    opt.pcg.pinch_block = cfg.pinch_block;
    opt.pcg.seed = cfg.seed;
    const auto ladder = cfg.ladder_or(kPcgLadder);
    const ScalingStudy study = scaling_study(f, ladder, cfg.tolerance, opt);

    bool monotone = true;
    for (const auto& row : study.rows) monotone = monotone && row.energy_monotone;

    Json summary;
    summary["symbol"] = study.symbol;
    summary["algebra"] = cfg.algebra;
    summary["tolerance"] = cfg.tolerance;
    summary["ladder"] = ladder;
    summary["energy_monotone"] = monotone;
    Json per = Json::object();
    for (const auto kind : opt.kinds) {
        const auto it = study.iterations(kind);
        const auto [lo, hi] = std::minmax_element(it.begin(), it.end());
        per[to_string(kind)] = {{"iterations", it}, {"spread", *hi - *lo}};
    }
    summary["preconditioners"] = per;

    std::ostringstream csv;
    study.write_csv(csv, cfg.timings);
    finish(cfg, "pcg-bench", csv.str(), summary);

    std::cout << "pcg-bench " << study.symbol << ' ' << cfg.algebra << ":";
    for (const auto kind : opt.kinds) std::cout << ' ' << to_string(kind) << '=' << join(study.iterations(kind));
    std::cout << (monotone ? "" : ", energy NOT monotone") << '\n';
    return monotone ? kOk : kViolation;
}

} // namespace trigprec::cli
