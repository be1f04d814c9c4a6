#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "trigprec/algebras.hpp"
#include "trigprec/clustering.hpp"
#include "trigprec/format.hpp"
#include "trigprec/korovkin.hpp"
#include "trigprec/solver.hpp"
#include "trigprec/toeplitz.hpp"

namespace trigprec::cli {

namespace {

DenseMatrix seeded_matrix(Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix a(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) a(i, j) = Complex(u(rng), u(rng));
    return a;
}

DenseMatrix seeded_hermitian(Index n, std::uint64_t seed)
{
    const DenseMatrix a = seeded_matrix(n, seed);
    return 0.5 * (a + a.adjoint());
}

double relative(double err, double scale) { return err / std::max(scale, 1e-300); }

struct Check {
    std::string name;
    double threshold;
    std::function<double()> measure; ///< passes when the measured value is <= threshold
};

const std::vector<AlgebraKind> kKinds{AlgebraKind::Fourier, AlgebraKind::Sine, AlgebraKind::Hartley,
                                      AlgebraKind::CustomVandermonde};

double worst_over_kinds(const std::function<double(const TransformAlgebra&)>& body)
{
    double worst = 0.0;
    for (const auto kind : kKinds) worst = std::max(worst, body(algebra_for(kind, 12, 7)));
    return worst;
}

std::vector<Check> checks(std::uint64_t seed)
{
    std::vector<Check> out;
    out.push_back({"jacobi_residual", 1e-10, [seed] {
                       const DenseMatrix a = seeded_hermitian(24, seed);
                       const auto e = hermitian_eig(a);
                       const DenseMatrix r = a * e.vectors - e.vectors * e.spectrum.values.cast<Complex>().asDiagonal();
                       return relative(std::sqrt(frobenius_norm_sq(r)), std::sqrt(frobenius_norm_sq(a)));
                   }});
    out.push_back({"algebra_unitarity", 1e-10,
                   [] { return worst_over_kinds([](const TransformAlgebra& alg) { return unitarity_defect(alg.unitary()); }); }});
    out.push_back({"projection_linearity", 1e-9, [seed] {
                       return worst_over_kinds([seed](const TransformAlgebra& alg) {
                           const DenseMatrix a = seeded_matrix(alg.order(), seed);
                           const DenseMatrix b = seeded_matrix(alg.order(), seed + 1);
                           const Complex alpha(0.3, -1.7);
                           const DenseMatrix gap = project(alg, alpha * a + b) - alpha * project(alg, a) - project(alg, b);
                           return relative(std::sqrt(frobenius_norm_sq(gap)), std::sqrt(frobenius_norm_sq(a) + frobenius_norm_sq(b)));
                       });
                   }});
    out.push_back({"projection_adjoint", 1e-9, [seed] {
                       return worst_over_kinds([seed](const TransformAlgebra& alg) {
                           const DenseMatrix a = seeded_matrix(alg.order(), seed);
                           const DenseMatrix gap = project(alg, a.adjoint()) - project(alg, a).adjoint();
                           return relative(std::sqrt(frobenius_norm_sq(gap)), std::sqrt(frobenius_norm_sq(a)));
                       });
                   }});
    out.push_back({"projection_trace", 1e-9, [seed] {
                       return worst_over_kinds([seed](const TransformAlgebra& alg) {
                           const DenseMatrix a = seeded_matrix(alg.order(), seed);
                           return relative(std::abs(project(alg, a).trace() - a.trace()), std::sqrt(frobenius_norm_sq(a)));
                       });
                   }});
    out.push_back({"projection_pythagoras", 1e-9, [seed] {
                       return worst_over_kinds([seed](const TransformAlgebra& alg) {
                           const DenseMatrix a = seeded_matrix(alg.order(), seed);
                           const DenseMatrix p = project(alg, a);
                           const double lhs = frobenius_norm_sq(a - p);
                           return relative(std::abs(lhs - (frobenius_norm_sq(a) - frobenius_norm_sq(p))), frobenius_norm_sq(a));
                       });
                   }});
    out.push_back({"pinched_pythagoras", 1e-9, [seed] {
                       return worst_over_kinds([seed](const TransformAlgebra& alg) {
                           const DenseMatrix a = seeded_matrix(alg.order(), seed);
                           const DenseMatrix p = project_pinched(alg, PinchingPartition::contiguous(alg.order(), 3), a);
                           const double lhs = frobenius_norm_sq(a - p);
                           return relative(std::abs(lhs - (frobenius_norm_sq(a) - frobenius_norm_sq(p))), frobenius_norm_sq(a));
                       });
                   }});
    out.push_back({"eigenvalue_bracketing", 1e-9, [seed] {
                       return worst_over_kinds([seed](const TransformAlgebra& alg) {
                           const DenseMatrix a = seeded_hermitian(alg.order(), seed);
                           const Spectrum sa = hermitian_eigenvalues(a);
                           const Spectrum sp = hermitian_eigenvalues(project(alg, a));
                           return std::max({0.0, sa.min() - sp.min(), sp.max() - sa.max()});
                       });
                   }});
    out.push_back({"fast_circulant_projection", 1e-10, [] {
                       const Symbol f = preset_symbol("2+cos+0.5cos2");
                       const DenseMatrix generic = project(make_algebra(AlgebraKind::Fourier, 48), toeplitz_section(f, 48));
                       return (project_toeplitz_fast(f, 48) - generic).cwiseAbs().maxCoeff();
                   }});
    out.push_back({"fejer_cos_error", 1e-12, [] {
                       double worst = 0.0;
                       for (const Index n : {8, 32, 128})
                           worst = std::max(worst, std::abs(lpo_sup_error(make_algebra(AlgebraKind::Fourier, n), Symbol::cosine(1)) -
                                                            1.0 / static_cast<double>(n)));
                       return worst;
                   }});
    out.push_back({"lpo_grid_eigenvalues", 1e-10, [] {
                       const Symbol f = preset_symbol("2+cos+0.5cos2");
                       double worst = 0.0;
                       for (const auto kind : {AlgebraKind::Fourier, AlgebraKind::Sine, AlgebraKind::Hartley}) {
                           const TransformAlgebra alg = make_algebra(kind, 20);
                           const ComplexVector lambda = algebra_eigenvalues(alg, toeplitz_section(f, 20));
                           for (Index i = 0; i < 20; ++i)
                               worst = std::max(worst, std::abs(lpo_eval(alg, f, alg.grid()(i)) - lambda(i).real()));
                       }
                       return worst;
                   }});
    out.push_back({"widom_rank_tail", 1e-10, [] {
                       double worst = 0.0;
                       for (const char* name : {"cos", "2+cos", "cos^2"})
                           for (const auto& s : product_correction_ladder(preset_symbol(name), {16, 32, 64}))
                               worst = std::max(worst, s.tail_singular_value);
                       return worst;
                   }});
    out.push_back({"preconditioned_spectrum", 1e-9, [seed] {
                       const Index n = 16;
                       const DenseMatrix a = seeded_hermitian(n, seed) + 4.0 * DenseMatrix::Identity(n, n);
                       DenseMatrix b = seeded_matrix(n, seed + 3);
                       b = b * b.adjoint() / static_cast<double>(n) + DenseMatrix::Identity(n, n);
                       const PreconditionedSpectrum ps = preconditioned_spectrum(a, b, 0.1);
                       Eigen::ComplexEigenSolver<DenseMatrix> oracle(b.inverse() * a);
                       std::vector<double> ev;
                       for (Index i = 0; i < n; ++i) ev.push_back(oracle.eigenvalues()(i).real());
                       std::sort(ev.begin(), ev.end());
                       double worst = 0.0;
                       for (Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(ev[i] - ps.spectrum.values(i)));
                       return worst / ev.back();
                   }});
    out.push_back({"classifier_planted", 0.0, [] {
                       const std::vector<Index> ladder{64, 128, 256, 512};
                       const std::vector<double> eps{0.2, 0.1, 0.05, 0.01};
                       auto table = [&](const std::function<Index(Index, std::size_t)>& count) {
                           CountTable t{ladder, eps, {}};
                           for (const Index n : ladder) {
                               t.counts.emplace_back();
                               for (std::size_t e = 0; e < eps.size(); ++e) t.counts.back().push_back(count(n, e));
                           }
                           return classify(t);
                       };
                       int wrong = 0;
                       wrong += table([](Index, std::size_t) { return Index{3}; }) != ClusterClass::uniform;
                       wrong += table([](Index, std::size_t e) { return Index(2 + 4 * e); }) != ClusterClass::strong;
                       wrong += table([](Index n, std::size_t) { return Index(std::ceil(std::sqrt(double(n)))); }) != ClusterClass::weak;
                       wrong += table([](Index n, std::size_t) { return Index(std::ceil(0.3 * double(n))); }) != ClusterClass::none;
                       return static_cast<double>(wrong);
                   }});
    out.push_back({"pcg_energy_and_residual", 1e-9, [] {
                       const Symbol f = preset_symbol("2-2cos+delta(0.01)");
                       const LinearOperator a = toeplitz_operator(f, 128);
                       const ComplexVector b = ComplexVector::Ones(128);
                       double worst = 0.0;
                       for (const auto kind : {PreconditionerKind::none, PreconditionerKind::algebra_projection, PreconditionerKind::pinched}) {
                           const SolveTrace t = pcg(a, b, kind, AlgebraKind::Fourier);
                           if (!t.converged || !t.energy_monotone) return 1.0;
                           worst = std::max(worst, t.true_residual);
                       }
                       return worst;
                   }});
    return out;
}

} // namespace

int run_selftest(const ExperimentConfig& cfg)
{
    std::ostringstream csv;
    csv << "check,threshold,value,status\n";
    Json results = Json::array();
    int failed = 0;
    const auto list = checks(cfg.seed);
    for (const auto& c : list) {
        double value = 0.0;
        std::string status;
        try {
            value = c.measure();
            status = value <= c.threshold ? "pass" : "fail";
        } catch (const std::exception& e) {
            value = NAN;
            status = "error";
            std::cerr << "selftest " << c.name << ": " << e.what() << '\n';
        }
        if (status != "pass") ++failed;
        // Rounded to three significant digits so round-off noise cannot change the CSV.
        std::ostringstream v;
        v.precision(3);
        v << std::scientific << value;
        csv << c.name << ',' << format_double(c.threshold) << ',' << v.str() << ',' << status << '\n';
        results.push_back({{"check", c.name}, {"status", status}});
    }
    Json summary;
    summary["checks"] = results;
    summary["failed"] = failed;
    write_artifact(cfg, "selftest.csv", csv.str());
    write_artifact(cfg, "selftest.json", summary.dump(2) + "\n");
    std::cout << "selftest: " << list.size() - failed << '/' << list.size() << " invariants hold\n";
    return failed == 0 ? kOk : kViolation;
}

} // namespace trigprec::cli
