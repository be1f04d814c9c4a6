#include <doctest.h>

#include "trigprec/korovkin.hpp"
#include "trigprec/toeplitz.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace trigprec;
namespace ts = testing_support;

namespace {

constexpr double pi = std::numbers::pi;

// Fejer means: the Fourier-algebra operator damps e^{ikx} by (1 - |k|/n).
double fejer_mean(const Symbol& f, Index n, double x)
{
    Complex sum = 0.0;
    for (const auto& [k, a] : f.coefficients())
        if (std::abs(k) < n) sum += (1.0 - std::abs(k) / static_cast<double>(n)) * a * std::exp(Complex(0.0, k * x));
    return sum.real();
}

} // namespace

TEST_CASE("Fourier LPO equals the Fejer mean")
{
    const Symbol f = preset_symbol("2+cos+0.5cos2") + Symbol::sine(3, 0.25);
    for (const Index n : {4, 7, 16, 33}) {
        const auto alg = make_algebra(AlgebraKind::Fourier, n);
        for (const double x : {0.0, 0.3, 1.0, 2.5, 4.0, 6.1})
            CHECK(lpo_eval(alg, f, x) == doctest::Approx(fejer_mean(f, n, x)).epsilon(1e-12));
    }
}

TEST_CASE("Fourier LPO reproduces constants")
{
    const auto alg = make_algebra(AlgebraKind::Fourier, 9);
    for (const double x : {0.0, 1.1, 5.0}) CHECK(lpo_eval(alg, Symbol::constant(3.0), x) == doctest::Approx(3.0));
}

TEST_CASE("LPO is positive on nonnegative symbols")
{
    const std::vector<Symbol> nonneg{preset_symbol("2-2cos+delta(0.01)") - Symbol::constant(0.01), product(Symbol::sine(2), Symbol::sine(2)),
                                     preset_symbol("2+cos")};
    for (const auto kind : {AlgebraKind::Fourier, AlgebraKind::Sine, AlgebraKind::Hartley}) {
        const auto alg = make_algebra(kind, 17);
        for (const auto& f : nonneg) {
            const RealVector v = lpo_values(alg, f, sup_grid(alg));
            CHECK(v.minCoeff() >= -1e-12);
        }
    }
}

TEST_CASE("LPO on the grid equals the projection eigenvalues")
{
    const Symbol f = preset_symbol("2+cos+0.5cos2");
    for (const auto kind : {AlgebraKind::Fourier, AlgebraKind::Sine, AlgebraKind::Hartley}) {
        const auto alg = make_algebra(kind, 24);
        const ComplexVector lambda = algebra_eigenvalues(alg, toeplitz_section(f, 24));
        for (Index i = 0; i < 24; ++i) CHECK(lpo_eval(alg, f, alg.grid()(i)) == doctest::Approx(lambda(i).real()).epsilon(1e-12));
    }
}

TEST_CASE("sup_grid spans the domain")
{
    const auto f = sup_grid(make_algebra(AlgebraKind::Fourier, 4));
    CHECK(f.size() == kSupGridPoints);
    CHECK(f(0) == 0.0);
    CHECK(f(1) == doctest::Approx(2.0 * pi / kSupGridPoints));
    const auto s = sup_grid(make_algebra(AlgebraKind::Sine, 4));
    CHECK(s(kSupGridPoints - 1) == doctest::Approx(pi * (kSupGridPoints - 1) / kSupGridPoints));
}

TEST_CASE("lpo_rates for the classical test set in the Fourier algebra")
{
    const std::vector<Index> ladder{8, 16, 32, 64, 128};
    const auto r = lpo_rates(AlgebraKind::Fourier, standard_test_set(TestSetName::classical), ladder);
    REQUIRE(r.series.size() == 5);
    CHECK(!r.series[0].rate.has_value());
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        CHECK(r.series[0].sup_error[i] <= kZeroError);
        CHECK(std::abs(r.series[1].sup_error[i] - 1.0 / double(ladder[i])) <= 1e-12);
    }
    for (std::size_t s = 1; s < 5; ++s) {
        REQUIRE(r.series[s].rate.has_value());
        CHECK(*r.series[s].rate == doctest::Approx(-1.0).epsilon(0.02));
    }
    std::ostringstream os;
    r.write_csv(os);
    CHECK(os.str().rfind("n,symbol,sup_error\n8,1,", 0) == 0);
}

TEST_CASE("fit_rate")
{
    const std::vector<Index> ladder{4, 8, 16, 32, 64};
    std::vector<double> quad;
    for (const Index n : ladder) quad.push_back(3.0 / double(n * n));
    CHECK(*fit_rate(ladder, quad) == doctest::Approx(-2.0));
    CHECK(!fit_rate(ladder, {0, 0, 0, 0, 0}).has_value());
    CHECK_THROWS_AS(fit_rate(ladder, {1.0}), DimensionMismatch);
}

TEST_CASE("toeplitz_and_projection agrees with the generic projection")
{
    const Symbol f = preset_symbol("2+cos+0.5cos2");
    for (const auto kind : {AlgebraKind::Fourier, AlgebraKind::Sine, AlgebraKind::Hartley, AlgebraKind::CustomVandermonde}) {
        const auto [t, p] = toeplitz_and_projection(kind, f, 20, 5);
        CHECK(ts::max_abs(t - toeplitz_section(f, 20)) == 0.0);
        CHECK(ts::max_abs(p - project(algebra_for(kind, 20, 5), t)) <= 1e-12);
    }
}

TEST_CASE("remainder_propagation on cos and sin")
{
    const auto r = remainder_propagation(AlgebraKind::Fourier, {Symbol::cosine(1), Symbol::sine(1)}, {16, 32, 64, 128, 256});
    CHECK(r.products.size() == 3);
    CHECK(r.within_factor);
    for (std::size_t i = 0; i < r.theta.size(); ++i) CHECK(r.theta[i] == doctest::Approx(1.0 / double(r.ladder[i])));
    for (const auto& p : r.products) CHECK(*p.rate == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("grid_quadrature_check closed forms for 2+cos")
{
    const auto r = grid_quadrature_check(AlgebraKind::Fourier, preset_symbol("2+cos"), {8, 16, 32, 64});
    for (const auto& row : r.rows) {
        const double n = static_cast<double>(row.n);
        // mean of (2+cos)^2 is 4.5; ||T_n||_F^2 = 4n + 2(n-1)/4.
        CHECK(row.grid_sum == doctest::Approx(4.5 * n));
        CHECK(row.integral == doctest::Approx(4.5 * n));
        CHECK(row.full_integral == doctest::Approx(4.5 * n));
        CHECK(row.frobenius_sq == doctest::Approx(4.5 * n - 0.5));
    }
    CHECK(r.frobenius_gap_sublinear);
}

TEST_CASE("korovkin_test on the Fourier algebra")
{
    const auto r = korovkin_test(AlgebraKind::Fourier, {Symbol::cosine(1), Symbol::sine(1)}, {preset_symbol("2+cos+0.5cos2")},
                                 {32, 64, 128, 256}, {0.2, 0.1, 0.05, 0.01});
    // Generators, squares, the mixed product cos sin and the holdout.
    CHECK(r.functions.size() == 6);
    CHECK(r.test_set_strong);
    CHECK(r.holdout_strong);
    CHECK(r.implication_observed);
    CHECK_THROWS_AS(korovkin_test(AlgebraKind::Fourier, {Symbol(std::map<int, Complex>{{1, 1.0}})}, {}, {8, 16, 32, 64}, {0.1}),
                    NotHermitian);
}

TEST_CASE("korovkin_test sum-of-squares variant")
{
    const auto r = korovkin_test(AlgebraKind::Fourier, {Symbol::cosine(1), Symbol::sine(1)}, {}, {16, 32, 64, 128}, {0.1},
                                 42, {}, KorovkinVariant::sum_of_squares);
    std::size_t sums = 0;
    for (const auto& f : r.functions) sums += f.role == "sum_sq";
    CHECK(sums == 1);
}
