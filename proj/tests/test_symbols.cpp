#include <doctest.h>

#include "trigprec/symbols.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace trigprec;
namespace ts = testing_support;

namespace {

constexpr double pi = std::numbers::pi;

Symbol two_plus_two_cos() { return Symbol({{0, 2.0}, {1, 1.0}, {-1, 1.0}}, "2+2cos"); }

double coefficient_gap(const Symbol& s, const Symbol& t)
{
    double gap = 0.0;
    const int d = std::max(s.degree(), t.degree());
    for (int k = -d; k <= d; ++k) gap = std::max(gap, std::abs(s.coefficient(k) - t.coefficient(k)));
    return gap;
}

} // namespace

TEST_CASE("eval")
{
    CHECK(std::abs(eval(two_plus_two_cos(), 0.0) - 4.0) <= 1e-15);
    for (double x : {0.0, 0.7, 3.0, 6.1}) CHECK(eval(Symbol::constant(1.0), x) == Complex(1.0));
    CHECK(std::abs(eval(Symbol::cosine(1), pi / 2)) <= 1e-15);
    CHECK(std::abs(eval(Symbol::sine(1), pi / 2) - 1.0) <= 1e-15);
}

TEST_CASE("degree and realness")
{
    CHECK(Symbol().degree() == 0);
    CHECK(Symbol({{3, 0.0}, {1, 1.0}}).degree() == 1);
    CHECK(Symbol::cosine(3).degree() == 3);
    CHECK(Symbol::sine(1).is_real());
    CHECK_FALSE(Symbol({{1, 1.0}}).is_real());
    CHECK(Symbol({{1, Complex(1.0, 2.0)}, {-1, Complex(1.0, -2.0)}}).is_real());
}

TEST_CASE("fourier_coefficients")
{
    const Symbol g = fourier_coefficients({[](double x) { return 2.0 + 2.0 * std::cos(x); }, 16, "g"}, 2);
    CHECK(std::abs(g.coefficient(0) - 2.0) <= 1e-12);
    CHECK(std::abs(g.coefficient(1) - 1.0) <= 1e-12);
    CHECK(std::abs(g.coefficient(-1) - 1.0) <= 1e-12);
    CHECK(std::abs(g.coefficient(2)) <= 1e-12);
    CHECK(std::abs(g.coefficient(-2)) <= 1e-12);

    const Symbol one = fourier_coefficients({[](double) { return 1.0; }, 8, "1"}, 2);
    CHECK(std::abs(one.coefficient(0) - 1.0) <= 1e-12);
    CHECK(coefficient_gap(one, Symbol::constant(1.0)) <= 1e-12);

    CHECK_THROWS_AS(fourier_coefficients({[](double) { return 1.0; }, 12, ""}, 2), InsufficientSamples);
    CHECK_THROWS_AS(fourier_coefficients({[](double) { return 1.0; }, 16, ""}, 5), InsufficientSamples);
}

TEST_CASE("fourier_coefficients of |sin x| match adaptive Simpson quadrature")
{
    const auto g = [](double x) { return std::abs(std::sin(x)); };
    const Symbol s = fourier_coefficients({g, 1u << 16, "abs_sin"}, 8);
    for (int k = -8; k <= 8; ++k) {
        // a_k = (1/2pi) int g(x) e^{-ikx} dx; g is even so only the cosine part survives.
        // Split at pi where g has its kink.
        const auto integrand = [&](double x) { return g(x) * std::cos(k * x); };
        const double expected =
            (ts::adaptive_simpson(integrand, 0.0, pi, 1e-13) + ts::adaptive_simpson(integrand, pi, 2 * pi, 1e-13)) / (2 * pi);
        CHECK(std::abs(s.coefficient(k) - expected) <= 1e-8);
    }
    CHECK(coefficient_gap(s, preset_symbol("abs_sin(8)")) <= 1e-8);
}

TEST_CASE("fourier_coefficients inverts eval on trigonometric polynomials")
{
    const Symbol f = preset_symbol("2+cos+0.5cos2") + Symbol::sine(3, 0.25);
    const Symbol back = fourier_coefficients({[&](double x) { return eval(f, x).real(); }, 64, "f"}, 5);
    CHECK(coefficient_gap(f, back) <= 1e-12);
}

TEST_CASE("product")
{
    const Symbol c2 = product(Symbol::cosine(1), Symbol::cosine(1));
    CHECK(std::abs(c2.coefficient(0) - 0.5) <= 1e-15);
    CHECK(std::abs(c2.coefficient(2) - 0.25) <= 1e-15);
    CHECK(std::abs(c2.coefficient(-2) - 0.25) <= 1e-15);
    CHECK(std::abs(c2.coefficient(1)) == 0.0);

    const Symbol s = preset_symbol("2+cos+0.5cos2");
    CHECK(coefficient_gap(product(s, Symbol::constant(1.0)), s) == 0.0);

    // Oracle: direct convolution by hand of {1, 2, 1} with itself.
    const Symbol sq = product(two_plus_two_cos(), two_plus_two_cos());
    CHECK(sq.degree() == 2);
    CHECK(std::abs(sq.coefficient(0) - 6.0) <= 1e-15);
    CHECK(std::abs(sq.coefficient(1) - 4.0) <= 1e-15);
    CHECK(std::abs(sq.coefficient(-1) - 4.0) <= 1e-15);
    CHECK(std::abs(sq.coefficient(2) - 1.0) <= 1e-15);
    CHECK(std::abs(sq.coefficient(-2) - 1.0) <= 1e-15);

    for (double x : {0.1, 1.3, 4.0}) CHECK(std::abs(sq(x) - two_plus_two_cos()(x) * two_plus_two_cos()(x)) <= 1e-12);
    CHECK(product(Symbol::sine(1), Symbol::cosine(2)).is_real());
}

TEST_CASE("standard test sets")
{
    const auto classical = standard_test_set(TestSetName::classical);
    REQUIRE(classical.size() == 5);
    const int degrees[] = {0, 1, 1, 2, 2};
    for (std::size_t i = 0; i < 5; ++i) CHECK(classical[i].degree() == degrees[i]);
    CHECK(standard_test_set(TestSetName::fourier_basic).size() == 3);

    // 1 + cos^2 + sin^2: the a_{+-2} terms of cos^2 and sin^2 cancel.
    const Symbol sum = sum_of_squares(standard_test_set(TestSetName::fourier_basic));
    CHECK(std::abs(sum.coefficient(0) - 2.0) <= 1e-15);
    CHECK(std::abs(sum.coefficient(2)) <= 1e-15);

    const Symbol sum_classical = sum_of_squares(classical);
    CHECK(sum_classical.degree() == 4);
    for (double x : {0.0, 0.4, 2.2}) {
        double expected = 0.0;
        for (const auto& g : classical) expected += std::norm(g(x));
        CHECK(std::abs(sum_classical(x) - expected) <= 1e-12);
    }
}

TEST_CASE("presets")
{
    const Symbol f = preset_symbol("2-2cos+delta(0.01)");
    CHECK(std::abs(f(0.0) - 0.01) <= 1e-14);
    CHECK(std::abs(f(pi) - 4.01) <= 1e-14);
    CHECK(f.range().first == doctest::Approx(0.01));
    CHECK(resolve_symbol("preset:2+cos").degree() == 1);
    CHECK_THROWS_AS(preset_symbol("nope"), ParseError);
    CHECK_THROWS_AS(resolve_symbol("2+cos"), ParseError);

    // Square-wave partial sums converge to sign(cos x) away from the jumps.
    const Symbol sq = preset_symbol("sign(255)");
    CHECK(std::abs(sq(0.3).real() - 1.0) <= 0.02);
    CHECK(std::abs(sq(pi).real() + 1.0) <= 0.02);
}

TEST_CASE("serialization round trip and parse errors")
{
    const Symbol f = preset_symbol("2+cos+0.5cos2") + Symbol::sine(3, 0.3);
    std::stringstream buffer;
    write_symbol(buffer, f);
    const Symbol back = read_symbol(buffer, "f");
    CHECK(coefficient_gap(f, back) == 0.0);

    std::istringstream comments("# header\n\n0 1 0   # constant\n");
    CHECK(read_symbol(comments).coefficient(0) == Complex(1.0));

    std::istringstream dup("0 1 0\n1 0.5 0\n0 2 0\n");
    try {
        read_symbol(dup);
        FAIL("duplicate frequency accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream short_line("0 1\n");
    CHECK_THROWS_AS(read_symbol(short_line), ParseError);
    CHECK_THROWS_AS(load_symbol_file("/nonexistent/symbol.txt"), ParseError);
}
