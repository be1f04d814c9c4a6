#include <doctest.h>

#include "trigprec/solver.hpp"
#include "trigprec/toeplitz.hpp"
#include "test_support.hpp"

#include <cmath>
#include <sstream>

using namespace trigprec;
namespace ts = testing_support;

TEST_CASE("preconditioner kind names")
{
    for (const auto k : {PreconditionerKind::none, PreconditionerKind::algebra_projection, PreconditionerKind::pinched})
        CHECK(parse_preconditioner_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_preconditioner_kind("jacobi"), ParseError);
}

TEST_CASE("toeplitz_operator applies T_n(f)")
{
    const Symbol f = preset_symbol("2+cos+0.5cos2") + Symbol::sine(3, 0.2);
    for (const Index n : {1, 5, 32, 33}) {
        const LinearOperator op = toeplitz_operator(f, n);
        const ts::Mat x = ts::random_matrix(n, 3).col(0);
        CHECK(ts::max_abs(op.apply(x) - toeplitz_section(f, n) * x) <= 1e-12);
    }
}

TEST_CASE("pcg against a direct solve")
{
    const Index n = 40;
    const ts::Mat a = ts::random_hpd(n, 11, 0.5);
    const ts::Mat b = ts::random_matrix(n, 12).col(0);
    const ts::Mat x_ref = a.llt().solve(b);
    const LinearOperator op = dense_operator(a);
    for (const auto kind : {PreconditionerKind::none, PreconditionerKind::algebra_projection, PreconditionerKind::pinched}) {
        const auto t = pcg(op, b, kind, AlgebraKind::Sine);
        CHECK(t.converged);
        CHECK(t.energy_monotone);
        CHECK(ts::max_abs(t.solution - x_ref) <= 1e-8 * ts::max_abs(x_ref));
        CHECK(t.true_residual <= 1e-9);
        CHECK(t.residual_history.front() == doctest::Approx(1.0));
        CHECK(t.residual_history.size() == static_cast<std::size_t>(t.iterations + 1));
    }
}

TEST_CASE("diagonal preconditioner solves with U diag(lambda) U^*")
{
    const auto alg = make_algebra(AlgebraKind::Hartley, 8);
    ComplexVector lambda(8);
    for (Index i = 0; i < 8; ++i) lambda(i) = 1.0 + i;
    const Preconditioner m = Preconditioner::diagonal(alg, lambda);
    const ts::Mat p = alg.unitary() * lambda.asDiagonal() * alg.unitary().adjoint();
    const ts::Mat r = ts::random_matrix(8, 5).col(0);
    CHECK(ts::max_abs(p * m.solve(r) - r) <= 1e-12);

    lambda(3) = -1.0;
    CHECK_THROWS_AS(Preconditioner::diagonal(alg, lambda), NotPositiveDefinite);
}

TEST_CASE("a projection preconditioner inside the algebra solves in one step")
{
    // 2 - 2cos + 0.01 is tridiagonal Toeplitz, which the sine algebra contains.
    const Symbol f = preset_symbol("2-2cos+delta(0.01)");
    const auto t = pcg(toeplitz_operator(f, 64), ComplexVector::Ones(64), PreconditionerKind::algebra_projection, AlgebraKind::Sine);
    CHECK(t.iterations == 1);
}

TEST_CASE("pcg errors")
{
    const LinearOperator op = dense_operator(ts::random_hpd(20, 1));
    const ComplexVector b = ComplexVector::Ones(20);
    PcgOptions capped;
    capped.max_iterations = 1;
    CHECK_THROWS_AS(pcg(op, b, Preconditioner::identity(20), capped), MaxIterations);
    capped.throw_on_max_iterations = false;
    CHECK_FALSE(pcg(op, b, Preconditioner::identity(20), capped).converged);

    const LinearOperator negative = dense_operator(-ts::random_hpd(20, 2));
    CHECK_THROWS_AS(pcg(negative, b, Preconditioner::identity(20)), NotPositiveDefinite);
    CHECK_THROWS_AS(pcg(op, ComplexVector::Ones(19), Preconditioner::identity(20)), DimensionMismatch);
}

TEST_CASE("energy history is nonincreasing")
{
    const auto t = pcg(toeplitz_operator(preset_symbol("2-2cos+delta(0.01)"), 128), ComplexVector::Ones(128),
                       PreconditionerKind::none, AlgebraKind::Fourier);
    for (std::size_t k = 1; k < t.energy_history.size(); ++k)
        CHECK(t.energy_history[k] <= t.energy_history[k - 1] + 1e-12 * std::abs(t.energy_history[k - 1]));
}

TEST_CASE("scaling_study")
{
    const auto one = scaling_study(Symbol::constant(1.0), {16, 32, 64, 128}, 1e-10);
    for (const auto& row : one.rows) CHECK(row.iterations == 1);

    const auto s = scaling_study(preset_symbol("2+cos"), {16, 32, 64, 128}, 1e-10);
    CHECK(s.iterations(PreconditionerKind::none).size() == 4);
    std::ostringstream os;
    s.write_csv(os);
    const std::string csv = os.str();
    CHECK(csv.rfind("n,precond,iterations,final_residual,wall_time\n16,none,", 0) == 0);
    CHECK(csv.find(",na\n") != std::string::npos);

    CHECK_THROWS_AS(scaling_study(preset_symbol("cos"), {16, 32}, 1e-10), NotPositiveDefinite);
}
