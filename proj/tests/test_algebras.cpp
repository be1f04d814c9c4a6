#include <doctest.h>

#include "trigprec/algebras.hpp"
#include "trigprec/toeplitz.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace trigprec;
namespace ts = testing_support;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<TransformAlgebra> all_algebras(Index n)
{
    return {make_algebra(AlgebraKind::Fourier, n), make_algebra(AlgebraKind::Sine, n),
            make_algebra(AlgebraKind::Hartley, n), make_random_algebra(n, 1234)};
}

Complex trace(const DenseMatrix& a) { return a.diagonal().sum(); }

} // namespace

TEST_CASE("make_algebra Fourier n=2")
{
    const auto alg = make_algebra(AlgebraKind::Fourier, 2);
    DenseMatrix expected(2, 2);
    expected << 1, 1, 1, -1;
    expected /= std::sqrt(2.0);
    CHECK(ts::max_abs(alg.unitary() - expected) <= 1e-15);
    CHECK(alg.grid()(0) == 0.0);
    CHECK(alg.grid()(1) == doctest::Approx(pi));
}

TEST_CASE("make_algebra Sine n=2")
{
    const auto alg = make_algebra(AlgebraKind::Sine, 2);
    for (Index i = 0; i < 2; ++i) {
        CHECK(alg.grid()(i) == doctest::Approx((i + 1) * pi / 3));
        for (Index j = 0; j < 2; ++j) {
            const double expected = std::sqrt(2.0 / 3.0) * std::sin((j + 1) * (i + 1) * pi / 3);
            CHECK(std::abs(alg.vandermonde()(i, j) - expected) <= 1e-15);
            CHECK(std::abs(alg.unitary()(i, j) - expected) <= 1e-15);
        }
    }
}

TEST_CASE("make_algebra unitarity and Vandermonde rows")
{
    const auto hartley = make_algebra(AlgebraKind::Hartley, 4);
    const DenseMatrix& u = hartley.unitary();
    CHECK(ts::max_abs(u * u.transpose() - DenseMatrix::Identity(4, 4)) <= 1e-12);
    CHECK(u.imag().isZero(0.0));

    for (Index n : {2, 3, 7, 16, 33, 128}) {
        for (const auto kind : {AlgebraKind::Fourier, AlgebraKind::Sine, AlgebraKind::Hartley}) {
            const auto alg = make_algebra(kind, n);
            CHECK(unitarity_defect(alg.unitary()) <= 1e-10 * std::sqrt(static_cast<double>(n)));
            CHECK(alg.grid().size() == n);
            const Index i = n / 2;
            CHECK(ts::max_abs(alg.vandermonde().row(i) - alg.basis_row(alg.grid()(i))) <= 1e-14);
        }
    }
    CHECK(unitarity_defect(random_unitary(40, 9)) <= 1e-10 * std::sqrt(40.0));

    CHECK_THROWS_AS(make_algebra(AlgebraKind::Fourier, 1), DimensionMismatch);
    CHECK_THROWS_AS(make_algebra(AlgebraKind::CustomVandermonde, 4), Unsupported);
    CHECK_THROWS_AS(make_custom_algebra(DenseMatrix::Constant(3, 3, 1.0)), NotUnitary);
    CHECK_THROWS_AS(make_random_algebra(4, 1).basis_row(0.0), Unsupported);
    CHECK(parse_algebra_kind("Hartley") == AlgebraKind::Hartley);
    CHECK_THROWS_AS(parse_algebra_kind("wavelet"), ParseError);
}

TEST_CASE("spectral transforms match the dense unitary")
{
    for (Index n : {5, 16}) {
        for (const auto& alg : all_algebras(n)) {
            const ComplexVector x = ts::random_matrix(n, 3).col(1);
            CHECK((alg.to_spectral(x) - alg.unitary().adjoint() * x).norm() <= 1e-12);
            CHECK((alg.from_spectral(x) - alg.unitary() * x).norm() <= 1e-12);
        }
    }
}

TEST_CASE("project examples")
{
    for (const auto& alg : all_algebras(6))
        CHECK(ts::max_abs(project(alg, DenseMatrix::Identity(6, 6)) - DenseMatrix::Identity(6, 6)) <= 1e-12);

    DenseMatrix jordan = DenseMatrix::Zero(2, 2);
    jordan(0, 1) = 1.0;
    DenseMatrix expected(2, 2);
    expected << 0, 0.5, 0.5, 0;
    CHECK(ts::max_abs(project(make_algebra(AlgebraKind::Fourier, 2), jordan) - expected) <= 1e-15);

    const DenseMatrix a = ts::random_matrix(10, 77);
    for (const auto& alg : all_algebras(10)) {
        const DenseMatrix p = project(alg, a);
        CHECK(ts::max_abs(project(alg, p) - p) <= 1e-12);
        // The result is diagonalized by the algebra's unitary.
        const DenseMatrix inner = alg.unitary().adjoint() * p * alg.unitary();
        CHECK(ts::max_abs(inner - DenseMatrix(inner.diagonal().asDiagonal())) <= 1e-12);
    }
    CHECK_THROWS_AS(project(make_algebra(AlgebraKind::Sine, 4), DenseMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("project is the Frobenius-nearest algebra member")
{
    const DenseMatrix a = ts::random_matrix(8, 21);
    for (const auto& alg : all_algebras(8)) {
        const DenseMatrix p = project(alg, a);
        const double best = (a - p).squaredNorm();
        const ComplexVector lambda = algebra_eigenvalues(alg, a);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const ComplexVector shift = 0.1 * ts::random_matrix(8, seed).col(0);
            CHECK((a - algebra_member(alg, lambda + shift)).squaredNorm() >= best);
        }
    }
}

TEST_CASE("projection identities")
{
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Index n = 4 + static_cast<Index>(seed);
        const DenseMatrix a = ts::random_matrix(n, seed);
        const DenseMatrix b = ts::random_matrix(n, seed + 1000);
        const Complex alpha(0.3, -1.2);
        const Complex beta(-2.0, 0.5);
        for (const auto& alg : all_algebras(n)) {
            const DenseMatrix pa = project(alg, a);
            CHECK(ts::max_abs(project(alg, alpha * a + beta * b) - (alpha * pa + beta * project(alg, b))) <= 1e-12);
            CHECK(ts::max_abs(project(alg, a.adjoint()) - pa.adjoint()) <= 1e-12);
            CHECK(std::abs(trace(pa) - trace(a)) <= 1e-10 * (1.0 + std::abs(trace(a))));
            const double lhs = (a - pa).squaredNorm();
            const double rhs = a.squaredNorm() - pa.squaredNorm();
            CHECK(std::abs(lhs - rhs) <= 1e-9 * a.squaredNorm());
        }
    }
}

TEST_CASE("eigenvalue bracketing and contractivity")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Index n = 5 + static_cast<Index>(seed % 4) * 3;
        const DenseMatrix h = ts::random_hermitian(n, seed + 50);
        const Spectrum sh = hermitian_eigenvalues(h);
        const DenseMatrix psd = ts::random_hpd(n, seed + 60, 0.0);
        for (const auto& alg : all_algebras(n)) {
            const Spectrum sp = hermitian_eigenvalues(project(alg, h));
            CHECK(sp.min() >= sh.min() - 1e-9);
            CHECK(sp.max() <= sh.max() + 1e-9);
            CHECK(hermitian_eigenvalues(project(alg, psd)).min() >= -1e-9);
        }
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Index n = 2 + static_cast<Index>(seed % 12);
        const DenseMatrix a = ts::random_matrix(n, seed + 500);
        const auto alg = make_algebra(seed % 2 ? AlgebraKind::Hartley : AlgebraKind::Fourier, n);
        CHECK(operator_norm(project(alg, a)) <= operator_norm(a) * (1.0 + 1e-12));
    }
}

TEST_CASE("optimal circulant closed form")
{
    const Symbol f({{0, 2.0}, {1, 1.0}, {-1, 1.0}}, "2+2cos");
    const ComplexVector c = optimal_circulant_column(f, 3);
    CHECK(std::abs(c(0) - 2.0) <= 1e-15);
    CHECK(std::abs(c(1) - 2.0 / 3.0) <= 1e-15);
    CHECK(std::abs(c(2) - 2.0 / 3.0) <= 1e-15);

    // Oracle: generic projection of the dense Toeplitz section.
    const DenseMatrix generic = project(make_algebra(AlgebraKind::Fourier, 3), toeplitz_section(f, 3));
    CHECK(ts::max_abs(generic.col(0) - c) <= 1e-14);

    CHECK(ts::max_abs(project_toeplitz_fast(Symbol::constant(1.0), 5) - DenseMatrix::Identity(5, 5)) == 0.0);

    for (Index n : {17, 256}) {
        const Symbol g = preset_symbol("2+cos");
        const DenseMatrix dense = project(make_algebra(AlgebraKind::Fourier, n), toeplitz_section(g, n));
        CHECK(ts::max_abs(project_toeplitz_fast(g, n) - dense) <= 1e-10);
    }

    const Symbol skew = Symbol({{2, Complex(0.3, 0.1)}, {-1, 0.5}, {0, 1.0}});
    const DenseMatrix dense = project(make_algebra(AlgebraKind::Fourier, 9), toeplitz_section(skew, 9));
    CHECK(ts::max_abs(project_toeplitz_fast(skew, 9) - dense) <= 1e-12);
}

TEST_CASE("circulant eigenvalues follow the Fourier grid")
{
    const ComplexVector c = ts::random_matrix(12, 4).col(0);
    const auto alg = make_algebra(AlgebraKind::Fourier, 12);
    CHECK((circulant_eigenvalues(c) - algebra_eigenvalues(alg, circulant(c))).norm() <= 1e-12);

    const Symbol f = preset_symbol("2+cos+0.5cos2") + Symbol::sine(1, 0.4);
    for (Index n : {6, 13}) {
        for (const auto& alg : all_algebras(n)) {
            const ComplexVector expected = algebra_eigenvalues(alg, toeplitz_section(f, n));
            CHECK((toeplitz_algebra_eigenvalues(alg, f) - expected).norm() <= 1e-12);
        }
    }
}

TEST_CASE("pinch")
{
    const DenseMatrix a = ts::random_matrix(5, 8);
    CHECK(pinch(PinchingPartition::whole(5), a) == a);
    CHECK(pinch(PinchingPartition::singletons(5), a) == DenseMatrix(a.diagonal().asDiagonal()));

    PinchingPartition p{{{0, 1}, {2}}};
    DenseMatrix expected(3, 3);
    expected << 1, 1, 0, 1, 1, 0, 0, 0, 1;
    CHECK(pinch(p, DenseMatrix::Ones(3, 3)) == expected);

    // Non-contiguous blocks.
    PinchingPartition q{{{0, 2}, {1}}};
    const DenseMatrix pq = pinch(q, DenseMatrix::Ones(3, 3));
    CHECK(pq(0, 2) == Complex(1.0));
    CHECK(pq(0, 1) == Complex(0.0));

    CHECK_THROWS_AS(pinch(PinchingPartition{{{0, 1}}}, DenseMatrix::Ones(3, 3)), BadPartition);
    CHECK_THROWS_AS(pinch(PinchingPartition{{{0, 1}, {1, 2}}}, DenseMatrix::Ones(3, 3)), BadPartition);
    CHECK_THROWS_AS(pinch(PinchingPartition{{{0, 1, 2}, {}}}, DenseMatrix::Ones(3, 3)), BadPartition);
    CHECK_THROWS_AS(pinch(PinchingPartition{{{0, 1, 5}}}, DenseMatrix::Ones(3, 3)), BadPartition);
    CHECK(PinchingPartition::contiguous(7, 3).count() == 3);
}

TEST_CASE("project_pinched")
{
    const DenseMatrix a = ts::random_hermitian(8, 12);
    for (const auto& alg : all_algebras(8)) {
        CHECK(ts::max_abs(project_pinched(alg, PinchingPartition::singletons(8), a) - project(alg, a)) <= 1e-12);
        CHECK(ts::max_abs(project_pinched(alg, PinchingPartition::whole(8), a) - a) <= 1e-12);

        const DenseMatrix r = project_pinched(alg, PinchingPartition::contiguous(8, 2), a);
        CHECK(std::abs((a - r).squaredNorm() - (a.squaredNorm() - r.squaredNorm())) <= 1e-10 * a.squaredNorm());
        CHECK(std::abs(trace(r) - trace(a)) <= 1e-10 * (1.0 + std::abs(trace(a))));
        CHECK(ts::max_abs(project_pinched(alg, PinchingPartition::contiguous(8, 2), a.adjoint()) - r.adjoint()) <= 1e-12);

        // Coarser pinchings sit closer to A than the plain diagonal projection.
        CHECK((a - r).norm() <= (a - project(alg, a)).norm() + 1e-12);
    }
}
