#include "trigprec/solver.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <random>

#include "trigprec/format.hpp"
#include "trigprec/korovkin.hpp"
#include "trigprec/parallel.hpp"
#include "trigprec/toeplitz.hpp"

namespace trigprec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// u_j^* A u_j through the operator when no cheaper route exists.
ComplexVector operator_algebra_eigenvalues(const TransformAlgebra& alg, const LinearOperator& a)
{
    if (a.symbol) return toeplitz_algebra_eigenvalues(alg, *a.symbol);
    if (a.dense) return algebra_eigenvalues(alg, *a.dense);
    ComplexVector lambda(a.order);
    for (Index j = 0; j < a.order; ++j) {
        const ComplexVector u = alg.unitary().col(j);
        lambda(j) = u.dot(a.apply(u));
    }
    return lambda;
}

} // namespace

std::string to_string(PreconditionerKind k)
{
    switch (k) {
    case PreconditionerKind::none: return "none";
    case PreconditionerKind::algebra_projection: return "algebra_projection";
    case PreconditionerKind::pinched: return "pinched";
    }
    return "none";
}

PreconditionerKind parse_preconditioner_kind(const std::string& name)
{
    if (name == "none") return PreconditionerKind::none;
    if (name == "algebra_projection" || name == "algebra") return PreconditionerKind::algebra_projection;
    if (name == "pinched") return PreconditionerKind::pinched;
    throw ParseError("unknown preconditioner '" + name + "'", 0);
}

LinearOperator dense_operator(DenseMatrix a, std::string label)
{
    if (a.rows() != a.cols()) throw DimensionMismatch("dense_operator: matrix is not square");
    LinearOperator op;
    op.order = a.rows();
    op.label = std::move(label);
    op.dense = std::make_shared<const DenseMatrix>(std::move(a));
    op.apply = [m = op.dense](const ComplexVector& x) -> ComplexVector { return (*m) * x; };
    return op;
}

LinearOperator toeplitz_operator(const Symbol& f, Index n)
{
    if (n < 1) throw DimensionMismatch("toeplitz_operator: order must be positive");
    LinearOperator op;
    op.order = n;
    op.label = "toeplitz(" + f.label() + ")";
    op.symbol = f;
    op.apply = [f](const ComplexVector& x) { return toeplitz_multiply(f, x); };
    return op;
}

struct Preconditioner::Impl {
    std::optional<TransformAlgebra> alg;
    ComplexVector inverse_lambda; ///< diagonal case
    std::vector<std::vector<Index>> blocks;
    std::vector<Eigen::LLT<DenseMatrix>> factors;
};

Preconditioner Preconditioner::identity(Index n)
{
    Preconditioner p;
    p.label_ = "none";
    p.order_ = n;
    return p;
}

Preconditioner Preconditioner::diagonal(TransformAlgebra alg, const ComplexVector& lambda)
{
    if (lambda.size() != alg.order()) throw DimensionMismatch("Preconditioner::diagonal: eigenvalue count does not match");
    const double top = lambda.cwiseAbs().maxCoeff();
    for (Index i = 0; i < lambda.size(); ++i)
        if (!(lambda(i).real() > 1e-13 * top))
            throw NotPositiveDefinite("preconditioner eigenvalue " + std::to_string(i) + " = " +
                                      format_double(lambda(i).real()) + " is below 1e-13 * max");
    auto impl = std::make_shared<Impl>();
    impl->inverse_lambda = lambda.real().cwiseInverse().cast<Complex>();
    Preconditioner p;
    p.label_ = "algebra_projection(" + alg.label() + ")";
    p.order_ = alg.order();
    impl->alg = std::move(alg);
    p.impl_ = std::move(impl);
    return p;
}

Preconditioner Preconditioner::pinched(TransformAlgebra alg, const PinchingPartition& partition, const LinearOperator& a)
{
    const Index n = alg.order();
    if (a.order != n) throw DimensionMismatch("Preconditioner::pinched: operator order does not match the algebra");
    partition.validate(n);
    const DenseMatrix& u = alg.unitary();

    auto impl = std::make_shared<Impl>();
    for (const auto& block : partition.blocks) {
        const Index m = static_cast<Index>(block.size());
        DenseMatrix us(n, m);
        for (Index c = 0; c < m; ++c) us.col(c) = u.col(block[static_cast<std::size_t>(c)]);
        DenseMatrix aus(n, m);
        if (a.dense) aus = (*a.dense) * us;
        else
            for (Index c = 0; c < m; ++c) aus.col(c) = a.apply(us.col(c));
        DenseMatrix inner = us.adjoint() * aus;
        inner = 0.5 * (inner + inner.adjoint()).eval();
        Eigen::LLT<DenseMatrix> llt(inner);
        if (llt.info() != Eigen::Success) throw NotPositiveDefinite("pinched preconditioner block is not positive definite");
        impl->blocks.push_back(block);
        impl->factors.push_back(std::move(llt));
    }
    Preconditioner p;
    p.label_ = "pinched(" + alg.label() + "," + std::to_string(partition.count()) + ")";
    p.order_ = n;
    impl->alg = std::move(alg);
    p.impl_ = std::move(impl);
    return p;
}

ComplexVector Preconditioner::solve(const ComplexVector& r) const
{
    if (r.size() != order_) throw DimensionMismatch("Preconditioner::solve: vector length does not match");
    if (!impl_) return r;
    ComplexVector y = impl_->alg->to_spectral(r);
    if (impl_->factors.empty()) {
        y = y.cwiseProduct(impl_->inverse_lambda);
    } else {
        for (std::size_t b = 0; b < impl_->blocks.size(); ++b) {
            const auto& block = impl_->blocks[b];
            ComplexVector part(static_cast<Index>(block.size()));
            for (std::size_t i = 0; i < block.size(); ++i) part(static_cast<Index>(i)) = y(block[i]);
            part = impl_->factors[b].solve(part);
            for (std::size_t i = 0; i < block.size(); ++i) y(block[i]) = part(static_cast<Index>(i));
        }
    }
    return impl_->alg->from_spectral(y);
}

Preconditioner make_preconditioner(PreconditionerKind kind, AlgebraKind algebra, const LinearOperator& a,
                                   const PcgOptions& opt)
{
    if (kind == PreconditionerKind::none) return Preconditioner::identity(a.order);
    TransformAlgebra alg = algebra_for(algebra, a.order, opt.seed);
    if (kind == PreconditionerKind::algebra_projection) {
        const ComplexVector lambda = operator_algebra_eigenvalues(alg, a);
        return Preconditioner::diagonal(std::move(alg), lambda);
    }
    return Preconditioner::pinched(std::move(alg), PinchingPartition::contiguous(a.order, opt.pinch_block), a);
}

SolveTrace pcg(const LinearOperator& a, const ComplexVector& b, const Preconditioner& m, const PcgOptions& opt)
{
    const auto start = Clock::now();
    const Index n = a.order;
    if (b.size() != n || m.order() != n) throw DimensionMismatch("pcg: operator, right-hand side and preconditioner differ in order");
    if (!(opt.tolerance > 0.0)) throw DimensionMismatch("pcg: tolerance must be positive");
    const Index cap = opt.max_iterations >= 0 ? opt.max_iterations : std::max<Index>(10 * n, 100);

    SolveTrace trace;
    trace.order = n;
    trace.preconditioner = m.label();
    trace.solution = ComplexVector::Zero(n);
    ComplexVector& x = trace.solution;

    const double bnorm = b.norm();
    trace.residual_history.push_back(bnorm > 0.0 ? 1.0 : 0.0);
    trace.energy_history.push_back(0.0);
    if (bnorm == 0.0) {
        trace.converged = true;
        trace.wall_time = seconds_since(start);
        return trace;
    }

    ComplexVector r = b;
    ComplexVector z = m.solve(r);
    double rz = r.dot(z).real();
    if (!(rz > 0.0)) throw NotPositiveDefinite("pcg: preconditioner is not positive definite");
    ComplexVector p = z;

    while (trace.iterations < cap) {
        const ComplexVector q = a.apply(p);
        const double curvature = p.dot(q).real();
        if (!(curvature > 0.0)) throw NotPositiveDefinite("pcg: nonpositive curvature p^* A p");
        const double alpha = rz / curvature;
        x += alpha * p;
        r -= alpha * q;
        ++trace.iterations;

        const double rel = r.norm() / bnorm;
        trace.residual_history.push_back(rel);
        // With r = b - A x: 1/2 x^* A x - Re(b^* x) = -1/2 Re((b + r)^* x).
        const double energy = -0.5 * (b + r).dot(x).real();
        const double previous = trace.energy_history.back();
        if (energy > previous + 1e-10 * std::abs(previous)) trace.energy_monotone = false;
        trace.energy_history.push_back(energy);

        if (rel <= opt.tolerance) {
            trace.converged = true;
            break;
        }
        z = m.solve(r);
        const double rz_next = r.dot(z).real();
        if (!(rz_next > 0.0)) throw NotPositiveDefinite("pcg: preconditioner is not positive definite");
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }

    trace.true_residual = (b - a.apply(x)).norm() / bnorm;
    trace.wall_time = seconds_since(start);
    if (!trace.converged && opt.throw_on_max_iterations)
        throw MaxIterations("pcg: no convergence to " + format_double(opt.tolerance) + " within " + std::to_string(cap) +
                            " iterations (residual " + format_double(trace.final_residual()) + ")");
    return trace;
}

SolveTrace pcg(const LinearOperator& a, const ComplexVector& b, PreconditionerKind kind, AlgebraKind algebra,
               const PcgOptions& opt)
{
    const auto start = Clock::now();
    const Preconditioner m = make_preconditioner(kind, algebra, a, opt);
    SolveTrace trace = pcg(a, b, m, opt);
    trace.wall_time = seconds_since(start);
    return trace;
}

void ScalingStudy::write_csv(std::ostream& os, bool timings) const
{
    os << "n,precond,iterations,final_residual,wall_time\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.precond << ',' << r.iterations << ',' << format_double(r.final_residual) << ','
           << (timings ? format_double(r.wall_time) : std::string("na")) << '\n';
}

std::vector<Index> ScalingStudy::iterations(PreconditionerKind kind) const
{
    std::vector<Index> out;
    for (const auto& r : rows)
        if (r.precond == to_string(kind)) out.push_back(r.iterations);
    return out;
}

ScalingStudy scaling_study(const Symbol& f, const std::vector<Index>& ladder, double tol, const ScalingOptions& opt)
{
    if (!f.is_real()) throw NotHermitian("scaling_study: symbol is not real");
    const double lowest = f.range(static_cast<std::size_t>(kSupGridPoints)).first;
    if (!(lowest > 0.0))
        throw NotPositiveDefinite("scaling_study: min f = " + format_double(lowest) + " on the evaluation grid");

    ScalingStudy study;
    study.symbol = f.label();
    const std::size_t kinds = opt.kinds.size();
    study.rows.resize(ladder.size() * kinds);
    PcgOptions popt = opt.pcg;
    popt.tolerance = tol;

    parallel_for(study.rows.size(), [&](std::size_t cell) {
        const Index n = ladder[cell / kinds];
        const PreconditionerKind kind = opt.kinds[cell % kinds];
        ComplexVector b = ComplexVector::Ones(n);
        if (opt.rhs_seed) {
            std::mt19937_64 rng(*opt.rhs_seed);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (Index i = 0; i < n; ++i) b(i) = u(rng);
        }
        const SolveTrace trace = pcg(toeplitz_operator(f, n), b, kind, opt.algebra, popt);
        study.rows[cell] = {n, to_string(kind), trace.iterations, trace.final_residual(), trace.wall_time,
                           trace.energy_monotone};
    });
    return study;
}

} // namespace trigprec
