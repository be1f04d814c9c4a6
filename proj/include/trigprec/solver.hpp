#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trigprec/algebras.hpp"
#include "trigprec/symbols.hpp"

namespace trigprec {

enum class PreconditionerKind { none, algebra_projection, pinched };

std::string to_string(PreconditionerKind k);
/// none, algebra_projection (alias: algebra), pinched.
PreconditionerKind parse_preconditioner_kind(const std::string& name);

/// A Hermitian operator applied matrix-free. Dense and Toeplitz operators keep
/// their defining data so preconditioners can be built without extra products.
struct LinearOperator {
    Index order = 0;
    std::function<ComplexVector(const ComplexVector&)> apply;
    std::string label;
    std::shared_ptr<const DenseMatrix> dense;
    std::optional<Symbol> symbol;
};

LinearOperator dense_operator(DenseMatrix a, std::string label = "dense");
/// T_n(f) x through a circulant embedding and the FFT.
LinearOperator toeplitz_operator(const Symbol& f, Index n);

/// z = P^{-1} r for P in (or block-pinched within) an algebra.
class Preconditioner {
public:
    static Preconditioner identity(Index n);
    /// P = U diag(lambda) U^*. Throws NotPositiveDefinite when an eigenvalue is
    /// not above 1e-13 * max |lambda|.
    static Preconditioner diagonal(TransformAlgebra alg, const ComplexVector& lambda);
    /// P = U pinch(U^* A U) U^*, one Cholesky factor per block.
    static Preconditioner pinched(TransformAlgebra alg, const PinchingPartition& partition, const LinearOperator& a);

    ComplexVector solve(const ComplexVector& r) const;
    const std::string& label() const noexcept { return label_; }
    Index order() const noexcept { return order_; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    std::string label_;
    Index order_ = 0;
};

struct PcgOptions {
    double tolerance = 1e-10;
    /// Iteration cap; a negative value means max(10 n, 100).
    Index max_iterations = -1;
    bool throw_on_max_iterations = true;
    /// Block size of the contiguous partition used by the pinched preconditioner.
    Index pinch_block = 2;
    std::uint64_t seed = 42; ///< for the custom algebra
};

/// Builds the preconditioner of the given kind for A in the given algebra.
Preconditioner make_preconditioner(PreconditionerKind kind, AlgebraKind algebra, const LinearOperator& a,
                                   const PcgOptions& opt = {});

struct SolveTrace {
    Index order = 0;
    Index iterations = 0;
    std::vector<double> residual_history; ///< ||r_k|| / ||b||, starting at k = 0
    /// 1/2 x_k^* A x_k - Re(b^* x_k); nonincreasing along an exact CG run.
    std::vector<double> energy_history;
    std::string preconditioner;
    double wall_time = 0.0; ///< seconds
    bool converged = false;
    bool energy_monotone = true;
    double true_residual = 0.0; ///< ||b - A x|| / ||b|| recomputed at the end
    ComplexVector solution;

    double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

/// Preconditioned conjugate gradient from x_0 = 0. Throws NotPositiveDefinite
/// on nonpositive curvature p^* A p or r^* z, MaxIterations at the cap unless
/// disabled in the options.
SolveTrace pcg(const LinearOperator& a, const ComplexVector& b, const Preconditioner& m, const PcgOptions& opt = {});
SolveTrace pcg(const LinearOperator& a, const ComplexVector& b, PreconditionerKind kind, AlgebraKind algebra,
               const PcgOptions& opt = {});

struct ScalingRow {
    Index n = 0;
    std::string precond;
    Index iterations = 0;
    double final_residual = 0.0;
    double wall_time = 0.0;
    bool energy_monotone = true;
};

struct ScalingStudy {
    std::string symbol;
    std::vector<ScalingRow> rows;

    /// Columns n,precond,iterations,final_residual,wall_time. Without timings
    /// the wall_time column holds `na` so repeated runs are byte-identical.
    void write_csv(std::ostream& os, bool timings = false) const;
    /// Iteration counts of one preconditioner along the ladder.
    std::vector<Index> iterations(PreconditionerKind kind) const;
};

struct ScalingOptions {
    std::vector<PreconditionerKind> kinds{PreconditionerKind::none, PreconditionerKind::algebra_projection};
    AlgebraKind algebra = AlgebraKind::Fourier;
    PcgOptions pcg;
    /// Right-hand side: all ones, or seeded uniform entries in [-1, 1].
    std::optional<std::uint64_t> rhs_seed;
};

/// PCG on T_n(f) x = b over the ladder for each preconditioner. Throws
/// NotPositiveDefinite unless min f > 0 on the 4096-point evaluation grid.
ScalingStudy scaling_study(const Symbol& f, const std::vector<Index>& ladder, double tol, const ScalingOptions& opt = {});

} // namespace trigprec
