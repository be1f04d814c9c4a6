#include "trigprec/operators.hpp"

#include <cmath>
#include <numbers>

#include "trigprec/format.hpp"
#include "trigprec/korovkin.hpp"
#include "trigprec/toeplitz.hpp"

namespace trigprec {

namespace {

double parse_parameter(const std::string& name, const std::string& prefix)
{
    const std::string arg = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(arg, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != arg.size()) throw ParseError("bad parameter in operator '" + name + "'", 0);
    return value;
}

bool is_call(const std::string& name, const std::string& prefix)
{
    return name.size() > prefix.size() + 2 && name.rfind(prefix + "(", 0) == 0 && name.back() == ')';
}

} // namespace

std::string to_string(DecayClass d)
{
    switch (d) {
    case DecayClass::hilbert_schmidt: return "hilbert_schmidt";
    case DecayClass::compact: return "compact";
    case DecayClass::bounded: return "bounded";
    }
    return "bounded";
}

OperatorSource identity_source()
{
    OperatorSource s;
    s.entry = [](Index j, Index k) { return Complex(j == k ? 1.0 : 0.0); };
    s.decay = DecayClass::bounded;
    s.label = "identity";
    s.self_adjoint = true;
    s.symbol = Symbol::constant(1.0, "1");
    return s;
}

OperatorSource rank1_source(double p)
{
    if (!(p > 0.0 && p < 1.0)) throw ParseError("rank1(p) needs 0 < p < 1", 0);
    OperatorSource s;
    s.entry = [p](Index j, Index k) { return Complex(std::pow(p, static_cast<double>(j + k))); };
    s.decay = DecayClass::hilbert_schmidt;
    s.label = "rank1(" + format_double(p) + ")";
    s.self_adjoint = true;
    const double q = 1.0 / (1.0 - p * p);
    s.hs_norm_sq = q * q;
    return s;
}

OperatorSource hs_decay_source(double p, double c)
{
    if (!(p > 0.5)) throw ParseError("hs_decay(p) needs p > 1/2 to be Hilbert-Schmidt", 0);
    OperatorSource s;
    s.entry = [p, c](Index j, Index k) {
        return Complex(c / std::pow(static_cast<double>((1 + j) * (1 + k)), p));
    };
    s.decay = DecayClass::hilbert_schmidt;
    s.label = "hs_decay(" + format_double(p) + ")";
    s.self_adjoint = true;
    // ||A||_HS^2 = c^2 zeta(2p)^2; summed directly with an integral tail.
    double zeta = 0.0;
    constexpr int terms = 100000;
    for (int m = 1; m <= terms; ++m) zeta += std::pow(static_cast<double>(m), -2.0 * p);
    zeta += std::pow(static_cast<double>(terms) + 0.5, 1.0 - 2.0 * p) / (2.0 * p - 1.0);
    s.hs_norm_sq = c * c * zeta * zeta;
    return s;
}

OperatorSource diag_plus_compact_source()
{
    OperatorSource s;
    s.entry = [](Index j, Index k) {
        const double r = 1.0 / static_cast<double>((1 + j) * (1 + k));
        return Complex((j == k ? 2.0 : 0.0) + r * r);
    };
    s.decay = DecayClass::bounded;
    s.label = "diag_plus_compact";
    s.self_adjoint = true;
    return s;
}

OperatorSource toeplitz_source(const Symbol& f)
{
    OperatorSource s;
    s.entry = [f](Index j, Index k) { return f.coefficient(static_cast<int>(j - k)); };
    s.decay = DecayClass::bounded;
    s.label = "toeplitz:" + f.label();
    s.self_adjoint = f.is_real();
    s.symbol = f;
    return s;
}

OperatorSource operator_source(const std::string& name)
{
    if (name == "identity") return identity_source();
    if (name == "diag_plus_compact") return diag_plus_compact_source();
    if (is_call(name, "rank1")) return rank1_source(parse_parameter(name, "rank1"));
    if (is_call(name, "hs_decay")) return hs_decay_source(parse_parameter(name, "hs_decay"));
    if (name.rfind("toeplitz:", 0) == 0) {
        const std::string rest = name.substr(9);
        if (rest.rfind("preset:", 0) == 0 || rest.rfind("file:", 0) == 0) return toeplitz_source(resolve_symbol(rest));
        return toeplitz_source(load_symbol_file(rest));
    }
    throw ParseError("unknown operator source '" + name + "'", 0);
}

DenseMatrix truncate(const OperatorSource& src, Index n)
{
    if (n < 1) throw DimensionMismatch("truncate: order must be positive");
    if (src.symbol) return toeplitz_section(*src.symbol, n);
    DenseMatrix a(n, n);
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < n; ++j) a(j, k) = src.entry(j, k);
    return a;
}

double border_fraction(const OperatorSource& src, Index n)
{
    const DenseMatrix a = truncate(src, n);
    const double total = frobenius_norm_sq(a);
    if (total == 0.0) return 0.0;
    const double border = a.row(n - 1).squaredNorm() + a.col(n - 1).squaredNorm() - std::norm(a(n - 1, n - 1));
    return border / total;
}

DenseMatrix preconditioner_of(const OperatorSource& src, AlgebraKind kind, Index n, std::uint64_t seed)
{
    if (src.symbol) return toeplitz_and_projection(kind, *src.symbol, n, seed).second;
    return project(algebra_for(kind, n, seed), truncate(src, n));
}

ClusterReport distribution_convergence(const OperatorSource& src, AlgebraKind kind, const std::vector<Index>& ladder,
                                       const std::vector<double>& epsilons, std::uint64_t seed,
                                       const ClassifierConfig& cfg)
{
    if (!src.self_adjoint) throw NotHermitian("distribution_convergence: source '" + src.label + "' is not self-adjoint");
    auto gen = [&](Index n) {
        DenseMatrix a = truncate(src, n);
        DenseMatrix phi = src.symbol ? toeplitz_and_projection(kind, *src.symbol, n, seed).second
                                     : project(algebra_for(kind, n, seed), a);
        // Exact Hermitian symmetry keeps the real fast path for real algebras.
        if (has_zero_imaginary_part(a) && kind != AlgebraKind::Fourier && kind != AlgebraKind::CustomVandermonde)
            phi = phi.real().cast<Complex>();
        return std::make_pair(std::move(a), std::move(phi));
    };
    return analyze_cluster(gen, ladder, epsilons, ClusterMode::difference, cfg, src.label);
}

} // namespace trigprec
