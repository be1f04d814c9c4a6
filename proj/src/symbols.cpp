#include "trigprec/symbols.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace trigprec {

namespace {

int support_degree(const std::map<int, Complex>& c)
{
    int d = 0;
    for (const auto& [k, v] : c)
        if (v != Complex(0.0)) d = std::max(d, std::abs(k));
    return d;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double parse_double(const std::string& text, const std::string& context)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError("bad number '" + text + "' in " + context, 0);
    }
    if (used != text.size()) throw ParseError("bad number '" + text + "' in " + context, 0);
    return value;
}

/// Extracts the argument of `name(arg)`; empty when the text is not of that form.
std::string call_argument(const std::string& text, const std::string& name)
{
    if (text.rfind(name + "(", 0) != 0 || text.back() != ')') return {};
    return text.substr(name.size() + 1, text.size() - name.size() - 2);
}

} // namespace

Symbol::Symbol(std::map<int, Complex> coefficients, std::string label)
    : coeffs_(std::move(coefficients)), label_(std::move(label))
{
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == Complex(0.0)) it = coeffs_.erase(it);
        else ++it;
    }
    degree_ = support_degree(coeffs_);
}

Symbol Symbol::constant(double value, std::string label)
{
    if (label.empty()) {
        std::ostringstream os;
        os << value;
        label = os.str();
    }
    return Symbol({{0, Complex(value)}}, std::move(label));
}

Symbol Symbol::cosine(int k, double amplitude)
{
    if (k == 0) return constant(amplitude, "const");
    return Symbol({{k, Complex(amplitude / 2)}, {-k, Complex(amplitude / 2)}}, k == 1 ? "cos" : "cos" + std::to_string(k));
}

Symbol Symbol::sine(int k, double amplitude)
{
    if (k == 0) return Symbol({}, "zero");
    // sin(kx) = (e^{ikx} - e^{-ikx}) / 2i
    return Symbol({{k, Complex(0, -amplitude / 2)}, {-k, Complex(0, amplitude / 2)}}, k == 1 ? "sin" : "sin" + std::to_string(k));
}

Complex Symbol::coefficient(int k) const
{
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

bool Symbol::is_real(double tol) const
{
    for (const auto& [k, v] : coeffs_)
        if (std::abs(coefficient(-k) - std::conj(v)) > tol) return false;
    return true;
}

Symbol Symbol::with_label(std::string label) const
{
    Symbol out = *this;
    out.label_ = std::move(label);
    return out;
}

Complex Symbol::operator()(double x) const
{
    Complex sum(0.0);
    for (const auto& [k, v] : coeffs_) sum += v * std::polar(1.0, k * x);
    return sum;
}

std::pair<double, double> Symbol::range(std::size_t points) const
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < points; ++i) {
        const double v = (*this)(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points)).real();
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

Symbol operator+(const Symbol& s, const Symbol& t)
{
    std::map<int, Complex> c = s.coefficients();
    for (const auto& [k, v] : t.coefficients()) c[k] += v;
    return Symbol(std::move(c), s.label() + "+" + t.label());
}

Symbol operator-(const Symbol& s, const Symbol& t)
{
    return s + (Complex(-1.0) * t).with_label("(-" + t.label() + ")");
}

Symbol operator*(Complex alpha, const Symbol& s)
{
    std::map<int, Complex> c;
    for (const auto& [k, v] : s.coefficients()) c[k] = alpha * v;
    return Symbol(std::move(c), s.label());
}

Symbol product(const Symbol& s, const Symbol& t)
{
    std::map<int, Complex> c;
    for (const auto& [j, u] : s.coefficients())
        for (const auto& [k, v] : t.coefficients()) c[j + k] += u * v;
    const std::string label = s.label() == t.label() ? s.label() + "^2" : s.label() + "*" + t.label();
    return Symbol(std::move(c), label);
}

Complex eval(const Symbol& s, double x) { return s(x); }

Symbol fourier_coefficients(const SampledFunction& g, int degree)
{
    const std::size_t n = g.sample_count;
    if (degree < 0) throw InsufficientSamples("fourier_coefficients: negative degree");
    if (!is_power_of_two(n) || n < 4 * static_cast<std::size_t>(degree) || n < 2)
        throw InsufficientSamples("fourier_coefficients: sample_count must be a power of two >= 4*degree");

    std::vector<Complex> samples(n);
    for (std::size_t j = 0; j < n; ++j)
        samples[j] = g.evaluator(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    std::vector<Complex> spectrum;
    Eigen::FFT<double> fft;
    fft.fwd(spectrum, samples);

    std::map<int, Complex> c;
    const auto count = static_cast<long>(n);
    for (int k = -degree; k <= degree; ++k) {
        const long idx = ((k % count) + count) % count;
        c[k] = spectrum[static_cast<std::size_t>(idx)] / static_cast<double>(n);
    }
    return Symbol(std::move(c), g.label);
}

std::vector<Symbol> standard_test_set(TestSetName name)
{
    const Symbol one = Symbol::constant(1.0, "1");
    const Symbol c = Symbol::cosine(1);
    const Symbol s = Symbol::sine(1);
    if (name == TestSetName::fourier_basic) return {one, c, s};
    return {one, c, s, product(c, c), product(s, s)};
}

Symbol sum_of_squares(const std::vector<Symbol>& generators)
{
    std::map<int, Complex> acc;
    for (const auto& g : generators) {
        const Symbol sq = product(g, g);
        for (const auto& [k, v] : sq.coefficients()) acc[k] += v;
    }
    return Symbol(std::move(acc), "sum_sq");
}

void write_symbol(std::ostream& os, const Symbol& s)
{
    os << "# symbol " << s.label() << "\n";
    os << std::setprecision(17);
    for (const auto& [k, v] : s.coefficients()) os << k << ' ' << v.real() << ' ' << v.imag() << '\n';
}

Symbol read_symbol(std::istream& is, std::string label)
{
    std::map<int, Complex> c;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long k = 0;
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> k)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("expected `k re im`", line_no);
        }
        if (!(fields >> re >> im)) throw ParseError("expected `k re im`", line_no);
        std::string extra;
        if (fields >> extra) throw ParseError("trailing field '" + extra + "'", line_no);
        if (c.count(static_cast<int>(k))) throw ParseError("duplicate frequency " + std::to_string(k), line_no);
        c[static_cast<int>(k)] = Complex(re, im);
    }
    return Symbol(std::move(c), std::move(label));
}

Symbol load_symbol_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open symbol file " + path, 0);
    return read_symbol(in, path);
}

Symbol preset_symbol(const std::string& name)
{
    constexpr double pi = std::numbers::pi;
    if (name == "1") return Symbol::constant(1.0, "1");
    if (name == "cos") return Symbol::cosine(1);
    if (name == "sin") return Symbol::sine(1);
    if (name == "cos^2") return product(Symbol::cosine(1), Symbol::cosine(1));
    if (name == "sin^2") return product(Symbol::sine(1), Symbol::sine(1));
    if (name == "2+cos") return (Symbol::constant(2.0) + Symbol::cosine(1)).with_label(name);
    if (name == "2+cos+0.5cos2")
        return (Symbol::constant(2.0) + Symbol::cosine(1) + Symbol::cosine(2, 0.5)).with_label(name);

    if (name.rfind("2-2cos+delta(", 0) == 0 && name.back() == ')') {
        const double delta = parse_double(name.substr(13, name.size() - 14), name);
        return (Symbol::constant(2.0 + delta) + Symbol::cosine(1, -2.0)).with_label(name);
    }
    if (const auto arg = call_argument(name, "abs_sin"); !arg.empty()) {
        // |sin x| = 2/pi - (4/pi) sum_k cos(2kx) / (4k^2 - 1)
        const int degree = static_cast<int>(parse_double(arg, name));
        std::map<int, Complex> c{{0, Complex(2.0 / pi)}};
        for (int k = 2; k <= degree; k += 2) {
            const double m = k / 2;
            const double a = -2.0 / (pi * (4.0 * m * m - 1.0));
            c[k] = a;
            c[-k] = a;
        }
        return Symbol(std::move(c), name);
    }
    if (const auto arg = call_argument(name, "sign"); !arg.empty()) {
        // sign(cos x) = (4/pi) sum_{m odd} (-1)^{(m-1)/2} cos(mx) / m
        const int degree = static_cast<int>(parse_double(arg, name));
        std::map<int, Complex> c;
        for (int m = 1; m <= degree; m += 2) {
            const double a = (((m - 1) / 2) % 2 == 0 ? 2.0 : -2.0) / (pi * m);
            c[m] = a;
            c[-m] = a;
        }
        return Symbol(std::move(c), name);
    }
    throw ParseError("unknown symbol preset '" + name + "'", 0);
}

Symbol resolve_symbol(const std::string& spec)
{
    if (spec.rfind("preset:", 0) == 0) return preset_symbol(spec.substr(7));
    if (spec.rfind("file:", 0) == 0) return load_symbol_file(spec.substr(5));
    throw ParseError("symbol must be preset:<name> or file:<path>, got '" + spec + "'", 0);
}

} // namespace trigprec
