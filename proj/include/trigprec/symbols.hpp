#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "trigprec/linalg.hpp"

namespace trigprec {

/// A 2pi-periodic function stored as a finite table of Fourier coefficients,
/// f(x) = sum_k a_k e^{ikx}.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::map<int, Complex> coefficients, std::string label = {});

    static Symbol constant(double value, std::string label = {});
    /// amplitude * cos(k x)
    static Symbol cosine(int k, double amplitude = 1.0);
    /// amplitude * sin(k x)
    static Symbol sine(int k, double amplitude = 1.0);

    /// a_k, zero outside the stored support.
    Complex coefficient(int k) const;
    const std::map<int, Complex>& coefficients() const noexcept { return coeffs_; }

    /// Largest |k| with a nonzero coefficient; 0 for the zero symbol.
    int degree() const noexcept { return degree_; }

    /// a_{-k} == conj(a_k) for every k, up to the tolerance.
    bool is_real(double tol = 1e-12) const;

    const std::string& label() const noexcept { return label_; }
    Symbol with_label(std::string label) const;

    Complex operator()(double x) const;

    /// min and max of Re f over a uniform grid on [0, 2pi).
    std::pair<double, double> range(std::size_t points = 4096) const;

private:
    std::map<int, Complex> coeffs_;
    int degree_ = 0;
    std::string label_;
};

Symbol operator+(const Symbol& s, const Symbol& t);
Symbol operator-(const Symbol& s, const Symbol& t);
Symbol operator*(Complex alpha, const Symbol& s);

/// Pointwise product: convolution of coefficient tables.
Symbol product(const Symbol& s, const Symbol& t);

/// Sum_k a_k e^{ikx}.
Complex eval(const Symbol& s, double x);

/// A continuous function given by its values on [0, 2pi).
struct SampledFunction {
    std::function<double(double)> evaluator;
    std::size_t sample_count = 1024;
    std::string label;
};

/// Coefficients |k| <= degree from the DFT of sample_count equispaced samples.
/// Throws InsufficientSamples unless sample_count is a power of two and
/// at least 4 * degree.
Symbol fourier_coefficients(const SampledFunction& g, int degree);

enum class TestSetName { classical, fourier_basic };

/// classical: {1, cos, sin, cos^2, sin^2}; fourier_basic: {1, cos, sin}.
std::vector<Symbol> standard_test_set(TestSetName name);

/// Sum_k g_k^2 of real generators.
Symbol sum_of_squares(const std::vector<Symbol>& generators);

/// Text serialization: one `k re im` line per coefficient, `#` comments.
void write_symbol(std::ostream& os, const Symbol& s);
Symbol read_symbol(std::istream& is, std::string label = {});
Symbol load_symbol_file(const std::string& path);

/// Named symbols: `2+cos`, `2-2cos+delta(0.01)`, `cos`, `sin`, `1`,
/// `cos^2`, `sin^2`, `2+cos+0.5cos2`, `abs_sin(d)`, `sign(d)`.
Symbol preset_symbol(const std::string& name);

/// Resolves `preset:<name>` or `file:<path>`.
Symbol resolve_symbol(const std::string& spec);

} // namespace trigprec
