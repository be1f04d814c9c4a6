#pragma once

#include <stdexcept>
#include <string>

namespace trigprec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error { public: using Error::Error; };
class NoConvergence : public Error { public: using Error::Error; };
class Singular : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class InsufficientSamples : public Error { public: using Error::Error; };
class NotUnitary : public Error { public: using Error::Error; };
class BadPartition : public Error { public: using Error::Error; };
class InsufficientLadder : public Error { public: using Error::Error; };
class NotPositiveDefinite : public Error { public: using Error::Error; };
class MaxIterations : public Error { public: using Error::Error; };
class Unsupported : public Error { public: using Error::Error; };

/// A computed quantity contradicts an identity the library relies on.
class InvariantViolation : public Error { public: using Error::Error; };

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace trigprec
