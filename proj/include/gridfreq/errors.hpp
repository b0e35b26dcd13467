#pragma once

#include <stdexcept>
#include <string>

namespace gridfreq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. Carries the 1-based line/column of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line = 0, int column = 0)
        : Error(format(message, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        if (line <= 0) return message;
        std::string s = "line " + std::to_string(line);
        if (column > 0) s += ", column " + std::to_string(column);
        return s + ": " + message;
    }

    int line_ = 0;
    int column_ = 0;
};

/// A structurally well-formed input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical failure (defective matrix, diverging integration, unstable spectrum).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Optimization started from a gain vector that violates the constraints.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

} // namespace gridfreq
