#pragma once

#include <stdexcept>
#include <string>

namespace ihs {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or non-finite input (bad dimensions, NaN entries, nu <= 0, ...).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// A parameter lies outside the region where the closed-form bounds are
/// proven. Carries a human-readable warning; callers may elect to proceed
/// anyway through the permissive overloads.
class OutOfValidityRange : public Error {
public:
    explicit OutOfValidityRange(const std::string& what) : Error(what) {}
};

/// Requested SRHT embedding dimension exceeds the padded row count. Callers
/// that grow the sketch geometrically should cap growth instead of retrying.
class SketchTooLarge : public Error {
public:
    explicit SketchTooLarge(const std::string& what) : Error(what) {}
};

/// A quantity that is nonnegative by construction came out significantly
/// negative; the cached factorization is presumed corrupted.
class NumericalBreakdown : public Error {
public:
    explicit NumericalBreakdown(const std::string& what) : Error(what) {}
};

/// Text-format parse failure; remembers the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Rows of a parsed dataset disagree on width.
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(what) {}
};

} // namespace ihs
