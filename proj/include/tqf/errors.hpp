#pragma once

#include <stdexcept>
#include <string>

namespace tqf {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arithmetic left the representable range. Raised instead of wrapping;
// counting identities are exact or not at all.
struct OverflowError : Error {
    explicit OverflowError(const std::string& msg = "integer overflow") : Error(msg) {}
};

struct NotSymmetricError : Error {
    explicit NotSymmetricError(const std::string& msg = "matrix is not symmetric") : Error(msg) {}
};

// Carries the index of the first non-positive leading principal minor.
struct NotPositiveDefiniteError : Error {
    int minor_index;
    explicit NotPositiveDefiniteError(int idx)
        : Error("matrix is not positive definite (leading minor " + std::to_string(idx) +
                " is not positive)"),
          minor_index(idx) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg = "dimension mismatch") : Error(msg) {}
};

// Enumeration node budget exhausted. Never silently truncates.
struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& msg = "enumeration budget exceeded")
        : Error(msg) {}
};

struct NotPrimeError : Error {
    explicit NotPrimeError(long long p)
        : Error("not a prime: " + std::to_string(p)) {}
};

struct OrderViolatedError : Error {
    explicit OrderViolatedError(const std::string& msg = "index order violated") : Error(msg) {}
};

struct NonPositiveError : Error {
    explicit NonPositiveError(const std::string& msg = "argument must be positive") : Error(msg) {}
};

// A closed formula produced a non-integer rational; signals a transcription bug.
struct NonIntegerResultError : Error {
    explicit NonIntegerResultError(const std::string& msg = "formula value is not an integer")
        : Error(msg) {}
};

struct UnsolvableError : Error {
    explicit UnsolvableError(const std::string& msg = "congruence system has no solution")
        : Error(msg) {}
};

struct WrongProgressionError : Error {
    explicit WrongProgressionError(const std::string& msg = "value outside the case's progression")
        : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace tqf
