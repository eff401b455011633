#pragma once

#include <stdexcept>
#include <string>

namespace dyndiv {

/// Raised when a computation would exceed a configured resource budget
/// (digit cap on exact orbit terms, oracle caps, dense-polynomial memory cap).
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// v_p(0) is undefined as a number; callers that may hit a zero term must go
/// through the Valuation sentinel instead.
struct UndefinedValuationError : std::domain_error {
    explicit UndefinedValuationError(const std::string& what) : std::domain_error(what) {}
};

/// x -> x^d is a permutation of Z/pZ only when gcd(d, p-1) = 1.
struct NotAPermutationError : std::invalid_argument {
    explicit NotAPermutationError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace dyndiv
