#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dyndiv/map.hpp"
#include "dyndiv/orbit.hpp"

namespace dyndiv {

/// Outcome of an index-divisibility membership test n | W_n. For prime
/// queries, `period_of_zero` records the period of 0 mod p whenever 0 is
/// periodic (membership forces it into {1, p}).
struct MembershipVerdict {
    std::uint64_t n;
    bool member;
    std::optional<std::uint64_t> period_of_zero;
};

MembershipVerdict in_D(const Map& map, std::uint64_t n);
MembershipVerdict in_P(const Map& map, std::uint64_t p);

/// True iff phi acts on Z/pZ as a single p-cycle (0 returns to 0 at step p
/// and not before).
bool in_S(const Map& map, std::uint64_t p);

/// All n <= bound with n | W_n; each index tested independently.
std::vector<std::uint64_t> enumerate_D(const Map& map, std::uint64_t bound, unsigned jobs = 1);

/// All primes p <= bound with p | W_p.
std::vector<std::uint64_t> enumerate_P(const Map& map, std::uint64_t bound, unsigned jobs = 1);

// ---- rigid divisibility -------------------------------------------------

struct RigidityViolation {
    enum class Kind { MultipleDrift, GcdMismatch };
    Kind kind;
    std::uint64_t p;
    std::uint64_t n;
    std::uint64_t other; // the multiple nk, or the partner index m
};

struct RigidityReport {
    std::uint64_t prime_bound = 0;
    std::uint64_t index_bound = 0;
    std::uint64_t checks = 0;
    std::uint64_t zero_terms_skipped = 0;
    std::uint64_t cap_exceeded = 0;
    std::vector<RigidityViolation> violations;

    bool clean() const { return violations.empty(); }
};

/// Verify both rigid-divisibility properties of (W_n) over all primes
/// p <= prime_bound and indices up to index_bound, using modular valuation
/// probes only.
RigidityReport check_rigid_divisibility(const Map& map, std::uint64_t prime_bound,
                                        std::uint64_t index_bound);

// ---- factorization ------------------------------------------------------

struct FactorLimits {
    std::uint64_t trial_bound = 1'000'000;
    std::chrono::milliseconds budget{5000};
    std::uint64_t seed = 0;
};

/// Factorization of a nonzero integer; `cofactor` is 1 when complete, or the
/// unfactored composite remainder when the budget ran out.
struct FactorList {
    mpz_class value;
    std::vector<std::pair<mpz_class, unsigned>> factors;
    mpz_class cofactor{1};

    bool complete() const { return cofactor == 1; }
};

FactorList factor_integer(const mpz_class& value, const FactorLimits& limits = {});

// ---- primitive prime divisors -------------------------------------------

enum class PrimitiveVerdict {
    Found,   // `prime` is a primitive prime divisor of W_n
    None,    // complete factorization, no primitive prime exists
    Unknown, // factorization timed out before a primitive prime was found
};

struct PrimitivePrimeResult {
    PrimitiveVerdict verdict;
    mpz_class prime; // valid when verdict == Found (largest primitive found)
    FactorList factors;
};

PrimitivePrimeResult primitive_prime(const Map& map, std::uint64_t n,
                                     const OrbitLimits& orbit_limits = {},
                                     const FactorLimits& factor_limits = {});

// ---- classification -----------------------------------------------------

enum class DKind {
    FiniteTwoElement, // D = {1, 2}: even d with c = 1, or (2, -2)
    AllIntegers,      // c = 0
    EvenIntegers,     // even d with c = -1 (plus the trivial index 1)
    InfiniteGeneric,
};

struct Classification {
    DKind kind;

    /// For even d the prime sets are exact: P = {2} plus the primes dividing
    /// c, and S = {2} iff c is odd.
    struct EvenSets {
        bool p_all_primes;                  // c = 0: every prime divides c
        std::vector<std::int64_t> p_primes; // otherwise: 2 and the primes | c
        bool s_has_two;
    };
    std::optional<EvenSets> even_sets;
};

Classification classify(const Map& map);
const char* to_string(DKind kind);

} // namespace dyndiv
