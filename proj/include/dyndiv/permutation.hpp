#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace dyndiv {

/// Multiplicative order of a in (Z/mZ)^*; throws on non-units.
std::uint64_t ord(std::uint64_t m, std::uint64_t a);

/// ord_{2^k}(d) for odd d by the closed three-case formula with
/// mu = v_2(d-1) and nu = v_2(d^2-1) - 1 = max(v_2(d-1), v_2(d+1)).
std::uint64_t two_power_order(std::int64_t d, unsigned k);

/// Cycle-length multiset of x -> x^d on Z/pZ including the fixed point 0.
/// counts[m] cycles of length m; sum of m * counts[m] equals p.
struct CycleStructure {
    std::uint64_t p;
    std::int64_t d;
    std::map<std::uint64_t, std::uint64_t> counts;
};

/// Order-counting formula: for each divisor k of p-1 the phi(k) elements of
/// multiplicative order k sit in cycles of length ord_k(d). Requires
/// gcd(d, p-1) = 1 (else NotAPermutationError).
CycleStructure cycle_structure(std::uint64_t p, std::int64_t d);

struct ParityReport {
    std::uint64_t p;
    std::int64_t d;
    std::uint64_t transpositions; // p - 1 - sum over k | p-1 of N_k
    bool is_even;
    unsigned lambda;     // v_2(p-1)
    std::uint64_t omega; // odd part of p-1
    std::optional<unsigned> mu; // v_2(d-1), odd d only
    std::optional<unsigned> nu; // v_2(d^2-1) - 1, odd d only
};

ParityReport parity(std::uint64_t p, std::int64_t d);

/// Sufficient criteria for p not in S_{d,c} for any c: x^d is not a
/// permutation of Z/pZ, or it is an odd one (a p-cycle is even).
struct ExclusionVerdict {
    enum class Reason { None, NotPermutation, OddParity };
    bool excluded;
    Reason reason;
};

ExclusionVerdict excluded_from_S(std::uint64_t p, std::int64_t d);

/// Oracle: decompose x -> x^d mod p by direct traversal (p capped).
struct BrutePermutation {
    CycleStructure structure;
    std::uint64_t transpositions;
    bool is_even;
};

BrutePermutation brute_force_permutation(std::uint64_t p, std::int64_t d,
                                         std::uint64_t cap = 10'000);

const char* to_string(ExclusionVerdict::Reason reason);

} // namespace dyndiv
