#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "dyndiv/map.hpp"

namespace dyndiv {

/// The d residues a_0 = 0, a_1, ..., a_{d-1} mod d^n (a_i = i mod d) with
/// W_d(a_i) = 0 mod d^n; each is the unique Hensel lift of its class mod d.
struct LiftResult {
    std::int64_t d;
    unsigned target_exponent;
    mpz_class modulus; // d^target_exponent
    std::vector<mpz_class> lifts;
};

/// Newton iteration c <- c - W_d(c) / W_d'(c) with doubling precision; the
/// derivative is a unit because W_d'(c) = 1 mod d. Rejects composite d.
LiftResult hensel_lift(std::int64_t d, unsigned n);

/// (d, c) lies in H_n = {(d, c) : n divides W_n}.
bool in_H(std::uint64_t n, const Map& map);

/// Verified symmetry facts of H_n: shifting c by n never changes membership;
/// for odd d neither does negating c; n | c forces membership.
struct SymmetryFacts {
    bool translation;
    std::optional<bool> negation;            // odd d only
    std::optional<bool> divisor_membership;  // only when n | c
    bool all_pass() const {
        return translation && negation.value_or(true) && divisor_membership.value_or(true);
    }
};

SymmetryFacts h_symmetries(std::uint64_t n, const Map& map);

} // namespace dyndiv
