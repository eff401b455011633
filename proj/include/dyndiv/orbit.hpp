#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dyndiv/map.hpp"

namespace dyndiv {

struct OrbitLimits {
    /// Exact orbit terms grow doubly exponentially; refuse to materialize a
    /// term beyond this many decimal digits.
    std::size_t digit_cap = 1'000'000;
};

/// Exact orbit W_0 .. W_k of 0 under phi, arbitrary precision.
struct BigOrbit {
    Map map;
    std::vector<mpz_class> terms;
};

BigOrbit orbit_exact(const Map& map, std::size_t k, const OrbitLimits& limits = {});

/// Eventually periodic orbit of 0 modulo m: `residues` holds the tail+period
/// distinct residues visited before the first repeat.
struct ModOrbit {
    Map map;
    std::uint64_t modulus;
    std::size_t tail;
    std::size_t period;
    std::vector<std::uint64_t> residues;

    /// W_n mod modulus, recovered from the cycle decomposition.
    std::uint64_t residue_at(std::uint64_t n) const;
};

ModOrbit orbit_mod(const Map& map, std::uint64_t m);

/// W_n mod m in O(min(n, tail+period)) orbit steps (cycle detection cuts the
/// walk short as soon as a residue repeats).
std::uint64_t w_mod(const Map& map, std::uint64_t n, std::uint64_t m);
mpz_class w_mod(const Map& map, std::uint64_t n, const mpz_class& m);

/// True iff the exact integer W_n is zero. Happens only for c = 0, or for
/// even d with c = -1 at even n; every other orbit grows without returning.
bool w_is_exactly_zero(const Map& map, std::uint64_t n);

/// v_p(x) for x != 0; throws UndefinedValuationError on x = 0.
unsigned valuation(const mpz_class& x, const mpz_class& p);

/// Decide v_p(W_n) > threshold by testing W_n mod p^(threshold+1); never
/// materializes W_n. Falls back to big-integer moduli when p^(threshold+1)
/// overflows 64 bits.
bool w_valuation_exceeds(const Map& map, std::uint64_t n, std::uint64_t p, unsigned threshold);

/// v_p(W_n) probed through repeated modular tests (exponential search, then
/// bisection). Returns nullopt if the valuation exceeds `cap`.
std::optional<Valuation> w_valuation(const Map& map, std::uint64_t n, std::uint64_t p,
                                     unsigned cap = 64);

/// (W_n(c) mod m, d/dc W_n(c) mod m) via the forward recurrence
/// W' <- d * W^(d-1) * W' + 1 alongside W <- W^d + c.
std::pair<std::uint64_t, std::uint64_t> orbit_with_derivative(const Map& map, std::uint64_t n,
                                                              std::uint64_t m);

/// Same, but with c and the modulus as big integers (Hensel lifting walks
/// moduli d^n past 64 bits).
std::pair<mpz_class, mpz_class> orbit_with_derivative(std::int64_t d, const mpz_class& c,
                                                      std::uint64_t n, const mpz_class& m);

} // namespace dyndiv
