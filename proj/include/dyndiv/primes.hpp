#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace dyndiv {

/// Primes <= bound, by sieve of Eratosthenes.
std::vector<std::uint64_t> sieve_primes(std::uint64_t bound);

/// Deterministic Miller-Rabin for 64-bit n.
bool is_prime_u64(std::uint64_t n);

/// Prime factorization of n >= 1 as (prime, exponent) pairs, ascending.
/// Trial division over small primes, then Pollard-Brent rho.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

/// Euler totient from a prepared factorization.
std::uint64_t euler_phi(const std::vector<std::pair<std::uint64_t, unsigned>>& factors);

/// All divisors of the factored value, unsorted unless `sorted`.
std::vector<std::uint64_t> divisors(const std::vector<std::pair<std::uint64_t, unsigned>>& factors,
                                    bool sorted = true);

/// Largest e with p^e | n (n != 0).
unsigned valuation_u64(std::uint64_t n, std::uint64_t p);

} // namespace dyndiv
