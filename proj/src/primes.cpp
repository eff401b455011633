#include "dyndiv/primes.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "dyndiv/modarith.hpp"

namespace dyndiv {

std::vector<std::uint64_t> sieve_primes(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 2)
        return primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return primes;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sufficient witness set for all 64-bit integers.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t seed) {
    // Brent's cycle variant of Pollard rho; n odd composite, not a prime power guard needed.
    std::uint64_t c = 1 + seed % (n - 1);
    while (true) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t q = 1;
        std::uint64_t ys = y;
        const unsigned m = 128;
        std::uint64_t r = 1;
        auto f = [&](std::uint64_t v) { return addmod(mulmod(v, v, n), c, n); };
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            while (k < r && d == 1) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min<std::uint64_t>(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if (d == n) {
            // backtrack
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n)
            return d;
        ++c; // rare: retry with another polynomial
    }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out, std::uint64_t seed) {
    if (n == 1)
        return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_brent(n, seed);
    factor_rec(d, out, seed + 1);
    factor_rec(n / d, out, seed + 1);
}

} // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("factor_u64: n must be nonzero");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    for (std::uint64_t p = 37; p * p <= n && p < 100000; p += 2) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1)
        factor_rec(n, primes, 0);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1u);
    }
    return out;
}

std::uint64_t euler_phi(const std::vector<std::pair<std::uint64_t, unsigned>>& factors) {
    std::uint64_t phi = 1;
    for (auto [p, e] : factors) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i)
            phi *= p;
    }
    return phi;
}

std::vector<std::uint64_t> divisors(const std::vector<std::pair<std::uint64_t, unsigned>>& factors,
                                    bool sorted) {
    std::vector<std::uint64_t> divs{1};
    for (auto [p, e] : factors) {
        std::size_t base = divs.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                divs.push_back(divs[j] * pk);
        }
    }
    if (sorted)
        std::sort(divs.begin(), divs.end());
    return divs;
}

unsigned valuation_u64(std::uint64_t n, std::uint64_t p) {
    assert(n != 0 && p >= 2);
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

} // namespace dyndiv
