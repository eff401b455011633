#include <algorithm>
#include <stdexcept>

#include "dyndiv/divisibility.hpp"
#include "dyndiv/primes.hpp"

namespace dyndiv {

namespace {

using Clock = std::chrono::steady_clock;

// Pollard rho (Brent) on mpz with a deadline; returns a nontrivial factor of n
// or nullopt when the deadline passes.
std::optional<mpz_class> rho_brent(const mpz_class& n, gmp_randclass& rng,
                                   Clock::time_point deadline) {
    while (Clock::now() < deadline) {
        mpz_class y = rng.get_z_range(n - 3) + 2;
        mpz_class c = rng.get_z_range(n - 1) + 1;
        mpz_class x, ys, q(1), g(1);
        const unsigned m = 128;
        std::uint64_t r = 1;
        auto f = [&](mpz_class& v) { v = (v * v + c) % n; };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t chunk = std::min<std::uint64_t>(m, r - k);
                for (std::uint64_t i = 0; i < chunk; ++i) {
                    f(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
                if (Clock::now() >= deadline)
                    return std::nullopt;
            }
            r <<= 1;
        }
        if (g == n) {
            do {
                f(ys);
                g = gcd(mpz_class(abs(x - ys)), n);
            } while (g == 1 && Clock::now() < deadline);
        }
        if (g != n && g != 1)
            return g;
        // cycle degenerated; retry with fresh parameters
    }
    return std::nullopt;
}

// Splits n (no factors below the trial bound) into primes, appending to out;
// returns false if the deadline passed with a composite left in `rest`.
bool split(mpz_class n, std::vector<mpz_class>& out, gmp_randclass& rng,
           Clock::time_point deadline, mpz_class& rest) {
    if (n == 1)
        return true;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32) != 0) {
        out.push_back(n);
        return true;
    }
    // perfect-power shortcut keeps rho off squares
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r = sqrt(n);
        return split(r, out, rng, deadline, rest) && split(r, out, rng, deadline, rest);
    }
    auto g = rho_brent(n, rng, deadline);
    if (!g) {
        rest *= n;
        return false;
    }
    bool ok = split(*g, out, rng, deadline, rest);
    ok &= split(n / *g, out, rng, deadline, rest);
    return ok;
}

} // namespace

FactorList factor_integer(const mpz_class& value, const FactorLimits& limits) {
    if (value == 0)
        throw std::invalid_argument("factor_integer: value must be nonzero");
    FactorList result;
    result.value = value;
    mpz_class n = abs(value);
    std::vector<mpz_class> primes;

    static const std::vector<std::uint64_t> small_primes = sieve_primes(1'000'000);
    for (std::uint64_t p : small_primes) {
        if (p > limits.trial_bound || n == 1)
            break;
        if (mpz_cmp_ui(n.get_mpz_t(), 1) > 0 && mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) {
            primes.push_back(n); // remainder below p^2 with no factor < p is prime
            n = 1;
            break;
        }
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
            primes.emplace_back(p);
        }
    }

    if (n != 1) {
        gmp_randclass rng(gmp_randinit_mt);
        rng.seed(static_cast<unsigned long>(limits.seed));
        mpz_class rest(1);
        split(n, primes, rng, Clock::now() + limits.budget, rest);
        result.cofactor = rest;
    }

    std::sort(primes.begin(), primes.end());
    for (const mpz_class& p : primes) {
        if (!result.factors.empty() && result.factors.back().first == p)
            ++result.factors.back().second;
        else
            result.factors.emplace_back(p, 1u);
    }
    return result;
}

} // namespace dyndiv
