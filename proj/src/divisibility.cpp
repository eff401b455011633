#include "dyndiv/divisibility.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dyndiv/modarith.hpp"
#include "dyndiv/parallel.hpp"
#include "dyndiv/primes.hpp"

namespace dyndiv {

MembershipVerdict in_D(const Map& map, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("in_D: n must be >= 1");
    return {n, w_mod(map, n, n) == 0, std::nullopt};
}

MembershipVerdict in_P(const Map& map, std::uint64_t p) {
    // Membership reduces to the period of 0 mod p: p | W_p iff 0 is periodic
    // with period 1 or p. O(p) orbit steps instead of the astronomical W_p.
    ModOrbit orbit = orbit_mod(map, p);
    std::optional<std::uint64_t> period;
    if (orbit.tail == 0)
        period = orbit.period;
    bool member = period.has_value() && (*period == 1 || *period == p);
    return {p, member, period};
}

bool in_S(const Map& map, std::uint64_t p) {
    if (p < 2)
        throw std::invalid_argument("in_S: p must be prime");
    // Single p-cycle iff the first return of 0 to itself happens at step p
    // exactly. 0 recurring is the only possible stop before step p, so no
    // visited set is needed.
    const std::uint64_t d = static_cast<std::uint64_t>(map.d);
    const std::uint64_t c = normalize_mod(map.c, p);
    std::uint64_t x = 0;
    for (std::uint64_t step = 1; step <= p; ++step) {
        x = orbit_step(x, d, c, p);
        if (x == 0)
            return step == p;
    }
    return false;
}

std::vector<std::uint64_t> enumerate_D(const Map& map, std::uint64_t bound, unsigned jobs) {
    if (bound < 1)
        throw std::invalid_argument("enumerate_D: bound must be >= 1");
    std::vector<std::uint8_t> member(bound + 1, 0);
    parallel_for(bound, jobs, [&](std::uint64_t i) {
        std::uint64_t n = i + 1;
        member[n] = in_D(map, n).member ? 1 : 0;
    });
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= bound; ++n)
        if (member[n])
            out.push_back(n);
    return out;
}

std::vector<std::uint64_t> enumerate_P(const Map& map, std::uint64_t bound, unsigned jobs) {
    if (bound < 2)
        throw std::invalid_argument("enumerate_P: bound must be >= 2");
    std::vector<std::uint64_t> primes = sieve_primes(bound);
    std::vector<std::uint8_t> member(primes.size(), 0);
    parallel_for(primes.size(), jobs,
                 [&](std::uint64_t i) { member[i] = in_P(map, primes[i]).member ? 1 : 0; });
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (member[i])
            out.push_back(primes[i]);
    return out;
}

RigidityReport check_rigid_divisibility(const Map& map, std::uint64_t prime_bound,
                                        std::uint64_t index_bound) {
    RigidityReport report;
    report.prime_bound = prime_bound;
    report.index_bound = index_bound;

    for (std::uint64_t p : sieve_primes(prime_bound)) {
        // probe v_p(W_n) for every index once
        std::vector<std::optional<Valuation>> vals(index_bound + 1);
        for (std::uint64_t n = 1; n <= index_bound; ++n) {
            vals[n] = w_valuation(map, n, p);
            if (!vals[n])
                ++report.cap_exceeded;
            else if (vals[n]->is_infinite())
                ++report.zero_terms_skipped;
        }
        auto usable = [&](std::uint64_t n) { return vals[n] && !vals[n]->is_infinite(); };

        // property 1: v_p(W_n) > 0 implies v_p(W_nk) = v_p(W_n)
        for (std::uint64_t n = 1; n <= index_bound; ++n) {
            if (!usable(n) || vals[n]->value() == 0)
                continue;
            for (std::uint64_t nk = 2 * n; nk <= index_bound; nk += n) {
                if (!usable(nk))
                    continue;
                ++report.checks;
                if (vals[nk]->value() != vals[n]->value())
                    report.violations.push_back(
                        {RigidityViolation::Kind::MultipleDrift, p, n, nk});
            }
        }

        // property 2: positive valuations at n and m agree with each other and
        // with the one at gcd(n, m)
        for (std::uint64_t n = 1; n <= index_bound; ++n) {
            if (!usable(n) || vals[n]->value() == 0)
                continue;
            for (std::uint64_t m = n + 1; m <= index_bound; ++m) {
                if (!usable(m) || vals[m]->value() == 0)
                    continue;
                std::uint64_t g = std::gcd(n, m);
                if (!usable(g))
                    continue;
                ++report.checks;
                if (vals[n]->value() != vals[m]->value() ||
                    vals[n]->value() != vals[g]->value())
                    report.violations.push_back({RigidityViolation::Kind::GcdMismatch, p, n, m});
            }
        }
    }
    return report;
}

PrimitivePrimeResult primitive_prime(const Map& map, std::uint64_t n,
                                     const OrbitLimits& orbit_limits,
                                     const FactorLimits& factor_limits) {
    if (n == 0)
        throw std::invalid_argument("primitive_prime: n must be >= 1");
    BigOrbit orbit = orbit_exact(map, n, orbit_limits);
    const mpz_class& wn = orbit.terms[n];
    if (wn == 0)
        throw std::invalid_argument("primitive_prime: W_n is zero and has no prime divisors");

    // A zero earlier term is divisible by every prime, so nothing is primitive.
    for (std::uint64_t i = 1; i < n; ++i) {
        if (orbit.terms[i] == 0)
            return {PrimitiveVerdict::None, mpz_class(0),
                    factor_integer(wn, factor_limits)};
    }

    FactorList factors = factor_integer(wn, factor_limits);
    std::optional<mpz_class> best;
    for (const auto& [p, e] : factors.factors) {
        bool primitive = true;
        for (std::uint64_t i = 1; i < n && primitive; ++i)
            if (mpz_divisible_p(orbit.terms[i].get_mpz_t(), p.get_mpz_t()))
                primitive = false;
        if (primitive && (!best || p > *best))
            best = p;
    }
    if (best)
        return {PrimitiveVerdict::Found, *best, std::move(factors)};
    if (!factors.complete())
        return {PrimitiveVerdict::Unknown, mpz_class(0), std::move(factors)};
    return {PrimitiveVerdict::None, mpz_class(0), std::move(factors)};
}

Classification classify(const Map& map) {
    Classification cls{DKind::InfiniteGeneric, std::nullopt};
    const bool even_d = map.d % 2 == 0;

    if (map.c == 0)
        cls.kind = DKind::AllIntegers;
    else if (even_d && map.c == 1)
        cls.kind = DKind::FiniteTwoElement;
    else if (map.d == 2 && map.c == -2)
        cls.kind = DKind::FiniteTwoElement;
    else if (even_d && map.c == -1)
        cls.kind = DKind::EvenIntegers;

    if (even_d) {
        Classification::EvenSets sets{false, {}, map.c % 2 != 0};
        if (map.c == 0) {
            sets.p_all_primes = true;
        } else {
            sets.p_primes.push_back(2);
            std::uint64_t a = map.c < 0 ? -static_cast<std::uint64_t>(map.c)
                                        : static_cast<std::uint64_t>(map.c);
            for (auto [p, e] : factor_u64(a)) {
                if (p != 2)
                    sets.p_primes.push_back(static_cast<std::int64_t>(p));
            }
        }
        cls.even_sets = std::move(sets);
    }
    return cls;
}

const char* to_string(DKind kind) {
    switch (kind) {
    case DKind::FiniteTwoElement: return "FiniteD{1,2}";
    case DKind::AllIntegers: return "AllIntegers";
    case DKind::EvenIntegers: return "EvenIntegers";
    case DKind::InfiniteGeneric: return "InfiniteGeneric";
    }
    return "?";
}

} // namespace dyndiv
