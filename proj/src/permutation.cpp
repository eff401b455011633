#include "dyndiv/permutation.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "dyndiv/errors.hpp"
#include "dyndiv/modarith.hpp"
#include "dyndiv/primes.hpp"

namespace dyndiv {

std::uint64_t ord(std::uint64_t m, std::uint64_t a) {
    if (m == 0)
        throw std::invalid_argument("ord: modulus must be >= 1");
    if (m == 1)
        return 1;
    a %= m;
    if (std::gcd(a, m) != 1)
        throw std::invalid_argument("ord: a must be a unit mod m");
    // Start from the group order phi(m) and strip prime factors while the
    // power stays 1.
    std::uint64_t t = euler_phi(factor_u64(m));
    for (auto [q, e] : factor_u64(t)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, t / q, m) == 1)
                t /= q;
            else
                break;
        }
    }
    return t;
}

std::uint64_t two_power_order(std::int64_t d, unsigned k) {
    if (d % 2 == 0)
        throw std::invalid_argument("two_power_order: d must be odd");
    if (d < 0)
        throw std::invalid_argument("two_power_order: d must be positive");
    if (d == 1)
        return 1;
    const std::uint64_t u = static_cast<std::uint64_t>(d);
    const unsigned mu = valuation_u64(u - 1, 2);
    const unsigned nu = std::max(mu, valuation_u64(u + 1, 2));
    if (k <= mu)
        return 1;
    if (k <= nu)
        return 2;
    if (k - nu >= 64)
        throw std::invalid_argument("two_power_order: 2^(k-nu) overflows");
    return std::uint64_t(1) << (k - nu);
}

CycleStructure cycle_structure(std::uint64_t p, std::int64_t d) {
    if (p < 2 || !is_prime_u64(p))
        throw std::invalid_argument("cycle_structure: p must be prime");
    if (d < 2)
        throw std::invalid_argument("cycle_structure: d must be >= 2");
    const std::uint64_t d_red = static_cast<std::uint64_t>(d);
    if (p > 2 && std::gcd(d_red, p - 1) != 1)
        throw NotAPermutationError("cycle_structure: gcd(d, p-1) != 1");

    CycleStructure cs{p, d, {}};
    cs.counts[1] = 1; // 0 is fixed
    auto factors = factor_u64(p - 1);
    for (std::uint64_t k : divisors(factors)) {
        std::uint64_t m = k == 1 ? 1 : ord(k, d_red % k);
        std::uint64_t phi_k = k == 1 ? 1 : euler_phi(factor_u64(k));
        cs.counts[m] += phi_k / m;
    }
    return cs;
}

ParityReport parity(std::uint64_t p, std::int64_t d) {
    CycleStructure cs = cycle_structure(p, d);
    std::uint64_t cycles = 0;
    for (auto [len, count] : cs.counts)
        cycles += count;
    ParityReport report{p, d, p - cycles, (p - cycles) % 2 == 0, 0, p - 1, std::nullopt,
                        std::nullopt};
    if (p > 2) {
        report.lambda = valuation_u64(p - 1, 2);
        report.omega = (p - 1) >> report.lambda;
    }
    if (d % 2 != 0 && d > 1) {
        std::uint64_t u = static_cast<std::uint64_t>(d);
        report.mu = valuation_u64(u - 1, 2);
        report.nu = std::max(*report.mu, valuation_u64(u + 1, 2));
    }
    return report;
}

ExclusionVerdict excluded_from_S(std::uint64_t p, std::int64_t d) {
    if (p < 3 || !is_prime_u64(p))
        throw std::invalid_argument("excluded_from_S: p must be an odd prime");
    if (d < 2)
        throw std::invalid_argument("excluded_from_S: d must be >= 2");
    if (std::gcd(static_cast<std::uint64_t>(d), p - 1) != 1)
        return {true, ExclusionVerdict::Reason::NotPermutation};
    if (!parity(p, d).is_even)
        return {true, ExclusionVerdict::Reason::OddParity};
    return {false, ExclusionVerdict::Reason::None};
}

BrutePermutation brute_force_permutation(std::uint64_t p, std::int64_t d, std::uint64_t cap) {
    if (p > cap)
        throw ResourceLimitError("brute_force_permutation: p exceeds the oracle cap");
    if (!is_prime_u64(p))
        throw std::invalid_argument("brute_force_permutation: p must be prime");
    if (d < 2)
        throw std::invalid_argument("brute_force_permutation: d must be >= 2");
    if (std::gcd(static_cast<std::uint64_t>(d), p - 1) != 1)
        throw NotAPermutationError("brute_force_permutation: gcd(d, p-1) != 1");

    BrutePermutation out{{p, d, {}}, 0, true};
    std::vector<bool> seen(p, false);
    std::uint64_t cycles = 0;
    for (std::uint64_t start = 0; start < p; ++start) {
        if (seen[start])
            continue;
        std::uint64_t len = 0, x = start;
        while (!seen[x]) {
            seen[x] = true;
            x = powmod(x, static_cast<std::uint64_t>(d), p);
            ++len;
        }
        ++out.structure.counts[len];
        ++cycles;
    }
    out.transpositions = p - cycles;
    out.is_even = out.transpositions % 2 == 0;
    return out;
}

const char* to_string(ExclusionVerdict::Reason reason) {
    switch (reason) {
    case ExclusionVerdict::Reason::None: return "none";
    case ExclusionVerdict::Reason::NotPermutation: return "not-permutation";
    case ExclusionVerdict::Reason::OddParity: return "odd-parity";
    }
    return "?";
}

} // namespace dyndiv
