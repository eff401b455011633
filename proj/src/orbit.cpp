#include "dyndiv/orbit.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "dyndiv/errors.hpp"
#include "dyndiv/modarith.hpp"

namespace dyndiv {

BigOrbit orbit_exact(const Map& map, std::size_t k, const OrbitLimits& limits) {
    BigOrbit orbit{map, {}};
    orbit.terms.reserve(k + 1);
    orbit.terms.emplace_back(0);
    mpz_class c(static_cast<long>(map.c));
    for (std::size_t i = 0; i < k; ++i) {
        const mpz_class& w = orbit.terms.back();
        // Pre-check: the next term has roughly d times the digits of this one.
        // |w| <= 1 powers to something tiny no matter how large d is.
        std::size_t digits = mpz_sizeinbase(w.get_mpz_t(), 10);
        if (mpz_cmpabs_ui(w.get_mpz_t(), 1) > 0 &&
            digits > limits.digit_cap / static_cast<std::size_t>(map.d))
            throw ResourceLimitError("orbit_exact: term W_" + std::to_string(i + 1) +
                                     " would exceed the digit cap of " +
                                     std::to_string(limits.digit_cap));
        mpz_class next;
        mpz_pow_ui(next.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(map.d));
        next += c;
        if (mpz_sizeinbase(next.get_mpz_t(), 10) > limits.digit_cap)
            throw ResourceLimitError("orbit_exact: term W_" + std::to_string(i + 1) +
                                     " exceeds the digit cap");
        orbit.terms.push_back(std::move(next));
    }
    return orbit;
}

std::uint64_t ModOrbit::residue_at(std::uint64_t n) const {
    if (n < residues.size())
        return residues[static_cast<std::size_t>(n)];
    return residues[tail + static_cast<std::size_t>((n - tail) % period)];
}

ModOrbit orbit_mod(const Map& map, std::uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("orbit_mod: modulus must be >= 1");
    ModOrbit orbit{map, m, 0, 1, {}};
    if (m == 1) {
        orbit.residues = {0};
        return orbit;
    }
    const std::uint64_t d = static_cast<std::uint64_t>(map.d);
    const std::uint64_t c = normalize_mod(map.c, m);

    // One sweep with a visited-position table: exact tail and period in
    // tail+period steps, O(m) memory. Dense table for small moduli, hash map
    // beyond that.
    constexpr std::uint64_t kDenseCap = std::uint64_t(1) << 24;
    std::uint64_t x = 0;
    if (m <= kDenseCap) {
        constexpr std::uint32_t kUnseen = ~std::uint32_t(0);
        std::vector<std::uint32_t> pos(static_cast<std::size_t>(m), kUnseen);
        while (pos[static_cast<std::size_t>(x)] == kUnseen) {
            pos[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(orbit.residues.size());
            orbit.residues.push_back(x);
            x = orbit_step(x, d, c, m);
        }
        orbit.tail = pos[static_cast<std::size_t>(x)];
    } else {
        std::unordered_map<std::uint64_t, std::uint64_t> pos;
        auto it = pos.find(x);
        while (it == pos.end()) {
            pos.emplace(x, orbit.residues.size());
            orbit.residues.push_back(x);
            x = orbit_step(x, d, c, m);
            it = pos.find(x);
        }
        orbit.tail = static_cast<std::size_t>(it->second);
    }
    orbit.period = orbit.residues.size() - orbit.tail;
    return orbit;
}

std::uint64_t w_mod(const Map& map, std::uint64_t n, std::uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("w_mod: modulus must be >= 1");
    if (m == 1)
        return 0;
    const std::uint64_t d = static_cast<std::uint64_t>(map.d);
    const std::uint64_t c = normalize_mod(map.c, m);
    std::uint64_t x = 0;
    std::vector<std::uint64_t> seq;
    std::unordered_map<std::uint64_t, std::uint64_t> pos;
    pos.reserve(64);
    for (std::uint64_t step = 0;; ++step) {
        if (step == n)
            return x;
        auto [it, fresh] = pos.emplace(x, step);
        if (!fresh) {
            std::uint64_t tail = it->second;
            std::uint64_t period = step - tail;
            return seq[static_cast<std::size_t>(tail + (n - tail) % period)];
        }
        seq.push_back(x);
        x = orbit_step(x, d, c, m);
    }
}

mpz_class w_mod(const Map& map, std::uint64_t n, const mpz_class& m) {
    if (m < 1)
        throw std::invalid_argument("w_mod: modulus must be >= 1");
    if (m == 1)
        return 0;
    mpz_class c = mpz_class(static_cast<long>(map.c)) % m;
    if (c < 0)
        c += m;
    mpz_class x = 0;
    std::vector<mpz_class> seq;
    std::map<mpz_class, std::uint64_t> pos;
    for (std::uint64_t step = 0;; ++step) {
        if (step == n)
            return x;
        auto [it, fresh] = pos.emplace(x, step);
        if (!fresh) {
            std::uint64_t tail = it->second;
            std::uint64_t period = step - tail;
            return seq[static_cast<std::size_t>(tail + (n - tail) % period)];
        }
        seq.push_back(x);
        mpz_class next;
        mpz_powm_ui(next.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(map.d),
                    m.get_mpz_t());
        next += c;
        if (next >= m)
            next -= m;
        x = std::move(next);
    }
}

bool w_is_exactly_zero(const Map& map, std::uint64_t n) {
    if (n == 0)
        return true;
    if (map.c == 0)
        return true;
    // The only integer orbit of 0 that revisits 0 is 0, -1, 0, -1, ... (even d,
    // c = -1); everything else escapes monotonically.
    return map.d % 2 == 0 && map.c == -1 && n % 2 == 0;
}

unsigned valuation(const mpz_class& x, const mpz_class& p) {
    if (x == 0)
        throw UndefinedValuationError("valuation: v_p(0) is infinite, not a number");
    mpz_class r = abs(x);
    unsigned e = 0;
    while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

bool w_valuation_exceeds(const Map& map, std::uint64_t n, std::uint64_t p, unsigned threshold) {
    if (n == 0)
        throw std::invalid_argument("w_valuation_exceeds: n must be >= 1");
    // Test W_n == 0 mod p^(threshold+1); stay in 64 bits while the modulus fits.
    unsigned __int128 mod128 = 1;
    bool fits = true;
    for (unsigned i = 0; i <= threshold; ++i) {
        mod128 *= p;
        if (mod128 > ~std::uint64_t(0)) {
            fits = false;
            break;
        }
    }
    if (fits)
        return w_mod(map, n, static_cast<std::uint64_t>(mod128)) == 0;
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(threshold) + 1);
    return w_mod(map, n, big) == 0;
}

std::optional<Valuation> w_valuation(const Map& map, std::uint64_t n, std::uint64_t p,
                                     unsigned cap) {
    if (w_is_exactly_zero(map, n))
        return Valuation::infinity();
    if (!w_valuation_exceeds(map, n, p, 0))
        return Valuation::finite(0);
    if (w_valuation_exceeds(map, n, p, cap))
        return std::nullopt;
    // v = smallest t with !exceeds(t); exceeds(0) held, so v in [1, cap].
    unsigned lo = 0, hi = 1; // invariant: exceeds(lo), !exceeds(hi) after the loop
    while (w_valuation_exceeds(map, n, p, hi)) {
        lo = hi;
        hi = std::min(cap, hi * 2);
    }
    while (hi - lo > 1) {
        unsigned mid = lo + (hi - lo) / 2;
        if (w_valuation_exceeds(map, n, p, mid))
            lo = mid;
        else
            hi = mid;
    }
    return Valuation::finite(hi);
}

std::pair<std::uint64_t, std::uint64_t> orbit_with_derivative(const Map& map, std::uint64_t n,
                                                              std::uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("orbit_with_derivative: modulus must be >= 1");
    if (m == 1)
        return {0, 0};
    const std::uint64_t d = static_cast<std::uint64_t>(map.d);
    const std::uint64_t d_mod = d % m;
    const std::uint64_t c = normalize_mod(map.c, m);
    std::uint64_t w = 0, wp = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t w_pow = powmod(w, d - 1, m);
        wp = addmod(mulmod(mulmod(d_mod, w_pow, m), wp, m), 1, m);
        w = addmod(mulmod(w_pow, w, m), c, m);
    }
    return {w, wp};
}

std::pair<mpz_class, mpz_class> orbit_with_derivative(std::int64_t d, const mpz_class& c,
                                                      std::uint64_t n, const mpz_class& m) {
    if (d < 2)
        throw std::invalid_argument("orbit_with_derivative: d must be >= 2");
    if (m < 1)
        throw std::invalid_argument("orbit_with_derivative: modulus must be >= 1");
    if (m == 1)
        return {mpz_class(0), mpz_class(0)};
    mpz_class c_mod = c % m;
    if (c_mod < 0)
        c_mod += m;
    mpz_class w = 0, wp = 0, w_pow, t;
    for (std::uint64_t i = 0; i < n; ++i) {
        mpz_powm_ui(w_pow.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(d - 1),
                    m.get_mpz_t());
        t = w_pow * wp % m * d % m;
        wp = (t + 1) % m;
        w = (w_pow * w + c_mod) % m;
    }
    return {w, wp};
}

} // namespace dyndiv
