#pragma once

#include <cstdint>

namespace dyndiv {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a %= m;
    b %= m;
    std::uint64_t s = a + b; // a, b < m <= 2^63 would be safe; guard the general case
    if (s < a || s >= m)
        s -= m;
    return s;
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1)
        return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Reduce a signed value into [0, m).
inline std::uint64_t normalize_mod(std::int64_t x, std::uint64_t m) {
    std::int64_t r = x % static_cast<std::int64_t>(m);
    if (r < 0)
        r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
}

/// One orbit step x -> x^d + c (c already reduced into [0, m)).
inline std::uint64_t orbit_step(std::uint64_t x, std::uint64_t d, std::uint64_t c_mod,
                                std::uint64_t m) {
    return addmod(powmod(x, d, m), c_mod, m);
}

} // namespace dyndiv
