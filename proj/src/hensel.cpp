#include "dyndiv/hensel.hpp"

#include <stdexcept>

#include "dyndiv/divisibility.hpp"
#include "dyndiv/orbit.hpp"
#include "dyndiv/primes.hpp"

namespace dyndiv {

LiftResult hensel_lift(std::int64_t d, unsigned n) {
    if (d < 2 || !is_prime_u64(static_cast<std::uint64_t>(d)))
        throw std::invalid_argument("hensel_lift: d must be prime");
    if (n < 1)
        throw std::invalid_argument("hensel_lift: n must be >= 1");

    LiftResult result{d, n, {}, {}};
    mpz_ui_pow_ui(result.modulus.get_mpz_t(), static_cast<unsigned long>(d), n);

    for (std::int64_t i = 0; i < d; ++i) {
        mpz_class root(static_cast<long>(i));
        unsigned prec = 1;
        while (prec < n) {
            prec = std::min(2 * prec, n);
            mpz_class m;
            mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(d), prec);
            auto [w, wp] = orbit_with_derivative(d, root, static_cast<std::uint64_t>(d), m);
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), wp.get_mpz_t(), m.get_mpz_t()) == 0)
                throw std::logic_error("hensel_lift: derivative not invertible"); // W_d' = 1 mod d
            root = (root - w * inv) % m;
            if (root < 0)
                root += m;
        }
        auto [w, wp] = orbit_with_derivative(d, root, static_cast<std::uint64_t>(d),
                                             result.modulus);
        if (w != 0)
            throw std::logic_error("hensel_lift: Newton iteration failed to converge");
        result.lifts.push_back(root);
    }
    return result;
}

bool in_H(std::uint64_t n, const Map& map) {
    return in_D(map, n).member;
}

SymmetryFacts h_symmetries(std::uint64_t n, const Map& map) {
    if (n == 0)
        throw std::invalid_argument("h_symmetries: n must be >= 1");
    SymmetryFacts facts{false, std::nullopt, std::nullopt};

    bool base = in_H(n, map);
    facts.translation = base == in_H(n, Map(map.d, map.c + static_cast<std::int64_t>(n)));
    if (map.d % 2 != 0)
        facts.negation = base == in_H(n, Map(map.d, -map.c));
    if (map.c % static_cast<std::int64_t>(n) == 0)
        facts.divisor_membership = base;
    return facts;
}

} // namespace dyndiv
