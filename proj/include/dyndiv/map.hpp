#pragma once

#include <cstdint>
#include <stdexcept>

namespace dyndiv {

/// The map phi(x) = x^d + c acting on Z (or Z/mZ after reduction).
struct Map {
    std::int64_t d;
    std::int64_t c;

    Map(std::int64_t d_, std::int64_t c_) : d(d_), c(c_) {
        if (d < 2)
            throw std::invalid_argument("Map: exponent d must be >= 2");
    }
};

/// p-adic valuation as a value-or-infinity, so v_p(0) never masquerades as a
/// number.
class Valuation {
  public:
    static Valuation finite(unsigned v) { return Valuation(false, v); }
    static Valuation infinity() { return Valuation(true, 0); }

    bool is_infinite() const { return infinite_; }
    unsigned value() const {
        if (infinite_)
            throw std::logic_error("Valuation: infinite valuation has no numeric value");
        return value_;
    }
    bool exceeds(unsigned threshold) const { return infinite_ || value_ > threshold; }
    bool positive() const { return infinite_ || value_ > 0; }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

  private:
    Valuation(bool inf, unsigned v) : infinite_(inf), value_(v) {}
    bool infinite_;
    unsigned value_;
};

} // namespace dyndiv
