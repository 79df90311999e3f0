#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "ddgeo/errors.hpp"

namespace ddgeo {

inline constexpr int kDefaultQuantDigits = 9;

// Equality surrogate for floating-point values: two doubles compare equal
// iff they agree after scaling by 10^digits and rounding to an integer.
struct QuantKey {
    std::int64_t scaled = 0;
    int digits = kDefaultQuantDigits;

    friend bool operator==(const QuantKey&, const QuantKey&) = default;
    friend auto operator<=>(const QuantKey& a, const QuantKey& b) {
        if (auto c = a.digits <=> b.digits; c != 0) return c;
        return a.scaled <=> b.scaled;
    }

    std::string str() const { return std::to_string(scaled) + "e-" + std::to_string(digits); }
};

inline QuantKey quantize_key(double value, int digits = kDefaultQuantDigits) {
    if (!std::isfinite(value)) throw InvalidScalar("cannot quantize a non-finite value");
    if (digits < 1 || digits > 15) throw InvalidScalar("quantization digits must be in [1, 15]");
    const double scaled = value * std::pow(10.0, digits);
    if (std::abs(scaled) >= 9.2e18) throw InvalidScalar("value too large for quantization grid");
    return QuantKey{static_cast<std::int64_t>(std::llround(scaled)), digits};
}

}  // namespace ddgeo
