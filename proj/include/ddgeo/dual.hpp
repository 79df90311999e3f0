#pragma once

#include <utility>

namespace ddgeo {

// Forward-mode dual number a + b*eps with eps^2 = 0. Running the plain
// evaluation code over Dual<S> yields the exact derivative alongside the
// value, so there is a single code path for values and partials.
template <class S>
struct Dual {
    S value{};
    S deriv{};

    Dual() = default;
    Dual(S v) : value(std::move(v)), deriv(S(0)) {}  // NOLINT(google-explicit-constructor)
    Dual(S v, S d) : value(std::move(v)), deriv(std::move(d)) {}

    static Dual variable(S v) { return Dual(std::move(v), S(1)); }

    Dual operator-() const { return Dual(-value, -deriv); }

    friend Dual operator+(const Dual& a, const Dual& b) {
        return Dual(a.value + b.value, a.deriv + b.deriv);
    }
    friend Dual operator-(const Dual& a, const Dual& b) {
        return Dual(a.value - b.value, a.deriv - b.deriv);
    }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return Dual(a.value * b.value, a.deriv * b.value + a.value * b.deriv);
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        return Dual(a.value / b.value,
                    (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value));
    }

    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    Dual& operator/=(const Dual& o) { return *this = *this / o; }

    friend bool operator==(const Dual& a, const Dual& b) {
        return a.value == b.value && a.deriv == b.deriv;
    }
};

}  // namespace ddgeo
