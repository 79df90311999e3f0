#pragma once

#include "ddgeo/dual.hpp"
#include "ddgeo/rational.hpp"

namespace ddgeo {

// Curve coefficients are stored as exact rationals; evaluation converts them
// into the active backend scalar (Rational, double, or a Dual over either).
template <class S>
struct ScalarCast;

template <>
struct ScalarCast<Rational> {
    static Rational from(const Rational& r) { return r; }
};

template <>
struct ScalarCast<double> {
    static double from(const Rational& r) { return r.to_double(); }
};

template <class S>
struct ScalarCast<Dual<S>> {
    static Dual<S> from(const Rational& r) { return Dual<S>(ScalarCast<S>::from(r)); }
};

template <class S>
S scalar_from_rational(const Rational& r) {
    return ScalarCast<S>::from(r);
}

// Primal (non-derivative) part of a backend scalar, used for domain checks.
inline const Rational& primal(const Rational& s) { return s; }
inline double primal(double s) { return s; }
template <class S>
auto primal(const Dual<S>& s) {
    return primal(s.value);
}

inline bool exactly_zero(const Rational& s) { return s.is_zero(); }
inline bool exactly_zero(double s) { return s == 0.0; }

inline double to_double_scalar(const Rational& s) { return s.to_double(); }
inline double to_double_scalar(double s) { return s; }

}  // namespace ddgeo
