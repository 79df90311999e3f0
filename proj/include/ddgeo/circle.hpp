#pragma once

#include "ddgeo/rational.hpp"
#include "ddgeo/scalar.hpp"

namespace ddgeo {

// Point (cos t, sin t) on the unit circle in whatever scalar backend is
// active. On the rational backend c^2 + s^2 = 1 holds exactly.
template <class S>
struct CirclePoint {
    S c{};
    S s{};

    friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

using UnitCirclePoint = CirclePoint<Rational>;

// Half-angle parameterization t = tan(theta/2): maps any scalar to a point on
// the unit circle, rationally when S is the exact backend.
template <class S>
CirclePoint<S> half_angle_point(const S& t) {
    const S one = scalar_from_rational<S>(Rational(1));
    const S two = scalar_from_rational<S>(Rational(2));
    const S t2 = t * t;
    const S denom = one + t2;
    return CirclePoint<S>{(one - t2) / denom, two * t / denom};
}

// (cos k*theta, sin k*theta) from (cos theta, sin theta) via the Chebyshev
// recurrence x_k = 2c*x_{k-1} - x_{k-2}. k = 0 gives (1, 0).
template <class S>
CirclePoint<S> angle_multiple(const CirclePoint<S>& p, unsigned k) {
    const S one = scalar_from_rational<S>(Rational(1));
    const S zero = scalar_from_rational<S>(Rational(0));
    if (k == 0) return CirclePoint<S>{one, zero};
    if (k == 1) return p;
    const S two_c = p.c + p.c;
    S cos_prev = one, cos_cur = p.c;
    S sin_prev = zero, sin_cur = p.s;
    for (unsigned i = 2; i <= k; ++i) {
        S cos_next = two_c * cos_cur - cos_prev;
        S sin_next = two_c * sin_cur - sin_prev;
        cos_prev = std::move(cos_cur);
        cos_cur = std::move(cos_next);
        sin_prev = std::move(sin_cur);
        sin_cur = std::move(sin_next);
    }
    return CirclePoint<S>{cos_cur, sin_cur};
}

}  // namespace ddgeo
