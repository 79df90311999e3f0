#include <catch2/catch_amalgamated.hpp>

#include "ddgeo/circle.hpp"
#include "ddgeo/dual.hpp"
#include "ddgeo/quantize.hpp"
#include "ddgeo/rational.hpp"
#include "ddgeo/rng.hpp"

using namespace ddgeo;

namespace {

Rational random_rational(Rng& rng) {
    const auto num = static_cast<long long>(rng.below(2000001)) - 1000000;
    const auto den = static_cast<long long>(1 + rng.below(1000));
    return Rational(BigInt(num), BigInt(den));
}

// Angle addition (c1*c2 - s1*s2, c1*s2 + s1*c2), the independent oracle for
// the Chebyshev recurrence.
UnitCirclePoint rotate(const UnitCirclePoint& a, const UnitCirclePoint& b) {
    return {a.c * b.c - a.s * b.s, a.c * b.s + a.s * b.c};
}

}  // namespace

TEST_CASE("rational arithmetic is canonical and exact") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) * Rational(3, 7) == Rational(1, 7));
    CHECK(Rational(1, 3) - Rational(1, 3) == Rational(0));
    CHECK((Rational(7, 2) / Rational(7)) == Rational(1, 2));
    CHECK(Rational(-7, 2).floor() == BigInt(-4));
    CHECK(Rational(7, 2).floor() == BigInt(3));
    CHECK(Rational(1, 3) < Rational(2, 5));
    CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidScalar);
}

TEST_CASE("rational literals parse exactly") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("42") == Rational(42));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-1.5") == Rational(-3, 2));
    CHECK(Rational::parse(".5") == Rational(1, 2));
    CHECK(Rational::parse("2.") == Rational(2));
    CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5x"), ParseError);
}

TEST_CASE("from_double is an exact dyadic embedding") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.1).to_double() == 0.1);
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform01() * 100.0 - 50.0;
        CHECK(Rational::from_double(x).to_double() == x);
    }
}

TEST_CASE("quantize_key examples") {
    CHECK(quantize_key(0.0, 9).scaled == 0);
    CHECK(quantize_key(1.0000000004, 9).scaled == 1000000000);
    // round(2.5e-10 * 10^9) = round(0.25) = 0
    CHECK(quantize_key(2.5e-10, 9).scaled == 0);
    CHECK_THROWS_AS(quantize_key(std::numeric_limits<double>::infinity(), 9), InvalidScalar);
    CHECK_THROWS_AS(quantize_key(1.0, 0), InvalidScalar);
    CHECK_THROWS_AS(quantize_key(1.0, 16), InvalidScalar);
}

TEST_CASE("quantize_key is monotone") {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform01() * 20.0 - 10.0;
        const double b = rng.uniform01() * 20.0 - 10.0;
        const double lo = std::min(a, b), hi = std::max(a, b);
        CHECK(quantize_key(lo, 9).scaled <= quantize_key(hi, 9).scaled);
    }
}

TEST_CASE("half-angle points sit on the unit circle exactly") {
    CHECK(half_angle_point(Rational(0)) == UnitCirclePoint{Rational(1), Rational(0)});
    CHECK(half_angle_point(Rational(1)) == UnitCirclePoint{Rational(0), Rational(1)});
    CHECK(half_angle_point(Rational(1, 2)) == UnitCirclePoint{Rational(3, 5), Rational(4, 5)});
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const auto p = half_angle_point(random_rational(rng));
        CHECK(p.c * p.c + p.s * p.s == Rational(1));
    }
}

TEST_CASE("angle multiples by Chebyshev recurrence match repeated addition") {
    const UnitCirclePoint one{Rational(1), Rational(0)};
    CHECK(angle_multiple(one, 7) == one);
    CHECK(angle_multiple(UnitCirclePoint{Rational(3, 5), Rational(4, 5)}, 2) ==
          UnitCirclePoint{Rational(-7, 25), Rational(24, 25)});
    CHECK(angle_multiple(UnitCirclePoint{Rational(0), Rational(1)}, 2) ==
          UnitCirclePoint{Rational(-1), Rational(0)});
    CHECK(angle_multiple(UnitCirclePoint{Rational(3, 5), Rational(4, 5)}, 0) == one);

    Rng rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        const auto p = half_angle_point(random_rational(rng));
        UnitCirclePoint acc = p;
        for (unsigned k = 2; k <= 16; ++k) {
            acc = rotate(acc, p);
            CHECK(angle_multiple(p, k) == acc);
            CHECK(acc.c * acc.c + acc.s * acc.s == Rational(1));
        }
    }
}

TEST_CASE("dual numbers differentiate polynomials exactly") {
    // d/dx (x^3 + 2x) = 3x^2 + 2, checked on the rational backend
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const Rational x = random_rational(rng);
        const auto d = Dual<Rational>::variable(x);
        const auto y = d * d * d + Dual<Rational>(Rational(2)) * d;
        CHECK(y.value == x * x * x + Rational(2) * x);
        CHECK(y.deriv == Rational(3) * x * x + Rational(2));
    }
}

TEST_CASE("dual division follows the quotient rule") {
    const auto x = Dual<Rational>::variable(Rational(1, 3));
    const auto one = Dual<Rational>(Rational(1));
    const auto y = one / (one + x * x);  // d/dx 1/(1+x^2) = -2x/(1+x^2)^2
    const Rational denom = Rational(1) + Rational(1, 9);
    CHECK(y.value == Rational(1) / denom);
    CHECK(y.deriv == -(Rational(2, 3)) / (denom * denom));
}
