#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "ddgeo/errors.hpp"

namespace ddgeo {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Always stored canonically reduced with a positive
// denominator, so equal values have identical representations and equality
// is a pair of integer comparisons.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}                // NOLINT(google-explicit-constructor)
    Rational(long long n) : num_(n), den_(1) {}          // NOLINT(google-explicit-constructor)
    Rational(const BigInt& n) : num_(n), den_(1) {}      // NOLINT(google-explicit-constructor)
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_, already_reduced_tag{}); }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw InvalidScalar("rational division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Largest integer <= value.
    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    double to_double() const {
        return static_cast<double>(boost::multiprecision::cpp_rational(num_, den_));
    }

    // Exact conversion: every finite double is a dyadic rational.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw InvalidScalar("non-finite value has no rational form");
        if (x == 0.0) return Rational(0);
        int exp = 0;
        double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [1/2, 1)
        // 53 doublings make the mantissa integral.
        auto m = static_cast<long long>(std::ldexp(mant, 53));
        exp -= 53;
        BigInt num(m), den(1);
        if (exp >= 0) {
            num <<= exp;
        } else {
            den <<= -exp;
        }
        return Rational(std::move(num), std::move(den));
    }

    // Accepts `p/q` (q > 0 after sign normalization), plain integers, and
    // decimal literals (parsed exactly as p/10^k). Returns the number of
    // bytes consumed through `consumed`.
    static Rational parse(std::string_view text, std::size_t* consumed = nullptr) {
        std::size_t pos = 0;
        auto fail = [&](const char* what) -> ParseError { return ParseError(pos, what); };
        bool negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            negative = text[pos] == '-';
            ++pos;
        }
        auto read_digits = [&](BigInt& out) -> std::size_t {
            std::size_t count = 0;
            out = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                out = out * 10 + (text[pos] - '0');
                ++pos;
                ++count;
            }
            return count;
        };
        BigInt intpart;
        std::size_t ndigits = read_digits(intpart);
        bool have_int = ndigits > 0;
        BigInt num = intpart;
        BigInt den = 1;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            BigInt frac;
            std::size_t fdigits = read_digits(frac);
            if (!have_int && fdigits == 0) throw fail("digits");
            for (std::size_t i = 0; i < fdigits; ++i) den *= 10;
            num = intpart * den + frac;
        } else if (pos < text.size() && text[pos] == '/') {
            if (!have_int) throw fail("integer numerator");
            ++pos;
            BigInt q;
            if (read_digits(q) == 0) throw fail("integer denominator");
            if (q == 0) throw fail("nonzero denominator");
            den = q;
        } else if (!have_int) {
            throw fail("number");
        }
        if (negative) num = -num;
        if (consumed != nullptr) {
            *consumed = pos;
        } else if (pos != text.size()) {
            throw ParseError(pos, "end of number");
        }
        return Rational(std::move(num), std::move(den));
    }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    struct already_reduced_tag {};
    Rational(BigInt n, BigInt d, already_reduced_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void reduce() {
        if (den_ == 0) throw InvalidScalar("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

inline Rational pow_int(const Rational& base, unsigned exponent) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exponent;
    while (e != 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

}  // namespace ddgeo
