#pragma once

#include <string>
#include <vector>

#include "ddgeo/rational.hpp"
#include "ddgeo/scalar.hpp"

namespace ddgeo {

// Dense univariate polynomial with exact rational coefficients,
// coeffs[i] multiplying t^i. Trailing zeros are trimmed.
class Poly {
  public:
    Poly() : coeffs_(1, Rational(0)) {}
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly constant(Rational c) { return Poly({std::move(c)}); }
    static Poly identity() { return Poly({Rational(0), Rational(1)}); }  // p(t) = t

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0].is_zero(); }

    template <class S>
    S eval(const S& t) const {
        S acc = scalar_from_rational<S>(coeffs_.back());
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
            acc = acc * t + scalar_from_rational<S>(coeffs_[i]);
        }
        return acc;
    }

    // p(a*u + b), expanded. Used by affine reparameterization.
    Poly compose_affine(const Rational& a, const Rational& b) const {
        std::vector<Rational> acc{Rational(0)};
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            // acc <- acc * (a*u + b) + c_i
            std::vector<Rational> next(acc.size() + 1, Rational(0));
            for (std::size_t j = 0; j < acc.size(); ++j) {
                next[j + 1] += acc[j] * a;
                next[j] += acc[j] * b;
            }
            next[0] += coeffs_[i];
            acc = std::move(next);
        }
        return Poly(std::move(acc));
    }

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

    // Canonical text form, e.g. "t^2 - 1/2*t + 3".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Rational& c = coeffs_[i];
            if (c.is_zero()) continue;
            Rational mag = c.abs();
            if (out.empty()) {
                if (c.is_negative()) out += "-";
            } else {
                out += c.is_negative() ? " - " : " + ";
            }
            const bool unit = mag == Rational(1);
            if (i == 0) {
                out += mag.str();
            } else {
                if (!unit) out += mag.str() + "*";
                out += "t";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(Rational(0));
    }

    std::vector<Rational> coeffs_;
};

}  // namespace ddgeo
