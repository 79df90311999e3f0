#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ddgeo/circle.hpp"
#include "ddgeo/dual.hpp"
#include "ddgeo/errors.hpp"
#include "ddgeo/polynomial.hpp"
#include "ddgeo/rational.hpp"
#include "ddgeo/rng.hpp"
#include "ddgeo/scalar.hpp"

namespace ddgeo {

enum class CurveFamily { Line, Polynomial, RationalCircle, Torus };

inline const char* family_name(CurveFamily f) {
    switch (f) {
        case CurveFamily::Line: return "line";
        case CurveFamily::Polynomial: return "poly";
        case CurveFamily::RationalCircle: return "circle";
        case CurveFamily::Torus: return "torus";
    }
    return "?";
}

// Open interval with optional bounds; absent bound means unbounded on that
// side. Finite bounds are exclusive throughout.
struct Interval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    template <class P>
    bool contains(const P& t) const {
        if (lo && !(scalar_from_rational<P>(*lo) < t)) return false;
        if (hi && !(t < scalar_from_rational<P>(*hi))) return false;
        return true;
    }

    bool bounded() const { return lo.has_value() && hi.has_value(); }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct LineData {
    std::vector<Rational> base;
    std::vector<Rational> dir;
    friend bool operator==(const LineData&, const LineData&) = default;
};

struct PolyData {
    std::vector<Poly> coords;
    friend bool operator==(const PolyData&, const PolyData&) = default;
};

struct CircleData {
    Rational radius;
    friend bool operator==(const CircleData&, const CircleData&) = default;
};

struct TorusData {
    std::vector<Rational> amplitudes;
    std::vector<unsigned> freqs;  // positive, gcd-normalized on construction
    friend bool operator==(const TorusData&, const TorusData&) = default;
};

// A parameterized curve family. The circle and torus families keep an affine
// pre-map (t -> a*t + b) so they stay closed under reparameterization; the
// line and polynomial families absorb reparams into their coefficients.
class ParamCurve {
  public:
    static ParamCurve line(std::vector<Rational> base, std::vector<Rational> dir) {
        if (base.size() != dir.size() || base.empty())
            throw InvalidScalar("line base and direction must share a positive dimension");
        bool all_zero = true;
        for (const auto& d : dir) all_zero = all_zero && d.is_zero();
        if (all_zero) throw InvalidScalar("line direction must be nonzero");
        ParamCurve c;
        c.family_ = CurveFamily::Line;
        c.data_ = LineData{std::move(base), std::move(dir)};
        return c;
    }

    static ParamCurve polynomial(std::vector<Poly> coords) {
        if (coords.empty()) throw InvalidScalar("polynomial curve needs at least one coordinate");
        ParamCurve c;
        c.family_ = CurveFamily::Polynomial;
        c.data_ = PolyData{std::move(coords)};
        return c;
    }

    static ParamCurve rational_circle(Rational radius) {
        if (radius.is_zero() || radius.is_negative())
            throw InvalidScalar("circle radius must be positive");
        ParamCurve c;
        c.family_ = CurveFamily::RationalCircle;
        c.data_ = CircleData{std::move(radius)};
        c.interval_ = Interval{Rational(-1), Rational(1)};
        return c;
    }

    static ParamCurve torus(std::vector<Rational> amplitudes, std::vector<unsigned> freqs) {
        if (amplitudes.empty() || amplitudes.size() != freqs.size())
            throw InvalidScalar("torus amplitude and frequency lists must match and be nonempty");
        for (const auto& a : amplitudes)
            if (a.is_zero()) throw InvalidScalar("torus amplitudes must be nonzero");
        unsigned g = 0;
        for (unsigned f : freqs) {
            if (f == 0) throw InvalidScalar("torus frequencies must be positive");
            g = std::gcd(g, f);
        }
        for (unsigned& f : freqs) f /= g;
        ParamCurve c;
        c.family_ = CurveFamily::Torus;
        c.data_ = TorusData{std::move(amplitudes), std::move(freqs)};
        c.interval_ = Interval{Rational(-1), Rational(1)};
        return c;
    }

    CurveFamily family() const { return family_; }
    const Interval& working_interval() const { return interval_; }
    void set_working_interval(Interval iv) { interval_ = std::move(iv); }

    std::size_t dimension() const {
        switch (family_) {
            case CurveFamily::Line: return std::get<LineData>(data_).base.size();
            case CurveFamily::Polynomial: return std::get<PolyData>(data_).coords.size();
            case CurveFamily::RationalCircle: return 2;
            case CurveFamily::Torus: return 2 * std::get<TorusData>(data_).amplitudes.size();
        }
        return 0;
    }

    const LineData& line_data() const { return std::get<LineData>(data_); }
    const PolyData& poly_data() const { return std::get<PolyData>(data_); }
    const CircleData& circle_data() const { return std::get<CircleData>(data_); }
    const TorusData& torus_data() const { return std::get<TorusData>(data_); }
    const Rational& premap_scale() const { return premap_a_; }
    const Rational& premap_shift() const { return premap_b_; }
    bool premap_identity() const { return premap_a_ == Rational(1) && premap_b_.is_zero(); }

    template <class S>
    std::vector<S> eval(const S& t) const {
        if (!interval_.contains(primal(t)))
            throw OutOfDomain("parameter outside the curve's working interval");
        return eval_unchecked(t);
    }

    // Evaluation without the domain check; rho and the determinant run their
    // own check once per call.
    template <class S>
    std::vector<S> eval_unchecked(const S& t) const {
        const S s = premap_identity()
                        ? t
                        : scalar_from_rational<S>(premap_a_) * t + scalar_from_rational<S>(premap_b_);
        std::vector<S> out;
        switch (family_) {
            case CurveFamily::Line: {
                const auto& d = std::get<LineData>(data_);
                out.reserve(d.base.size());
                for (std::size_t i = 0; i < d.base.size(); ++i)
                    out.push_back(scalar_from_rational<S>(d.base[i]) +
                                  s * scalar_from_rational<S>(d.dir[i]));
                break;
            }
            case CurveFamily::Polynomial: {
                const auto& d = std::get<PolyData>(data_);
                out.reserve(d.coords.size());
                for (const Poly& p : d.coords) out.push_back(p.eval(s));
                break;
            }
            case CurveFamily::RationalCircle: {
                const auto& d = std::get<CircleData>(data_);
                const CirclePoint<S> p = half_angle_point(s);
                const S r = scalar_from_rational<S>(d.radius);
                out = {r * p.c, r * p.s};
                break;
            }
            case CurveFamily::Torus: {
                const auto& d = std::get<TorusData>(data_);
                const CirclePoint<S> p = half_angle_point(s);
                out.reserve(2 * d.amplitudes.size());
                for (std::size_t i = 0; i < d.amplitudes.size(); ++i) {
                    const CirclePoint<S> q = angle_multiple(p, d.freqs[i]);
                    const S a = scalar_from_rational<S>(d.amplitudes[i]);
                    out.push_back(a * q.c);
                    out.push_back(a * q.s);
                }
                break;
            }
        }
        return out;
    }

    ParamCurve with_premap(const Rational& a, const Rational& b) const {
        ParamCurve c = *this;
        c.premap_a_ = premap_a_ * a;
        c.premap_b_ = premap_a_ * b + premap_b_;
        return c;
    }

    bool operator==(const ParamCurve& o) const {
        return family_ == o.family_ && data_ == o.data_ && premap_a_ == o.premap_a_ &&
               premap_b_ == o.premap_b_ && interval_ == o.interval_;
    }

  private:
    ParamCurve() = default;

    CurveFamily family_ = CurveFamily::Line;
    std::variant<LineData, PolyData, CircleData, TorusData> data_;
    Rational premap_a_ = Rational(1);
    Rational premap_b_ = Rational(0);
    Interval interval_;  // unbounded by default
};

template <class S>
std::vector<S> eval_point(const ParamCurve& curve, const S& t) {
    return curve.eval(t);
}

// Squared Euclidean distance between the curve points at parameters x and y.
template <class S>
S rho(const ParamCurve& curve, const S& x, const S& y) {
    if (!curve.working_interval().contains(primal(x)) ||
        !curve.working_interval().contains(primal(y)))
        throw OutOfDomain("parameter outside the curve's working interval");
    const std::vector<S> px = curve.eval_unchecked(x);
    const std::vector<S> py = curve.eval_unchecked(y);
    S acc = scalar_from_rational<S>(Rational(0));
    for (std::size_t i = 0; i < px.size(); ++i) {
        const S d = px[i] - py[i];
        acc += d * d;
    }
    return acc;
}

// Partial derivatives (rho_1, rho_2) of rho, obtained by running the same
// evaluation code over dual numbers.
template <class S>
std::pair<S, S> rho_partials(const ParamCurve& curve, const S& x, const S& y) {
    const Dual<S> dx = rho(curve, Dual<S>::variable(x), Dual<S>(y));
    const Dual<S> dy = rho(curve, Dual<S>(x), Dual<S>::variable(y));
    return {dx.deriv, dy.deriv};
}

// The four-point determinant
//   D = r1(x,y) r2(x,y') r2(x',y) r1(x',y') - r2(x,y) r1(x,y') r1(x',y) r2(x',y').
// Identically zero exactly on the line/helix family.
template <class S>
S det_jt(const ParamCurve& curve, const S& x, const S& xp, const S& y, const S& yp) {
    const auto [a1, a2] = rho_partials(curve, x, y);
    const auto [b1, b2] = rho_partials(curve, x, yp);
    const auto [c1, c2] = rho_partials(curve, xp, y);
    const auto [d1, d2] = rho_partials(curve, xp, yp);
    return a1 * b2 * c2 * d1 - a2 * b1 * c1 * d2;
}

// Same parameter substitution t <- a*u + b for every family; the line and
// polynomial families absorb it into their coefficients.
inline ParamCurve reparam_affine(const ParamCurve& curve, const Rational& a, const Rational& b) {
    if (a.is_zero()) throw InvalidReparam("affine reparameterization needs a nonzero scale");
    ParamCurve out = curve;
    switch (curve.family()) {
        case CurveFamily::Line: {
            LineData d = curve.line_data();
            for (std::size_t i = 0; i < d.base.size(); ++i) {
                d.base[i] += b * d.dir[i];
                d.dir[i] *= a;
            }
            out = ParamCurve::line(std::move(d.base), std::move(d.dir));
            break;
        }
        case CurveFamily::Polynomial: {
            PolyData d = curve.poly_data();
            for (Poly& p : d.coords) p = p.compose_affine(a, b);
            out = ParamCurve::polynomial(std::move(d.coords));
            break;
        }
        case CurveFamily::RationalCircle:
        case CurveFamily::Torus:
            out = curve.with_premap(a, b);
            break;
    }
    // Transform the working interval through the preimage of u -> a*u + b.
    const Interval& iv = curve.working_interval();
    auto pre = [&](const std::optional<Rational>& bound) -> std::optional<Rational> {
        if (!bound) return std::nullopt;
        return (*bound - b) / a;
    };
    Interval niv;
    if (a.is_negative()) {
        niv.lo = pre(iv.hi);
        niv.hi = pre(iv.lo);
    } else {
        niv.lo = pre(iv.lo);
        niv.hi = pre(iv.hi);
    }
    out.set_working_interval(std::move(niv));
    return out;
}

enum class CurveVerdict { DegenerateCandidate, General };

struct DetWitness {
    std::string x, xp, y, yp;
    std::string det;
};

struct ClassificationReport {
    CurveVerdict verdict = CurveVerdict::DegenerateCandidate;
    std::vector<DetWitness> witnesses;  // nonzero determinants, at most 10
    std::size_t samples = 0;
    std::size_t nonzero_count = 0;
    std::string backend;
};

namespace detail {

// Sampling window: the bounded part of the working interval, else (0,1).
inline std::pair<Rational, Rational> sampling_window(const ParamCurve& curve) {
    const Interval& iv = curve.working_interval();
    if (iv.bounded()) {
        if (!(*iv.lo < *iv.hi)) throw InsufficientDomain("empty working interval");
        return {*iv.lo, *iv.hi};
    }
    return {Rational(0), Rational(1)};
}

inline constexpr std::uint64_t kGridSize = 1u << 20;  // >= 10^6 grid values

inline Rational grid_value(const Rational& lo, const Rational& hi, std::uint64_t j) {
    return lo + (hi - lo) * Rational(BigInt(j), BigInt(kGridSize));
}

template <class S>
std::string scalar_str(const S& s) {
    if constexpr (std::is_same_v<S, Rational>) {
        return s.str();
    } else {
        std::ostringstream os;
        os.precision(17);
        os << s;
        return os.str();
    }
}

}  // namespace detail

// Evaluates det_jt at random quadruples of distinct grid points inside the
// working interval. The rational backend demands exact zeros; the floating
// backend uses |D| < tol * (1 + max |monomial|).
template <class S>
ClassificationReport classify_curve(const ParamCurve& curve, std::size_t samples,
                                    std::uint64_t seed, double float_tol = 1e-9) {
    if (samples < 1) throw InvalidScalar("classification needs at least one sample");
    const auto [lo, hi] = detail::sampling_window(curve);
    Rng rng(seed);
    ClassificationReport report;
    report.samples = samples;
    report.backend = std::is_same_v<S, Rational> ? "exact" : "float";
    for (std::size_t it = 0; it < samples; ++it) {
        std::uint64_t idx[4];
        for (int i = 0; i < 4; ++i) {
            bool fresh = false;
            while (!fresh) {
                idx[i] = 1 + rng.below(detail::kGridSize - 1);
                fresh = true;
                for (int j = 0; j < i; ++j) fresh = fresh && idx[j] != idx[i];
            }
        }
        S q[4];
        for (int i = 0; i < 4; ++i)
            q[i] = scalar_from_rational<S>(detail::grid_value(lo, hi, idx[i]));

        bool nonzero = false;
        S det = scalar_from_rational<S>(Rational(0));
        if constexpr (std::is_same_v<S, Rational>) {
            det = det_jt(curve, q[0], q[1], q[2], q[3]);
            nonzero = !det.is_zero();
        } else {
            const auto [a1, a2] = rho_partials(curve, q[0], q[2]);
            const auto [b1, b2] = rho_partials(curve, q[0], q[3]);
            const auto [c1, c2] = rho_partials(curve, q[1], q[2]);
            const auto [d1, d2] = rho_partials(curve, q[1], q[3]);
            const double m1 = a1 * b2 * c2 * d1;
            const double m2 = a2 * b1 * c1 * d2;
            det = m1 - m2;
            nonzero = std::abs(det) >= float_tol * (1.0 + std::max(std::abs(m1), std::abs(m2)));
        }
        if (nonzero) {
            ++report.nonzero_count;
            if (report.witnesses.size() < 10) {
                report.witnesses.push_back(DetWitness{
                    detail::scalar_str(q[0]), detail::scalar_str(q[1]), detail::scalar_str(q[2]),
                    detail::scalar_str(q[3]), detail::scalar_str(det)});
            }
        }
    }
    report.verdict =
        report.nonzero_count == 0 ? CurveVerdict::DegenerateCandidate : CurveVerdict::General;
    return report;
}

// Closed forms for the degenerate families: rho(x,y) = h(phi(x) - phi(y)).
// phi and h are evaluable callables consumed by tests and the Sidon route.
struct PhiForm {
    std::function<double(double)> phi;
    std::function<double(double)> h;
    bool phi_is_parameter = false;  // line: phi(t) = t, exact in any backend
    Rational line_speed2 = Rational(0);
    // h is strictly increasing on [0, halfwidth); infinity for the line.
    double injective_halfwidth = std::numeric_limits<double>::infinity();
    std::string phi_desc;
    std::string h_desc;
};

inline std::optional<PhiForm> closed_form_phi(const ParamCurve& curve) {
    constexpr double kPi = 3.14159265358979323846;
    switch (curve.family()) {
        case CurveFamily::Line: {
            Rational speed2(0);
            for (const auto& d : curve.line_data().dir) speed2 += d * d;
            PhiForm form;
            form.phi = [](double t) { return t; };
            const double s2 = speed2.to_double();
            form.h = [s2](double z) { return s2 * z * z; };
            form.phi_is_parameter = true;
            form.line_speed2 = speed2;
            form.phi_desc = "phi(t) = t";
            form.h_desc = "h(z) = " + speed2.str() + "*z^2";
            return form;
        }
        case CurveFamily::RationalCircle: {
            const double r = curve.circle_data().radius.to_double();
            const double a = curve.premap_scale().to_double();
            const double b = curve.premap_shift().to_double();
            PhiForm form;
            form.phi = [a, b](double t) { return 2.0 * std::atan(a * t + b); };
            form.h = [r](double z) { return 2.0 * r * r * (1.0 - std::cos(z)); };
            form.injective_halfwidth = kPi;
            form.phi_desc = "phi(t) = angle(t)";
            form.h_desc = "h(z) = 2*r^2*(1 - cos z)";
            return form;
        }
        case CurveFamily::Torus: {
            const TorusData& td = curve.torus_data();
            std::vector<double> amp2;
            amp2.reserve(td.amplitudes.size());
            for (const auto& ai : td.amplitudes) amp2.push_back(ai.to_double() * ai.to_double());
            std::vector<unsigned> freqs = td.freqs;
            unsigned fmax = 0;
            for (unsigned f : freqs) fmax = std::max(fmax, f);
            const double a = curve.premap_scale().to_double();
            const double b = curve.premap_shift().to_double();
            PhiForm form;
            form.phi = [a, b](double t) { return 2.0 * std::atan(a * t + b); };
            form.h = [amp2, freqs](double z) {
                double acc = 0.0;
                for (std::size_t i = 0; i < amp2.size(); ++i)
                    acc += 2.0 * amp2[i] * (1.0 - std::cos(freqs[i] * z));
                return acc;
            };
            form.injective_halfwidth = kPi / static_cast<double>(fmax);
            form.phi_desc = "phi(t) = angle(t)";
            form.h_desc = "h(z) = sum 2*a_i^2*(1 - cos(lambda_i z))";
            return form;
        }
        case CurveFamily::Polynomial:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace ddgeo
