#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ddgeo/curve.hpp"
#include "ddgeo/errors.hpp"
#include "ddgeo/polynomial.hpp"
#include "ddgeo/rational.hpp"

namespace ddgeo {

namespace detail {

// Cursor over a curve-spec string. Whitespace is insignificant between
// tokens; errors carry the byte offset into the original text.
class SpecCursor {
  public:
    explicit SpecCursor(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

    bool try_literal(std::string_view lit) {
        skip_ws();
        if (text_.substr(pos_, lit.size()) != lit) return false;
        pos_ += lit.size();
        return true;
    }

    void expect(std::string_view lit) {
        if (!try_literal(lit)) throw ParseError(pos_, "'" + std::string(lit) + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Rational rational() {
        skip_ws();
        std::size_t used = 0;
        Rational r = Rational::parse(text_.substr(pos_), &used);
        if (used == 0) throw ParseError(pos_, "number");
        pos_ += used;
        return r;
    }

    unsigned positive_int() {
        skip_ws();
        std::size_t start = pos_;
        unsigned long v = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (v > 1000000) throw ParseError(start, "integer below 10^6");
            ++pos_;
        }
        if (pos_ == start) throw ParseError(start, "positive integer");
        if (v == 0) throw ParseError(start, "positive integer");
        return static_cast<unsigned>(v);
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline std::vector<Rational> rational_list(SpecCursor& cur, char open, char close) {
    cur.expect(std::string(1, open));
    std::vector<Rational> out;
    out.push_back(cur.rational());
    while (cur.try_literal(",")) out.push_back(cur.rational());
    cur.expect(std::string(1, close));
    return out;
}

// A polynomial in t: sum of terms `coeff`, `coeff*t^k`, or `t^k`.
inline Poly parse_poly(SpecCursor& cur) {
    std::vector<Rational> coeffs;
    auto add = [&](std::size_t deg, const Rational& c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
        coeffs[deg] += c;
    };
    bool first = true;
    for (;;) {
        bool negative = false;
        if (cur.try_literal("+")) {
        } else if (cur.try_literal("-")) {
            negative = true;
        } else if (!first) {
            break;
        }
        first = false;
        Rational coeff(1);
        bool have_coeff = false;
        const char c = cur.peek();
        if (c != 't') {
            coeff = cur.rational();
            have_coeff = true;
        }
        std::size_t deg = 0;
        if ((have_coeff && cur.try_literal("*")) || !have_coeff) {
            cur.expect("t");
            deg = 1;
            if (cur.try_literal("^")) deg = cur.positive_int();
        } else if (cur.peek() == 't') {
            // `2t` without the asterisk
            cur.expect("t");
            deg = 1;
            if (cur.try_literal("^")) deg = cur.positive_int();
        }
        add(deg, negative ? -coeff : coeff);
        const char nxt = cur.peek();
        if (nxt != '+' && nxt != '-') break;
    }
    if (coeffs.empty()) throw ParseError(cur.pos(), "polynomial");
    return Poly(std::move(coeffs));
}

}  // namespace detail

// Grammar:
//   line:base=(r,...);dir=(r,...)
//   poly:(p1(t),...,pD(t))
//   circle:r=R
//   torus:a=[a1,...,ak];lambda=[l1,...,lk]
inline ParamCurve parse_curve_spec(std::string_view text) {
    detail::SpecCursor cur(text);
    auto finish = [&](ParamCurve curve) {
        if (!cur.at_end()) throw ParseError(cur.pos(), "end of curve spec");
        return curve;
    };
    if (cur.try_literal("line:")) {
        cur.expect("base=");
        auto base = detail::rational_list(cur, '(', ')');
        const std::size_t dir_offset = cur.pos();
        cur.expect(";");
        cur.expect("dir=");
        auto dir = detail::rational_list(cur, '(', ')');
        if (dir.size() != base.size())
            throw ParseError(dir_offset, "direction of the same dimension as base");
        bool zero = true;
        for (const auto& d : dir) zero = zero && d.is_zero();
        if (zero) throw ParseError(dir_offset, "nonzero direction vector");
        return finish(ParamCurve::line(std::move(base), std::move(dir)));
    }
    if (cur.try_literal("poly:")) {
        cur.expect("(");
        std::vector<Poly> coords;
        coords.push_back(detail::parse_poly(cur));
        while (cur.try_literal(",")) coords.push_back(detail::parse_poly(cur));
        cur.expect(")");
        return finish(ParamCurve::polynomial(std::move(coords)));
    }
    if (cur.try_literal("circle:")) {
        cur.expect("r=");
        const std::size_t r_offset = cur.pos();
        Rational r = cur.rational();
        if (r.is_zero() || r.is_negative()) throw ParseError(r_offset, "positive radius");
        return finish(ParamCurve::rational_circle(std::move(r)));
    }
    if (cur.try_literal("torus:")) {
        cur.expect("a=");
        auto amps = detail::rational_list(cur, '[', ']');
        const std::size_t l_offset = cur.pos();
        cur.expect(";");
        cur.expect("lambda=");
        cur.expect("[");
        std::vector<unsigned> freqs;
        freqs.push_back(cur.positive_int());
        while (cur.try_literal(",")) freqs.push_back(cur.positive_int());
        cur.expect("]");
        if (freqs.size() != amps.size())
            throw ParseError(l_offset, "one frequency per amplitude");
        for (const auto& a : amps)
            if (a.is_zero()) throw ParseError(l_offset, "nonzero amplitudes");
        return finish(ParamCurve::torus(std::move(amps), std::move(freqs)));
    }
    throw ParseError(cur.pos(), "one of line:, poly:, circle:, torus:");
}

inline std::string format_curve_spec(const ParamCurve& curve) {
    if (!curve.premap_identity())
        throw Error("reparameterized curves have no spec form");
    std::ostringstream os;
    switch (curve.family()) {
        case CurveFamily::Line: {
            const auto& d = curve.line_data();
            os << "line:base=(";
            for (std::size_t i = 0; i < d.base.size(); ++i)
                os << (i ? "," : "") << d.base[i].str();
            os << ");dir=(";
            for (std::size_t i = 0; i < d.dir.size(); ++i)
                os << (i ? "," : "") << d.dir[i].str();
            os << ")";
            break;
        }
        case CurveFamily::Polynomial: {
            const auto& d = curve.poly_data();
            os << "poly:(";
            for (std::size_t i = 0; i < d.coords.size(); ++i)
                os << (i ? "," : "") << d.coords[i].str();
            os << ")";
            break;
        }
        case CurveFamily::RationalCircle:
            os << "circle:r=" << curve.circle_data().radius.str();
            break;
        case CurveFamily::Torus: {
            const auto& d = curve.torus_data();
            os << "torus:a=[";
            for (std::size_t i = 0; i < d.amplitudes.size(); ++i)
                os << (i ? "," : "") << d.amplitudes[i].str();
            os << "];lambda=[";
            for (std::size_t i = 0; i < d.freqs.size(); ++i) os << (i ? "," : "") << d.freqs[i];
            os << "]";
            break;
        }
    }
    return os.str();
}

// Points file: a `dim=D` header, then one point per line with D
// comma-separated rational or decimal coordinates. `#` starts a comment.
inline PointSet<Rational> parse_points_csv(std::istream& in) {
    std::string line;
    std::size_t dim = 0;
    bool have_header = false;
    PointSet<Rational> points;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string trimmed;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') trimmed += c;
        if (trimmed.empty()) continue;
        if (!have_header) {
            if (trimmed.rfind("dim=", 0) != 0)
                throw ParseError(0, "header 'dim=D' on line " + std::to_string(lineno));
            dim = static_cast<std::size_t>(std::stoul(trimmed.substr(4)));
            if (dim == 0) throw ParseError(4, "positive dimension");
            have_header = true;
            continue;
        }
        std::vector<Rational> coords;
        std::size_t start = 0;
        while (start <= trimmed.size()) {
            std::size_t comma = trimmed.find(',', start);
            const std::string field =
                trimmed.substr(start, comma == std::string::npos ? std::string::npos
                                                                 : comma - start);
            coords.push_back(Rational::parse(field));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (coords.size() != dim)
            throw ParseError(0, std::to_string(dim) + " coordinates on line " +
                                    std::to_string(lineno));
        points.push_back(std::move(coords));
    }
    if (!have_header) throw ParseError(0, "header 'dim=D'");
    return points;
}

// Reals file: one scalar literal per line; `#` starts a comment.
inline std::vector<Rational> parse_reals_file(std::istream& in) {
    std::vector<Rational> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string trimmed;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') trimmed += c;
        if (trimmed.empty()) continue;
        out.push_back(Rational::parse(trimmed));
    }
    return out;
}

template <class S>
std::vector<S> to_backend(const std::vector<Rational>& values);

template <>
inline std::vector<Rational> to_backend<Rational>(const std::vector<Rational>& values) {
    return values;
}

template <>
inline std::vector<double> to_backend<double>(const std::vector<Rational>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.to_double());
    return out;
}

}  // namespace ddgeo
