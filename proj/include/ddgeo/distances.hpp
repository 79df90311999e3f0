#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "ddgeo/curve.hpp"
#include "ddgeo/errors.hpp"
#include "ddgeo/quantize.hpp"
#include "ddgeo/rational.hpp"

namespace ddgeo {

template <class S>
using PointSet = std::vector<std::vector<S>>;

// Histogram keys: exact rationals on the exact backend, quantized integer
// keys on the floating backend.
template <class S>
struct DistanceKeyTraits;

template <>
struct DistanceKeyTraits<Rational> {
    using Key = Rational;
    static Key key(const Rational& v, int) { return v; }
    static bool is_zero(const Key& k) { return k.is_zero(); }
};

template <>
struct DistanceKeyTraits<double> {
    using Key = QuantKey;
    static Key key(double v, int digits) { return quantize_key(v, digits); }
    static bool is_zero(const Key& k) { return k.scaled == 0; }
};

// Multiset of squared distances over unordered point pairs.
template <class Key>
struct DistanceHistogram {
    std::map<Key, std::int64_t> entries;
    std::size_t n = 0;
    int digits = kDefaultQuantDigits;

    std::int64_t pair_count() const {
        return static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    }
};

template <class S>
S squared_distance(const std::vector<S>& a, const std::vector<S>& b) {
    S acc = scalar_from_rational<S>(Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const S d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

template <class S>
DistanceHistogram<typename DistanceKeyTraits<S>::Key> build_histogram(
    const PointSet<S>& points, int digits = kDefaultQuantDigits) {
    using Traits = DistanceKeyTraits<S>;
    DistanceHistogram<typename Traits::Key> h;
    h.n = points.size();
    h.digits = digits;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            auto key = Traits::key(squared_distance(points[i], points[j]), digits);
            if (Traits::is_zero(key)) throw DuplicatePoint(i, j);
            ++h.entries[key];
        }
    }
    return h;
}

template <class Key>
std::int64_t distinct_count(const DistanceHistogram<Key>& h) {
    return static_cast<std::int64_t>(h.entries.size());
}

enum class EnergyMode {
    OrderedFull,  // quadruples over ordered 4-tuples, diagonal pairs included
    OffDiagonal,  // sum of squared ordered-pair multiplicities, nonzero distances only
};

template <class Key>
std::int64_t energy_q(const DistanceHistogram<Key>& h, EnergyMode mode) {
    std::int64_t acc = 0;
    for (const auto& [key, mult] : h.entries) {
        const std::int64_t ordered = 2 * mult;
        acc += ordered * ordered;
    }
    if (mode == EnergyMode::OrderedFull) {
        const auto n = static_cast<std::int64_t>(h.n);
        acc += n * n;  // the diagonal class rho(x,x) = 0
    }
    return acc;
}

// Ordered triples (x, y, y') of distinct points with the distances from x to
// y and to y' equal. O(n^2) via one histogram per apex.
template <class S>
std::int64_t isosceles_triples(const PointSet<S>& points, int digits = kDefaultQuantDigits) {
    using Traits = DistanceKeyTraits<S>;
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::map<typename Traits::Key, std::int64_t> around;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            auto key = Traits::key(squared_distance(points[i], points[j]), digits);
            if (Traits::is_zero(key)) throw DuplicatePoint(i, j);
            ++around[key];
        }
        for (const auto& [key, mult] : around) acc += mult * (mult - 1);
    }
    return acc;
}

// Exact Cauchy-Schwarz bound (#pairs)^2 / sum of squared multiplicities.
// Always <= the number of distinct distances; asserted before returning.
template <class Key>
Rational cs_lower_bound(const DistanceHistogram<Key>& h) {
    if (h.n < 2) throw TooSmall("Cauchy-Schwarz bound needs at least two points");
    BigInt energy = 0;
    for (const auto& [key, mult] : h.entries) energy += BigInt(mult) * BigInt(mult);
    const BigInt pairs = BigInt(h.pair_count());
    Rational bound(pairs * pairs, energy);
    if (Rational(BigInt(distinct_count(h))) < bound)
        throw Error("Cauchy-Schwarz invariant violated: bound exceeds distinct count");
    return bound;
}

// Parameters resident on a curve: the set A of the analysis.
template <class S>
struct ParamSet {
    ParamCurve curve;
    std::vector<S> params;

    ParamSet(ParamCurve c, std::vector<S> p) : curve(std::move(c)), params(std::move(p)) {
        std::set<S> seen;
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (!curve.working_interval().contains(primal(params[i])))
                throw OutOfDomain("parameter outside the curve's working interval");
            if (!seen.insert(params[i]).second)
                throw DuplicateElement("duplicate parameter at index " + std::to_string(i));
        }
    }

    std::size_t size() const { return params.size(); }

    PointSet<S> points() const {
        PointSet<S> out;
        out.reserve(params.size());
        for (const S& t : params) out.push_back(curve.eval(t));
        return out;
    }
};

// O(n^4) oracle for the ordered-quadruple energy count
//   |{(x, x', y, y') in A^4 : rho(x,y) = rho(x',y')}|.
template <class S>
std::int64_t brute_force_energy(const ParamSet<S>& set, int digits = kDefaultQuantDigits) {
    using Traits = DistanceKeyTraits<S>;
    const std::size_t n = set.size();
    if (n > 64) throw SizeGuard("brute-force energy oracle is limited to 64 parameters");
    std::vector<typename Traits::Key> keys(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            keys[i * n + j] = Traits::key(rho(set.curve, set.params[i], set.params[j]), digits);
    std::int64_t count = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t xp = 0; xp < n; ++xp)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t yp = 0; yp < n; ++yp)
                    if (keys[x * n + y] == keys[xp * n + yp]) ++count;
    return count;
}

}  // namespace ddgeo
