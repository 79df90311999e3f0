#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ddgeo/curve.hpp"
#include "ddgeo/distances.hpp"
#include "ddgeo/errors.hpp"
#include "ddgeo/sidon.hpp"

namespace ddgeo {

enum class SubsetRoute { Randomized, SidonDegenerate, Oracle };

inline const char* route_name(SubsetRoute r) {
    switch (r) {
        case SubsetRoute::Randomized: return "randomized";
        case SubsetRoute::SidonDegenerate: return "sidon";
        case SubsetRoute::Oracle: return "oracle";
    }
    return "?";
}

// A certified distinct-distance subset plus the statistics of the run that
// produced it. Deletion counts refer to the winning trial.
template <class S>
struct SubsetResult {
    std::vector<S> subset;
    std::size_t input_size = 0;
    int trials = 0;
    double pi_used = 1.0;
    std::int64_t deletions_q = 0;
    std::int64_t deletions_s = 0;
    bool certified = false;
    SubsetRoute route = SubsetRoute::Randomized;
};

template <class S>
bool verify_distinct_distances(const PointSet<S>& points, int digits = kDefaultQuantDigits) {
    if (points.size() < 2) return true;
    const auto h = build_histogram(points, digits);
    for (const auto& [key, mult] : h.entries)
        if (mult > 1) return false;
    return true;
}

namespace detail {

// One collision among squared distances: the points of two equal-distance
// pairs. Three members when the pairs share an endpoint (an isosceles
// triple), four when disjoint (an energy quadruple).
struct Collision {
    std::vector<std::size_t> members;  // positions into the working list
    bool quadruple = false;
};

// Removes one member per collision, processing collisions by ascending
// smallest member and deleting the member lying in the most unresolved
// collisions (ties toward the larger parameter). Returns surviving
// positions; the survivor set spans pairwise distinct distances.
template <class S>
struct CollisionResolution {
    std::vector<std::size_t> kept;
    std::int64_t deletions_q = 0;
    std::int64_t deletions_s = 0;
};

template <class S>
CollisionResolution<S> resolve_distance_collisions(const ParamCurve& curve,
                                                   const std::vector<S>& params, int digits) {
    using Traits = DistanceKeyTraits<S>;
    const std::size_t n = params.size();
    CollisionResolution<S> out;
    if (n < 2) {
        for (std::size_t i = 0; i < n; ++i) out.kept.push_back(i);
        return out;
    }

    std::map<typename Traits::Key, std::vector<std::pair<std::size_t, std::size_t>>> buckets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            buckets[Traits::key(rho(curve, params[i], params[j]), digits)].push_back({i, j});

    std::vector<Collision> collisions;
    for (const auto& [key, pairs] : buckets) {
        if (Traits::is_zero(key) && !pairs.empty())
            throw DuplicatePoint(pairs[0].first, pairs[0].second);
        for (std::size_t a = 0; a < pairs.size(); ++a) {
            for (std::size_t b = a + 1; b < pairs.size(); ++b) {
                std::set<std::size_t> members{pairs[a].first, pairs[a].second, pairs[b].first,
                                              pairs[b].second};
                Collision c;
                c.members.assign(members.begin(), members.end());
                c.quadruple = members.size() == 4;
                collisions.push_back(std::move(c));
            }
        }
    }

    // Ascending smallest member by parameter value, then lexicographic.
    auto member_params = [&](const Collision& c) {
        std::vector<S> v;
        for (std::size_t m : c.members) v.push_back(params[m]);
        std::sort(v.begin(), v.end());
        return v;
    };
    std::stable_sort(collisions.begin(), collisions.end(),
                     [&](const Collision& a, const Collision& b) {
                         return member_params(a) < member_params(b);
                     });

    std::vector<std::vector<std::size_t>> containing(n);
    for (std::size_t ci = 0; ci < collisions.size(); ++ci)
        for (std::size_t m : collisions[ci].members) containing[m].push_back(ci);

    std::vector<bool> deleted(n, false);
    auto resolved = [&](const Collision& c) {
        for (std::size_t m : c.members)
            if (deleted[m]) return true;
        return false;
    };
    for (const Collision& c : collisions) {
        if (resolved(c)) continue;
        std::size_t choice = c.members[0];
        std::size_t choice_count = 0;
        bool first = true;
        for (std::size_t m : c.members) {
            std::size_t count = 0;
            for (std::size_t ci : containing[m])
                if (!resolved(collisions[ci])) ++count;
            const bool better =
                first || count > choice_count ||
                (count == choice_count && params[choice] < params[m]);
            if (better) {
                choice = m;
                choice_count = count;
                first = false;
            }
        }
        deleted[choice] = true;
        if (c.quadruple)
            ++out.deletions_q;
        else
            ++out.deletions_s;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!deleted[i]) out.kept.push_back(i);
    return out;
}

}  // namespace detail

// The sampling-and-deletion algorithm: keep each parameter independently
// with probability pi = min(1, C * n^{-5/9}), delete one point per surviving
// collision, and keep the largest certified subset over all trials.
template <class S>
SubsetResult<S> randomized_subset(const ParamSet<S>& set, double pi_const = 4.0, int trials = 20,
                                  std::uint64_t seed = 1, int digits = kDefaultQuantDigits) {
    const std::size_t n = set.size();
    if (n < 2) throw TooSmall("randomized subset extraction needs at least two parameters");
    if (trials < 1) throw InvalidScalar("trials must be positive");
    const double pi =
        std::min(1.0, pi_const * std::pow(static_cast<double>(n), -5.0 / 9.0));

    Rng root(seed);
    SubsetResult<S> best;
    best.input_size = n;
    best.trials = trials;
    best.pi_used = pi;
    best.route = SubsetRoute::Randomized;
    bool have = false;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.derive(static_cast<std::uint64_t>(trial));
        std::vector<S> sampled;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.bernoulli(pi)) sampled.push_back(set.params[i]);

        auto res = detail::resolve_distance_collisions(set.curve, sampled, digits);
        std::vector<S> kept;
        for (std::size_t pos : res.kept) kept.push_back(sampled[pos]);
        std::sort(kept.begin(), kept.end());

        ParamSet<S> survivor(set.curve, kept);
        if (!verify_distinct_distances(survivor.points(), digits))
            throw Error("collision resolution left equal distances behind");
        if (!have || kept.size() > best.subset.size()) {
            best.subset = std::move(kept);
            best.deletions_q = res.deletions_q;
            best.deletions_s = res.deletions_s;
            have = true;
        }
    }
    best.certified = true;
    return best;
}

// Degenerate route: map parameters through phi, extract a Sidon subset of
// the images, and pull the chosen parameters back. Distinct phi-differences
// compose with the injective h into distinct distances; the result is still
// re-certified and repaired if the floating phi evaluation misled us.
template <class S>
SubsetResult<S> sidon_route_subset(const ParamSet<S>& set, int digits = kDefaultQuantDigits) {
    const auto form = closed_form_phi(set.curve);
    if (!form) throw AbsentClosedForm("curve has no closed-form phi; use the randomized route");

    SubsetResult<S> out;
    out.input_size = set.size();
    out.trials = 1;
    out.route = SubsetRoute::SidonDegenerate;

    std::vector<S> chosen;
    if (form->phi_is_parameter) {
        // Line: phi is the parameter itself, exact in the active backend.
        if (set.size() >= 2) {
            chosen = real_sidon_subset(set.params).subset;
        } else {
            chosen = set.params;
        }
    } else {
        // Keep parameters inside the arc where h is injective on the
        // realized differences: |phi| < halfwidth / 2.
        std::map<double, S> param_of_phi;
        for (const S& t : set.params) {
            const double phi = form->phi(to_double_scalar(primal(t)));
            if (std::abs(phi) < form->injective_halfwidth / 2.0) param_of_phi[phi] = t;
        }
        std::vector<double> phis;
        for (const auto& [phi, t] : param_of_phi) phis.push_back(phi);
        if (phis.size() >= 2) {
            const auto cert = real_sidon_subset(phis);
            for (double phi : cert.subset) chosen.push_back(param_of_phi.at(phi));
        } else {
            for (const auto& [phi, t] : param_of_phi) chosen.push_back(t);
        }
        std::sort(chosen.begin(), chosen.end());
    }

    // Certification on the actual points; deletions repair any residue.
    auto res = detail::resolve_distance_collisions(set.curve, chosen, digits);
    std::vector<S> kept;
    for (std::size_t pos : res.kept) kept.push_back(chosen[pos]);
    std::sort(kept.begin(), kept.end());
    out.deletions_q = res.deletions_q;
    out.deletions_s = res.deletions_s;
    ParamSet<S> survivor(set.curve, kept);
    if (!verify_distinct_distances(survivor.points(), digits))
        throw Error("sidon route failed to certify after repair");
    out.subset = std::move(kept);
    out.certified = true;
    return out;
}

// Maximum subset with pairwise distinct distances, by include-first
// branch-and-bound over point indices. Returns the lexicographically
// smallest maximum index set.
template <class S>
std::vector<std::size_t> exhaustive_subset_indices(const PointSet<S>& points,
                                                   int digits = kDefaultQuantDigits) {
    using Traits = DistanceKeyTraits<S>;
    using Key = typename Traits::Key;
    const std::size_t n = points.size();
    if (n > 25) throw SizeGuard("exhaustive distinct-distance oracle is limited to 25 points");
    std::vector<Key> key(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            key[i * n + j] = Traits::key(squared_distance(points[i], points[j]), digits);
            if (i < j && Traits::is_zero(key[i * n + j])) throw DuplicatePoint(i, j);
        }

    std::vector<std::size_t> kept, best;
    std::set<Key> used;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        if (kept.size() + (n - i) <= best.size()) return;
        if (i == n) {
            if (kept.size() > best.size()) best = kept;
            return;
        }
        std::vector<Key> fresh;
        bool ok = true;
        for (std::size_t k : kept) {
            const Key& d = key[k * n + i];
            if (used.count(d)) {
                ok = false;
                break;
            }
            fresh.push_back(d);
        }
        if (ok) {
            std::sort(fresh.begin(), fresh.end());
            for (std::size_t f = 1; ok && f < fresh.size(); ++f) ok = fresh[f - 1] != fresh[f];
        }
        if (ok) {
            for (const Key& d : fresh) used.insert(d);
            kept.push_back(i);
            dfs(i + 1);
            kept.pop_back();
            for (const Key& d : fresh) used.erase(d);
        }
        dfs(i + 1);
    };
    dfs(0);
    return best;
}

template <class S>
SubsetResult<S> exhaustive_subset_oracle(const ParamSet<S>& set,
                                         int digits = kDefaultQuantDigits) {
    const auto idx = exhaustive_subset_indices(set.points(), digits);
    SubsetResult<S> out;
    out.input_size = set.size();
    out.trials = 1;
    out.route = SubsetRoute::Oracle;
    for (std::size_t i : idx) out.subset.push_back(set.params[i]);
    std::sort(out.subset.begin(), out.subset.end());
    ParamSet<S> survivor(set.curve, out.subset);
    out.certified = verify_distinct_distances(survivor.points(), digits);
    if (!out.certified) throw Error("oracle subset failed certification");
    return out;
}

// --- Dimension-recursion bound calculator ------------------------------------

inline Rational bound_exponent(int d) {
    if (d < 1) throw InvalidDimension("dimension must be at least 1");
    return Rational(4, 9 + 12 * (d - 1));
}

// ceil(t^{9/4}): integer fourth root of t^9, rounded up.
inline BigInt default_recursion_base(const BigInt& t) {
    const BigInt t9 = boost::multiprecision::pow(t, 9);
    BigInt r = boost::multiprecision::sqrt(boost::multiprecision::sqrt(t9));
    while (boost::multiprecision::pow(r + 1, 4) <= t9) ++r;
    while (boost::multiprecision::pow(r, 4) > t9) --r;
    if (boost::multiprecision::pow(r, 4) < t9) ++r;
    return r;
}

// Iterated point-count bound 4^{d-1} * base(t) * t^{3(d-1)}. Upper-bound
// shape only; the constants are not faithful.
inline BigInt recursion_bound(const BigInt& t, int d,
                              const std::function<BigInt(const BigInt&)>& base =
                                  default_recursion_base) {
    if (d < 1) throw InvalidDimension("dimension must be at least 1");
    if (t < 2) throw InvalidScalar("recursion bound needs t >= 2");
    BigInt acc = base(t);
    for (int level = 1; level < d; ++level) acc *= 4 * boost::multiprecision::pow(t, 3);
    return acc;
}

}  // namespace ddgeo
