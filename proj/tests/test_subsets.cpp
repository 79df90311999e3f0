#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "ddgeo/rng.hpp"
#include "ddgeo/subsets.hpp"

using namespace ddgeo;

namespace {

ParamCurve unit_line() {
    return ParamCurve::line({Rational(0), Rational(0)}, {Rational(1), Rational(0)});
}

ParamCurve parabola() {
    return ParamCurve::polynomial({Poly::identity(), Poly({Rational(0), Rational(0), Rational(1)})});
}

std::vector<Rational> random_params(Rng& rng, std::size_t n, long long den = 1009) {
    std::set<Rational> seen;
    while (seen.size() < n) seen.insert(Rational(BigInt(1 + rng.below(den - 2)), BigInt(den)));
    return {seen.begin(), seen.end()};
}

template <class S>
void recheck(const ParamCurve& curve, const SubsetResult<S>& result) {
    REQUIRE(result.certified);
    ParamSet<S> set(curve, result.subset);
    CHECK(verify_distinct_distances(set.points()));
}

}  // namespace

TEST_CASE("verify_distinct_distances") {
    PointSet<Rational> collinear = {{Rational(0)}, {Rational(1)}, {Rational(3)}};
    CHECK(verify_distinct_distances(collinear));
    PointSet<Rational> square = {{Rational(0), Rational(0)},
                                 {Rational(1), Rational(0)},
                                 {Rational(1), Rational(1)},
                                 {Rational(0), Rational(1)}};
    CHECK(!verify_distinct_distances(square));
    PointSet<Rational> two = {{Rational(0)}, {Rational(5)}};
    CHECK(verify_distinct_distances(two));
}

TEST_CASE("randomized subset keeps everything when distances are already distinct") {
    ParamSet<Rational> set(unit_line(),
                           {Rational(1), Rational(2), Rational(5), Rational(11)});
    const auto result = randomized_subset(set, 4.0, 10, 5);
    CHECK(result.deletions_q == 0);
    CHECK(result.deletions_s == 0);
    CHECK(result.pi_used == 1.0);  // C = 4 saturates pi for n = 4
    CHECK(result.subset.size() == 4);
    recheck(set.curve, result);
}

TEST_CASE("randomized subset deletes collisions and still certifies") {
    // Symmetric parabola parameters force rho collisions.
    std::vector<Rational> params;
    for (int i = 1; i <= 5; ++i) {
        params.emplace_back(i);
        params.emplace_back(-i);
    }
    ParamSet<Rational> set(parabola(), params);
    const auto result = randomized_subset(set, 8.0, 5, 11);
    CHECK(result.pi_used == 1.0);
    CHECK(result.deletions_q + result.deletions_s > 0);
    CHECK(result.subset.size() < set.size());
    recheck(set.curve, result);
}

TEST_CASE("randomized subset stats are reproducible from the seed") {
    Rng rng(101);
    ParamSet<Rational> set(parabola(), random_params(rng, 20));
    const auto a = randomized_subset(set, 1.0, 8, 42);
    const auto b = randomized_subset(set, 1.0, 8, 42);
    CHECK(a.subset == b.subset);
    CHECK(a.deletions_q == b.deletions_q);
    CHECK(std::abs(a.pi_used - 1.0 * std::pow(20.0, -5.0 / 9.0)) < 1e-12);
}

TEST_CASE("sidon route on a line with Sidon parameters keeps the whole set") {
    ParamSet<Rational> set(unit_line(), {Rational(1), Rational(2), Rational(5), Rational(11)});
    const auto result = sidon_route_subset(set);
    CHECK(result.subset.size() == 4);
    CHECK(result.route == SubsetRoute::SidonDegenerate);
    recheck(set.curve, result);
}

TEST_CASE("sidon route on a line with colliding gaps can never keep everything") {
    ParamSet<Rational> set(unit_line(), {Rational(1), Rational(2), Rational(3)});
    const auto result = sidon_route_subset(set);
    CHECK(result.certified);
    CHECK(result.subset.size() >= 2);
    CHECK(result.subset.size() < 3);
    recheck(set.curve, result);
}

TEST_CASE("sidon route covers circle and torus arcs") {
    Rng rng(103);
    const auto circ = ParamCurve::rational_circle(Rational(1));
    ParamSet<Rational> cset(circ, random_params(rng, 16));
    const auto cres = sidon_route_subset(cset);
    CHECK(cres.subset.size() >= 2);
    recheck(circ, cres);

    const auto tor = ParamCurve::torus({Rational(1), Rational(1)}, {1, 2});
    ParamSet<Rational> tset(tor, random_params(rng, 16));
    const auto tres = sidon_route_subset(tset);
    CHECK(tres.certified);
    recheck(tor, tres);
}

TEST_CASE("sidon route requires a closed form") {
    Rng rng(107);
    ParamSet<Rational> set(parabola(), random_params(rng, 6));
    CHECK_THROWS_AS(sidon_route_subset(set), AbsentClosedForm);
}

TEST_CASE("exhaustive oracle pins the classics") {
    PointSet<Rational> square = {{Rational(0), Rational(0)},
                                 {Rational(1), Rational(0)},
                                 {Rational(1), Rational(1)},
                                 {Rational(0), Rational(1)}};
    CHECK(exhaustive_subset_indices(square).size() == 2);

    ParamSet<Rational> sidon_line(unit_line(),
                                  {Rational(1), Rational(2), Rational(5), Rational(11)});
    CHECK(exhaustive_subset_oracle(sidon_line).subset.size() == 4);

    // Equilateral triangle on the float backend: all three distances equal.
    PointSet<double> tri;
    for (int k = 0; k < 3; ++k) {
        const double theta = 2.0 * 3.14159265358979323846 * k / 3;
        tri.push_back({std::cos(theta), std::sin(theta)});
    }
    CHECK(exhaustive_subset_indices(tri).size() == 2);

    PointSet<Rational> big(26, {Rational(0)});
    CHECK_THROWS_AS(exhaustive_subset_indices(big), SizeGuard);
}

TEST_CASE("oracle dominates both routes and is monotone under insertion") {
    Rng rng(109);
    const std::vector<ParamCurve> curves = {unit_line(), parabola(),
                                            ParamCurve::rational_circle(Rational(1)),
                                            ParamCurve::torus({Rational(1), Rational(1)}, {1, 2})};
    for (const auto& curve : curves) {
        auto params = random_params(rng, 11);
        ParamSet<Rational> set(curve, params);
        const auto oracle = exhaustive_subset_oracle(set);
        const auto rand_route = randomized_subset(set, 4.0, 10, 3);
        CHECK(oracle.subset.size() >= rand_route.subset.size());
        if (closed_form_phi(curve)) {
            const auto sidon_route = sidon_route_subset(set);
            CHECK(oracle.subset.size() >= sidon_route.subset.size());
        }
        recheck(curve, oracle);

        // Adding a parameter never shrinks the oracle's maximum.
        auto more = params;
        more.push_back(Rational(BigInt(1013), BigInt(2027)));
        ParamSet<Rational> bigger(curve, more);
        CHECK(exhaustive_subset_oracle(bigger).subset.size() >= oracle.subset.size());
    }
}

TEST_CASE("bound exponents from the dimension recursion") {
    CHECK(bound_exponent(1) == Rational(4, 9));
    CHECK(bound_exponent(2) == Rational(4, 21));
    CHECK(bound_exponent(3) == Rational(4, 33));
    CHECK_THROWS_AS(bound_exponent(0), InvalidDimension);
}

TEST_CASE("recursion bound values and ratio") {
    CHECK(recursion_bound(BigInt(16), 1) == BigInt(512));
    CHECK(recursion_bound(BigInt(16), 2) == BigInt(8388608));
    CHECK(recursion_bound(BigInt(2), 1) == BigInt(5));
    for (int t = 2; t <= 10; ++t)
        for (int d = 2; d <= 4; ++d) {
            const BigInt hi = recursion_bound(BigInt(t), d);
            const BigInt lo = recursion_bound(BigInt(t), d - 1);
            CHECK(hi == lo * 4 * BigInt(t) * BigInt(t) * BigInt(t));
        }
    CHECK_THROWS_AS(recursion_bound(BigInt(1), 1), InvalidScalar);
    CHECK_THROWS_AS(recursion_bound(BigInt(4), 0), InvalidDimension);
}

TEST_CASE("custom recursion base is honored") {
    const auto base = [](const BigInt& t) { return t * t; };
    CHECK(recursion_bound(BigInt(3), 1, base) == BigInt(9));
    CHECK(recursion_bound(BigInt(3), 2, base) == BigInt(9 * 4 * 27));
}
