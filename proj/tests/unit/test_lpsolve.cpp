#include "bellpoly/localpoly.hpp"
#include "bellpoly/lpsolve.hpp"
#include "bellpoly/nosignal.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace bellpoly;

namespace {

const Rational kHalf = Rational::canonicalize(1, 2);

ReducedPoint pr_box() {
    return ReducedPoint(Scenario::make(2, 2, 2, 2), RVector{kHalf, kHalf, kHalf, kHalf, kHalf, kHalf, kHalf, 0});
}

bool satisfies(const LinearProgram& lp, const RVector& z) {
    for (const auto& c : lp.constraints) {
        const Rational lhs = dot(c.row, z);
        if (c.relation == Relation::less_equal && lhs > c.rhs) return false;
        if (c.relation == Relation::equal && lhs != c.rhs) return false;
        if (c.relation == Relation::greater_equal && lhs < c.rhs) return false;
    }
    for (std::size_t i = 0; i < lp.lower.size(); ++i)
        if (lp.lower[i] && z[i] < *lp.lower[i]) return false;
    for (std::size_t i = 0; i < lp.upper.size(); ++i)
        if (lp.upper[i] && z[i] > *lp.upper[i]) return false;
    return true;
}

// Weights are a convex combination whose image is the witness.
void check_witness(const std::vector<RVector>& vertices, const DistanceResult& d) {
    REQUIRE(d.weights.size() == vertices.size());
    Rational total;
    RVector y(d.witness.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        CHECK(d.weights[i] >= 0);
        total += d.weights[i];
        y = y + d.weights[i] * vertices[i];
    }
    CHECK(total == 1);
    CHECK(y == d.witness);
}

Rational l1(const RVector& a, const RVector& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += abs(a[i] - b[i]);
    return s;
}

Rational linf(const RVector& a, const RVector& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, abs(a[i] - b[i]));
    return s;
}

}  // namespace

TEST_CASE("simplex examples") {
    LinearProgram bounded;
    bounded.objective = RVector{1};
    bounded.add(RVector{1}, Relation::less_equal, 1);
    bounded.add(RVector{1}, Relation::greater_equal, 0);
    const LPResult r = simplex_solve(bounded);
    CHECK(r.status == LPStatus::optimal);
    CHECK(*r.optimum == 1);

    LinearProgram infeasible;
    infeasible.objective = RVector{1};
    infeasible.add(RVector{1}, Relation::less_equal, 0);
    infeasible.add(RVector{1}, Relation::greater_equal, 1);
    const LPResult i = simplex_solve(infeasible);
    CHECK(i.status == LPStatus::infeasible);
    CHECK_FALSE(i.optimum);
    CHECK_FALSE(i.solution);

    LinearProgram unbounded;
    unbounded.objective = RVector{1};
    unbounded.add(RVector{1}, Relation::greater_equal, 0);
    CHECK(simplex_solve(unbounded).status == LPStatus::unbounded);
}

TEST_CASE("random LPs: optimal solutions are feasible and match a vertex scan") {
    // max c.z over a random bounded polytope equals the max over its vertices.
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    int solved = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const HPolytope h = testing::random_bounded_hpolytope(rng, dim(rng), 12);
        LinearProgram lp;
        lp.objective = RVector(h.dim);
        for (auto& c : lp.objective) c = testing::small_rational(rng, -3, 3);
        for (const auto& ineq : h.inequalities) lp.add(ineq.normal, Relation::less_equal, ineq.offset);
        const LPResult r = simplex_solve(lp);
        const auto vertices = brute_force_vertices(h);
        if (vertices.empty()) {
            CHECK(r.status == LPStatus::infeasible);
            continue;
        }
        REQUIRE(r.status == LPStatus::optimal);
        CHECK(satisfies(lp, *r.solution));
        CHECK(dot(lp.objective, *r.solution) == *r.optimum);
        Rational best = dot(lp.objective, vertices.front());
        for (const auto& v : vertices) best = std::max(best, dot(lp.objective, v));
        CHECK(*r.optimum == best);
        ++solved;
    }
    CHECK(solved > 100);
}

TEST_CASE("degenerate LP terminates") {
    // Many redundant constraints through the optimum.
    LinearProgram lp;
    lp.objective = RVector{1, 1, 1};
    lp.nonnegative();
    for (int k = 1; k <= 12; ++k) lp.add(RVector{k, 1, 13 - k}, Relation::less_equal, 0);
    lp.add(RVector{1, 1, 1}, Relation::less_equal, 1);
    const LPResult r = simplex_solve(lp);
    CHECK(r.status == LPStatus::optimal);
    CHECK(*r.optimum == 0);
}

TEST_CASE("membership examples and certificates") {
    const Scenario s = Scenario::make(2, 2, 2, 2);
    const VPolytope local = enumerate_local_vertices(s);

    RVector uniform(8);
    for (std::size_t i = 0; i < 4; ++i) uniform[i] = kHalf;
    for (std::size_t i = 4; i < 8; ++i) uniform[i] = Rational::canonicalize(1, 4);
    const MembershipResult u = membership(local, ReducedPoint(s, uniform));
    CHECK(u.inside);
    RVector mix(8);
    for (std::size_t i = 0; i < 16; ++i) mix = mix + u.weights[i] * local.vertices[i];
    CHECK(mix == uniform);

    for (std::size_t i = 0; i < local.vertices.size(); ++i) CHECK(membership(local, local.vertex(i)).inside);

    const MembershipResult pr = membership(local, pr_box());
    CHECK_FALSE(pr.inside);
    CHECK(dot(pr.separator_normal, pr_box().coords) > pr.separator_offset);
    for (const auto& v : local.vertices) CHECK(dot(pr.separator_normal, v) <= pr.separator_offset);

    // CHSH in correlator form stays at most 2 on local vertices and reaches 4 at the PR box.
    auto chsh = [](const RVector& z) {
        auto e = [&](std::size_t x, std::size_t y) {
            const Rational& pa = z[x];
            const Rational& pb = z[2 + y];
            const Rational& p00 = z[4 + 2 * x + y];
            return Rational(4) * p00 - Rational(2) * pa - Rational(2) * pb + 1;
        };
        return e(0, 0) + e(0, 1) + e(1, 0) - e(1, 1);
    };
    for (const auto& v : local.vertices) CHECK(abs(chsh(v)) <= 2);
    CHECK(chsh(pr_box().coords) == 4);

    CHECK_THROWS_AS(membership(local, ReducedPoint(Scenario::make(3, 2, 2, 2))), std::invalid_argument);
}

TEST_CASE("HullMembership agrees with the one-shot test") {
    std::mt19937 rng(4);
    const Scenario s = Scenario::make(2, 2, 2, 2);
    const VPolytope local = enumerate_local_vertices(s);
    const VPolytope ns = ns_polytope(s);
    const HullMembership hull(local.vertices);
    for (int i = 0; i < 40; ++i) {
        const RVector x = testing::random_mixture(rng, ns.vertices, 2);
        const bool inside = membership(local, ReducedPoint(s, x)).inside;
        CHECK(hull.contains(x) == inside);
        CHECK(hull.test(x).inside == inside);
    }
}

TEST_CASE("distance examples") {
    const std::vector<RVector> segment{{0, 0}, {1, 0}};
    const DistanceResult a = distance_l1(segment, RVector{2, 0});
    CHECK(a.distance == 1);
    CHECK(a.witness == RVector{1, 0});
    check_witness(segment, a);
    const DistanceResult b = distance_linf(segment, RVector{2, 1});
    CHECK(b.distance == 1);
    check_witness(segment, b);
    CHECK(distance_l1(segment, RVector{kHalf, 0}).distance == 0);
    CHECK(distance_linf(segment, RVector{kHalf, 0}).distance == 0);
    CHECK_THROWS_AS(distance_l1(segment, RVector{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("PR box distance against independent oracles") {
    const Scenario s = Scenario::make(2, 2, 2, 2);
    const VPolytope local = enumerate_local_vertices(s);
    const DistanceResult d1 = distance_l1(local, pr_box());
    const DistanceResult dinf = distance_linf(local, pr_box());
    CHECK(d1.distance > 0);
    CHECK(d1.distance == testing::generic_l1_distance(local.vertices, pr_box().coords));
    CHECK(d1.distance == testing::full_space_l1_distance(s, pr_box().coords));
    CHECK(l1(d1.witness, pr_box().coords) == d1.distance);
    CHECK(linf(dinf.witness, pr_box().coords) == dinf.distance);
    check_witness(local.vertices, d1);
    check_witness(local.vertices, dinf);
    CHECK(dinf.distance <= d1.distance);
    CHECK(d1.distance <= Rational(8) * dinf.distance);
}

TEST_CASE("membership iff zero distance, and the norm sandwich, on random points") {
    std::mt19937 rng(2718);
    const Scenario s = Scenario::make(2, 2, 2, 2);
    const VPolytope local = enumerate_local_vertices(s);
    const VPolytope ns = ns_polytope(s);
    const Rational dim(static_cast<long>(s.dimension()));
    int inside_count = 0;
    for (int i = 0; i < 50; ++i) {
        const RVector x = testing::random_mixture(rng, ns.vertices, 2);
        const bool inside = membership(local, ReducedPoint(s, x)).inside;
        const DistanceResult d1 = distance_l1(local, ReducedPoint(s, x));
        const DistanceResult dinf = distance_linf(local, ReducedPoint(s, x));
        CHECK(inside == d1.distance.is_zero());
        CHECK(inside == dinf.distance.is_zero());
        CHECK(dinf.distance <= d1.distance);
        CHECK(d1.distance <= dim * dinf.distance);
        CHECK(l1(d1.witness, x) == d1.distance);
        CHECK(linf(dinf.witness, x) == dinf.distance);
        if (i < 10) CHECK(d1.distance == testing::generic_l1_distance(local.vertices, x));
        inside_count += inside ? 1 : 0;
    }
    CHECK(inside_count > 0);
    CHECK(inside_count < 50);
}

TEST_CASE("ray exit gives a valid supporting hyperplane") {
    std::mt19937 rng(31);
    const Scenario s = Scenario::make(2, 2, 2, 2);
    const VPolytope local = enumerate_local_vertices(s);
    const VPolytope ns = ns_polytope(s);
    const HullMembership hull(local.vertices);
    RVector center(8);
    for (const auto& v : local.vertices) center = center + Rational::canonicalize(1, 16) * v;

    for (int i = 0; i < 20; ++i) {
        const RVector target = testing::random_mixture(rng, ns.vertices, 2);
        const RVector dir = target - center;
        if (dir == RVector(8)) continue;
        const auto exit = hull.ray_exit(center, dir);
        REQUIRE(exit);
        const RVector at = center + exit->t * dir;
        CHECK(hull.contains(at));
        CHECK_FALSE(hull.contains(center + (exit->t + dyadic(30)) * dir));
        for (const auto& v : local.vertices) CHECK(dot(exit->normal, v) <= exit->offset);
        CHECK(dot(exit->normal, at) == exit->offset);
        CHECK(dot(exit->normal, dir) > 0);
    }
    CHECK_FALSE(hull.ray_exit(pr_box().coords, pr_box().coords - center));
    CHECK_THROWS_AS(hull.ray_exit(center, RVector(8)), std::invalid_argument);
}
