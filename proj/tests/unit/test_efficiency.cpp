#include "bellpoly/efficiency.hpp"
#include "bellpoly/localpoly.hpp"
#include "bellpoly/nosignal.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

using namespace bellpoly;

namespace {

const Scenario k22 = Scenario::make(2, 2, 2, 2);
const Rational kHalf = Rational::canonicalize(1, 2);
const Rational kTwoThirds = Rational::canonicalize(2, 3);

ReducedPoint pr_box() { return ReducedPoint(k22, RVector{kHalf, kHalf, kHalf, kHalf, kHalf, kHalf, kHalf, 0}); }

std::size_t index_of(const VPolytope& v, const RVector& z) {
    return static_cast<std::size_t>(std::find(v.vertices.begin(), v.vertices.end(), z) - v.vertices.begin());
}

// The exact threshold lies in [t_inside, t_outside).
void check_bracket(const CriticalResult& r, const Rational& exact, const Rational& tol = dyadic(20)) {
    CHECK(r.t_inside <= exact);
    CHECK(exact < r.t_outside);
    CHECK(r.t_outside - r.t_inside <= tol);
    CHECK(r.critical_t == (r.t_inside + r.t_outside) / Rational(2));
}

}  // namespace

TEST_CASE("model construction") {
    const auto merged = EfficiencyModel::make(ModelKind::merged, k22);
    CHECK(merged.target == k22);
    const auto extra = EfficiencyModel::make(ModelKind::extra_outcome, Scenario::make(3, 2, 2, 3));
    CHECK(extra.target == Scenario::make(3, 2, 3, 4));
    CHECK(parse_model("extra") == ModelKind::extra_outcome);
    CHECK(parse_model("merged") == ModelKind::merged);
    CHECK_THROWS_AS(parse_model("other"), std::invalid_argument);
}

TEST_CASE("paths") {
    CHECK(EfficiencyPath::parse("symmetric").at(kHalf) == std::pair{kHalf, kHalf});
    CHECK(EfficiencyPath::parse("asymmetric").at(kHalf) == std::pair{Rational(1), kHalf});
    CHECK(EfficiencyPath::parse("bob-perfect").at(kHalf) == std::pair{kHalf, Rational(1)});
    const auto fixed = EfficiencyPath::parse("eta1=3/4");
    CHECK(fixed.at(kHalf) == std::pair{Rational::canonicalize(3, 4), kHalf});
    CHECK(fixed.str() == "eta1=3/4");
    CHECK_THROWS_AS(EfficiencyPath::parse("eta1=5/4"), std::invalid_argument);
    CHECK_THROWS_AS(EfficiencyPath::parse("sideways"), std::invalid_argument);
    CHECK(table1_one_sided_path(Scenario::make(4, 3, 2, 2)).kind == EfficiencyPath::Kind::bob_perfect);
    CHECK(table1_one_sided_path(Scenario::make(3, 3, 2, 2)).kind == EfficiencyPath::Kind::alice_perfect);
}

TEST_CASE("merged map examples") {
    const auto m = EfficiencyModel::make(ModelKind::merged, k22);
    CHECK(apply_merged(m, 1, 1, pr_box()) == pr_box());
    CHECK(apply_merged(m, 0, 0, pr_box()) == ReducedPoint(k22));
    const ReducedPoint half = apply_merged(m, kHalf, kHalf, pr_box());
    for (std::size_t i = 0; i < 4; ++i) CHECK(half.coords[i] == Rational::canonicalize(1, 4));
    for (std::size_t i = 4; i < 7; ++i) CHECK(half.coords[i] == Rational::canonicalize(1, 8));
    CHECK(half.coords[7] == 0);
    CHECK_THROWS_AS(apply_merged(m, Rational(2), kHalf, pr_box()), std::invalid_argument);
    CHECK_THROWS_AS(apply_merged(m, kHalf, Rational(-1), pr_box()), std::invalid_argument);
}

TEST_CASE("extra-outcome map examples") {
    const auto m = EfficiencyModel::make(ModelKind::extra_outcome, k22);
    const Scenario t = m.target;
    const FullPoint ideal = from_reduced(pr_box()).point;

    const FullPoint perfect = from_reduced(apply_extra_outcome(m, 1, 1, pr_box())).point;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    const Rational expect = (a < 2 && b < 2) ? ideal.at(a, b, x, y) : Rational(0);
                    CHECK(perfect.at(a, b, x, y) == expect);
                }

    // Alice never clicks, Bob always does.
    const FullPoint blind = from_reduced(apply_extra_outcome(m, 0, 1, pr_box())).point;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            for (int b = 0; b < 2; ++b) CHECK(blind.at(2, b, x, y) == kHalf);
            CHECK(blind.at(2, 2, x, y) == 0);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 3; ++b) CHECK(blind.at(a, b, x, y) == 0);
        }
    CHECK(t == Scenario::make(2, 2, 3, 3));
    CHECK_THROWS_AS(apply_extra_outcome(m, kHalf, Rational::canonicalize(3, 2), pr_box()), std::invalid_argument);
}

TEST_CASE("both maps give normalized no-signaling tables at random parameters") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> num(0, 12);
    for (const ModelKind kind : {ModelKind::merged, ModelKind::extra_outcome}) {
        for (const Scenario base : {k22, Scenario::make(3, 2, 2, 3)}) {
            const auto m = EfficiencyModel::make(kind, base);
            const VPolytope ns = ns_polytope(base);
            for (int i = 0; i < 25; ++i) {
                const Rational e1 = Rational::canonicalize(num(rng), 12);
                const Rational e2 = Rational::canonicalize(num(rng), 12);
                const ReducedPoint p(base, testing::random_mixture(rng, ns.vertices, 3));
                const ReducedPoint q = apply_model(m, e1, e2, p);
                REQUIRE(q.scenario == m.target);
                const Reconstruction full = from_reduced(q);
                CHECK(full.valid);
                CHECK(full.point.is_probability());
                // to_reduced re-derives every marginal from each input of the other party.
                CHECK(to_reduced(full.point) == q);
            }
        }
    }
}

TEST_CASE("inefficiency cannot create nonlocality") {
    for (const ModelKind kind : {ModelKind::merged, ModelKind::extra_outcome}) {
        const auto m = EfficiencyModel::make(kind, k22);
        const VPolytope local = enumerate_local_vertices(k22);
        const HullMembership target(enumerate_local_vertices(m.target).vertices);
        const auto grid = uniform_grid(0, 1, 4);
        for (const auto& v : local.vertices)
            for (const auto& e1 : grid)
                for (const auto& e2 : grid) CHECK(target.contains(apply_model(m, e1, e2, ReducedPoint(k22, v)).coords));
    }
}

TEST_CASE("uniform grid") {
    const auto g = uniform_grid(Rational::canonicalize(3, 5), Rational::canonicalize(3, 4), 11);
    REQUIRE(g.size() == 11);
    CHECK(g.front() == Rational::canonicalize(3, 5));
    CHECK(g.back() == Rational::canonicalize(3, 4));
    CHECK(g[1] - g[0] == Rational::canonicalize(3, 200));
    CHECK_THROWS_AS(uniform_grid(0, 1, 1), std::invalid_argument);
}

TEST_CASE("critical values for two inputs per party") {
    const VPolytope ns = ns_polytope(k22);
    const CriticalSolver merged(EfficiencyModel::make(ModelKind::merged, k22), ns);
    const CriticalSolver extra(EfficiencyModel::make(ModelKind::extra_outcome, k22), ns);

    const CriticalResult sym = merged.solve(EfficiencyPath::symmetric());
    check_bracket(sym, kTwoThirds);
    CHECK(sym.critical_t.to_decimal(4) == "0.6667");
    CHECK_FALSE(merged.inside(sym.binding_vertex, EfficiencyPath::symmetric(), sym.t_outside));
    CHECK(merged.inside(sym.binding_vertex, EfficiencyPath::symmetric(), sym.t_inside));

    check_bracket(extra.solve(EfficiencyPath::symmetric()), kTwoThirds);
    check_bracket(merged.solve(EfficiencyPath::alice_perfect()), kHalf);
    check_bracket(extra.solve(EfficiencyPath::alice_perfect()), kHalf);

    const CriticalResult direct = critical_eta(k22, ModelKind::merged, EfficiencyPath::symmetric());
    CHECK(direct.critical_t == sym.critical_t);
    CHECK(direct.binding_vertex == sym.binding_vertex);

    // Tie rule: the binding vertex is the lowest index reaching the minimum.
    CriticalOptions no_sym;
    no_sym.use_symmetry = false;
    const CriticalResult plain = CriticalSolver(merged.model(), ns, no_sym).solve(EfficiencyPath::symmetric());
    CHECK(plain.binding_vertex == sym.binding_vertex);
    CHECK(plain.critical_t == sym.critical_t);
}

TEST_CASE("perfect detectors reproduce plain membership") {
    const VPolytope ns = ns_polytope(k22);
    const CriticalSolver merged(EfficiencyModel::make(ModelKind::merged, k22), ns);
    const VPolytope local = enumerate_local_vertices(k22);
    for (std::size_t i = 0; i < ns.vertices.size(); ++i) {
        CHECK(merged.inside(i, EfficiencyPath::symmetric(), 1) == membership(local, ns.vertex(i)).inside);
    }
}

TEST_CASE("no violation on an all-local vertex set") {
    VPolytope local = enumerate_local_vertices(k22);
    local.label = PolytopeLabel::nosignaling;
    const CriticalSolver solver(EfficiencyModel::make(ModelKind::merged, k22), local);
    CHECK_THROWS_AS(solver.solve(EfficiencyPath::symmetric()), NoViolationError);
}

TEST_CASE("critical values with three inputs on one side") {
    const VPolytope ns = ns_polytope(Scenario::make(3, 2, 2, 2));
    const Table1Row row = table1_row(ns);
    CHECK(row.inputs == std::pair{3, 2});
    check_bracket(row.cells[0], kTwoThirds);
    check_bracket(row.cells[1], kTwoThirds);
    check_bracket(row.cells[2], kHalf);
    check_bracket(row.cells[3], kHalf);
    CHECK(row.cells[0].model.kind == ModelKind::extra_outcome);
    CHECK(row.cells[1].model.kind == ModelKind::merged);
}

TEST_CASE("distance along the symmetric path") {
    const VPolytope ns = ns_polytope(k22);
    const CriticalSolver merged(EfficiencyModel::make(ModelKind::merged, k22), ns);
    const std::size_t pr = index_of(ns, pr_box().coords);
    REQUIRE(pr < ns.vertices.size());
    const auto samples = distance_vs_eta(merged, pr, uniform_grid(Rational::canonicalize(3, 5), 1, 9));
    for (const auto& s : samples) {
        CHECK((s.eta <= kTwoThirds) == s.l1.is_zero());
        CHECK((s.eta <= kTwoThirds) == s.linf.is_zero());
        CHECK(s.linf <= s.l1);
    }
    CHECK(samples.back().l1 == distance_l1(enumerate_local_vertices(k22), pr_box()).distance);
    CHECK_THROWS_AS(distance_vs_eta(merged, ns.vertices.size(), {kHalf}), std::out_of_range);
}

TEST_CASE("efficiency curve with two inputs per party") {
    const VPolytope ns = ns_polytope(k22);
    const CriticalSolver merged(EfficiencyModel::make(ModelKind::merged, k22), ns);
    const EfficiencyCurve curve = efficiency_curve(merged, 11);
    REQUIRE(curve.points.size() == 11);
    CHECK(curve.points.back().eta1 == 1);
    CHECK(curve.points.back().exact_eta2 == kHalf);
    CHECK(curve.points.back().result.critical_t.to_decimal(4) == "0.5000");
    check_bracket(curve.points.front().result, curve.points.front().exact_eta2);
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        CHECK(curve.points[i].eta1 < curve.points[i + 1].eta1);
        CHECK(curve.points[i + 1].exact_eta2 <= curve.points[i].exact_eta2);
    }
    // The curve crosses the diagonal at 2/3: eta2 >= eta1 below, eta2 <= eta1 above.
    for (const auto& p : curve.points) {
        if (p.eta1 < kTwoThirds) CHECK(p.exact_eta2 > p.eta1);
        if (p.eta1 > kTwoThirds) CHECK(p.exact_eta2 < p.eta1);
    }
    CHECK_THROWS_AS(efficiency_curve(merged, 1), std::invalid_argument);
}
