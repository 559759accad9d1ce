#include "bellpoly/localpoly.hpp"
#include "bellpoly/nosignal.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <set>
#include <stdexcept>

using namespace bellpoly;

namespace {

// 0/1 coordinates and joint = product of the two marginals, with the
// eliminated output's marginal recovered as 1 - sum of the kept ones.
void check_zero_one_product(const Scenario& s, const RVector& v) {
    for (const auto& c : v) CHECK((c == 0 || c == 1));
    for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
            for (int a = 0; a + 1 < s.na; ++a)
                for (int b = 0; b + 1 < s.nb; ++b) {
                    CHECK(v[s.joint_index(a, b, x, y)] == v[s.alice_index(a, x)] * v[s.bob_index(b, y)]);
                }
}

}  // namespace

TEST_CASE("vertex_from_strategy examples") {
    const Scenario s = Scenario::make(2, 2, 2, 2);
    for (const auto& c : vertex_from_strategy(s, {{0, 0}, {0, 0}}).coords) CHECK(c == 1);
    for (const auto& c : vertex_from_strategy(s, {{1, 1}, {1, 1}}).coords) CHECK(c == 0);
    const ReducedPoint mixed = vertex_from_strategy(s, {{0, 1}, {0, 1}});
    CHECK(mixed.coords == RVector{1, 0, 1, 0, 1, 0, 0, 0});
    CHECK_THROWS_AS(vertex_from_strategy(s, {{0, 2}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(vertex_from_strategy(s, {{0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_local_vertices(Scenario::make(2, 2, 2, 2)).vertices.size() == 16);
    CHECK(enumerate_local_vertices(Scenario::make(3, 2, 2, 2)).vertices.size() == 32);
    CHECK(enumerate_local_vertices(Scenario::make(3, 3, 3, 3)).vertices.size() == 729);
    CHECK(local_vertex_count(Scenario::make(4, 3, 3, 3)) == 2187);
    CHECK_THROWS_AS(enumerate_local_vertices(Scenario::make(3, 3, 3, 3), 700), std::length_error);
}

TEST_CASE("every local vertex is 0/1 with product joints, distinct, and in strategy order") {
    for (const Scenario s : {Scenario::make(2, 2, 2, 2), Scenario::make(3, 2, 2, 2), Scenario::make(3, 3, 2, 2),
                             Scenario::make(4, 3, 2, 2), Scenario::make(2, 2, 3, 3), Scenario::make(3, 3, 3, 3)}) {
        const VPolytope l = enumerate_local_vertices(s);
        CHECK(l.label == PolytopeLabel::local);
        CHECK(testing::as_set(l.vertices).size() == l.vertices.size());
        for (const auto& v : l.vertices) check_zero_one_product(s, v);
    }
    // Strategy order: fa[0] most significant, fb last.
    const Scenario s = Scenario::make(2, 2, 2, 2);
    const VPolytope l = enumerate_local_vertices(s);
    CHECK(l.vertices[0] == vertex_from_strategy(s, {{0, 0}, {0, 0}}).coords);
    CHECK(l.vertices[1] == vertex_from_strategy(s, {{0, 0}, {0, 1}}).coords);
    CHECK(l.vertices[4] == vertex_from_strategy(s, {{0, 1}, {0, 0}}).coords);
    CHECK(l.vertices[15] == vertex_from_strategy(s, {{1, 1}, {1, 1}}).coords);
}

TEST_CASE("reduced-basis vertices match the full-table construction") {
    const Scenario s = Scenario::make(2, 3, 3, 2);
    for (int a0 = 0; a0 < 3; ++a0)
        for (int a1 = 0; a1 < 3; ++a1)
            for (int b0 = 0; b0 < 2; ++b0)
                for (int b2 = 0; b2 < 2; ++b2) {
                    const TransferFunction f{{a0, a1}, {b0, 1 - b0, b2}};
                    CHECK(vertex_from_strategy(s, f) == testing::local_vertex_via_full_table(s, f));
                }
}

TEST_CASE("sandwich: local vertices satisfy the no-signaling inequalities") {
    for (const auto& [nx, ny] : {std::pair{2, 2}, {3, 2}, {3, 3}, {4, 3}}) {
        for (const int outs : {2, 3}) {
            const Scenario s = Scenario::make(nx, ny, outs, outs);
            const HPolytope h = build_ns_hrep(s);
            for (const auto& v : enumerate_local_vertices(s).vertices) CHECK(h.contains(v));
        }
    }
}
