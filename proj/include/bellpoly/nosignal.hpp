// No-signaling polytope: half-space description and exact vertex enumeration.

#ifndef BELLPOLY_NOSIGNAL_HPP
#define BELLPOLY_NOSIGNAL_HPP

#include "bellpoly/polytope.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bellpoly {

/// Bumped whenever build_ns_hrep changes; part of the vertex cache key.
inline constexpr int kNsHrepVersion = 1;

/// Thrown by dd_convert when the input polyhedron is unbounded.
class UnboundedPolyhedron : public std::domain_error {
  public:
    UnboundedPolyhedron() : std::domain_error("polytope has rays") {}
};

/**
 * One inequality per full-space cell P(ab|xy) >= 0, written as
 * -form(z) <= constant where form is the cell's reconstruction from reduced
 * coordinates. Cells are emitted in Scenario::cell_index order.
 */
HPolytope build_ns_hrep(const Scenario& s);

enum class Boundedness { bounded, unbounded, empty };

/// Maximizes and minimizes every coordinate by LP.
Boundedness check_bounded(const HPolytope& h);

/**
 * Vertices of a bounded H-polytope by the double description method.
 *
 * Works on the homogenized cone {(t, z) : t*offset - normal.z >= 0, t >= 0}
 * in exact integer arithmetic, starting from a simplicial cone spanned by
 * `dim + 1` independent rows and inserting the remaining rows in the given
 * order. Adjacency uses the combinatorial zero-set test.
 * Output is sorted lexicographically. An empty polytope yields no vertices.
 * Throws UnboundedPolyhedron for unbounded input.
 */
std::vector<RVector> dd_convert(const HPolytope& h);

inline constexpr std::uint64_t kDefaultBruteForceCap = 5'000'000;

/**
 * Reference vertex enumeration: solve every dim-subset of inequalities as
 * equalities and keep unique feasible solutions. Throws std::length_error
 * when the number of subsets exceeds `cap`.
 */
std::vector<RVector> brute_force_vertices(const HPolytope& h, std::uint64_t cap = kDefaultBruteForceCap);

/// V-representation of the no-signaling polytope of `s` (no caching).
VPolytope ns_polytope(const Scenario& s);

}  // namespace bellpoly

#endif  // BELLPOLY_NOSIGNAL_HPP
