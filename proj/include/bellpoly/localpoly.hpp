// Local (Bell) polytope from deterministic local strategies.

#ifndef BELLPOLY_LOCALPOLY_HPP
#define BELLPOLY_LOCALPOLY_HPP

#include "bellpoly/polytope.hpp"

#include <cstdint>
#include <vector>

namespace bellpoly {

/// Deterministic local strategy: Alice answers fa[x], Bob answers fb[y].
struct TransferFunction {
    std::vector<int> fa;
    std::vector<int> fb;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Throws std::invalid_argument if `f` does not fit the scenario.
ReducedPoint vertex_from_strategy(const Scenario& s, const TransferFunction& f);

/// Number of local strategies na^nx * nb^ny, saturating at UINT64_MAX.
std::uint64_t local_vertex_count(const Scenario& s);

/**
 * All na^nx * nb^ny local deterministic vertices, lexicographic in (fa, fb)
 * with fa[0] most significant. Throws std::length_error when the count
 * exceeds `cap`.
 */
VPolytope enumerate_local_vertices(const Scenario& s, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace bellpoly

#endif  // BELLPOLY_LOCALPOLY_HPP
