// Vertex and half-space polytope representations.

#ifndef BELLPOLY_POLYTOPE_HPP
#define BELLPOLY_POLYTOPE_HPP

#include "bellpoly/scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bellpoly {

enum class PolytopeLabel { local, nosignaling };

std::string_view to_string(PolytopeLabel label);
PolytopeLabel parse_label(std::string_view text);

/// Vertex list of a correlation polytope in reduced coordinates.
struct VPolytope {
    Scenario scenario;
    PolytopeLabel label = PolytopeLabel::local;
    std::vector<RVector> vertices;

    std::size_t dimension() const { return scenario.dimension(); }
    ReducedPoint vertex(std::size_t i) const { return ReducedPoint(scenario, vertices.at(i)); }
};

/// normal . z <= offset
struct Inequality {
    RVector normal;
    Rational offset;
};

struct HPolytope {
    std::size_t dim = 0;
    std::vector<Inequality> inequalities;

    /// Throws std::invalid_argument if a normal has the wrong length.
    void check_shape() const;
    bool contains(const RVector& z) const;
    /// Indices of inequalities holding with equality at z.
    std::vector<std::size_t> tight_set(const RVector& z) const;
};

}  // namespace bellpoly

#endif  // BELLPOLY_POLYTOPE_HPP
