// Bipartite correlation scenarios and the reduced marginal/joint basis.
//
// Inputs and outputs are 0-based. For each party the last output
// (na-1 for Alice, nb-1 for Bob) is the eliminated one. Reduced coordinates
// are laid out as
//
//   [ P_A(a|x)   for x < nx, a < na-1      (x major)
//     P_B(b|y)   for y < ny, b < nb-1      (y major)
//     P(ab|xy)   for x, y, a < na-1, b < nb-1  (x, y, a, b major to minor) ]

#ifndef BELLPOLY_SCENARIO_HPP
#define BELLPOLY_SCENARIO_HPP

#include "bellpoly/linalg.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bellpoly {

struct Scenario {
    int nx = 2;
    int ny = 2;
    int na = 2;
    int nb = 2;

    /// Throws std::invalid_argument unless nx, ny >= 1 and na, nb >= 2.
    static Scenario make(int nx, int ny, int na, int nb);
    /// Parses "nx,ny,na,nb".
    static Scenario parse(std::string_view text);

    std::size_t dimension() const;
    std::size_t full_size() const { return static_cast<std::size_t>(nx * ny * na * nb); }

    std::size_t alice_index(int a, int x) const { return static_cast<std::size_t>(x * (na - 1) + a); }
    std::size_t bob_index(int b, int y) const {
        return static_cast<std::size_t>(nx * (na - 1) + y * (nb - 1) + b);
    }
    std::size_t joint_index(int a, int b, int x, int y) const {
        return static_cast<std::size_t>(nx * (na - 1) + ny * (nb - 1) +
                                        ((x * ny + y) * (na - 1) + a) * (nb - 1) + b);
    }
    std::size_t cell_index(int a, int b, int x, int y) const {
        return static_cast<std::size_t>(((x * ny + y) * na + a) * nb + b);
    }

    std::string str() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
    friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

std::size_t reduced_dimension(const Scenario& s);

/// Joint table P(ab|xy), stored in Scenario::cell_index order.
struct FullPoint {
    Scenario scenario;
    std::vector<Rational> probs;

    explicit FullPoint(const Scenario& s) : scenario(s), probs(s.full_size()) {}
    Rational& at(int a, int b, int x, int y) { return probs[scenario.cell_index(a, b, x, y)]; }
    const Rational& at(int a, int b, int x, int y) const { return probs[scenario.cell_index(a, b, x, y)]; }

    /// Non-negative and normalized for every input pair.
    bool is_probability() const;
    friend bool operator==(const FullPoint&, const FullPoint&) = default;
};

struct ReducedPoint {
    Scenario scenario;
    RVector coords;

    explicit ReducedPoint(const Scenario& s) : scenario(s), coords(s.dimension()) {}
    ReducedPoint(const Scenario& s, RVector c);

    friend bool operator==(const ReducedPoint&, const ReducedPoint&) = default;
};

/**
 * Maps a no-signaling table to reduced coordinates.
 *
 * Throws std::invalid_argument if some (x, y) block is not normalized, or
 * if a marginal depends on the other party's input; the message names the
 * offending output and input pair.
 */
ReducedPoint to_reduced(const FullPoint& p);

struct Reconstruction {
    FullPoint point;
    bool valid;  ///< every reconstructed cell is non-negative
};

/// Rebuilds all cells from reduced coordinates. Never throws; negative cells clear `valid`.
Reconstruction from_reduced(const ReducedPoint& r);

/// Affine form `constant + coeffs . z` of one full-space cell in reduced coordinates.
struct CellForm {
    RVector coeffs;
    Rational constant;
};

CellForm cell_form(const Scenario& s, int a, int b, int x, int y);

}  // namespace bellpoly

#endif  // BELLPOLY_SCENARIO_HPP
