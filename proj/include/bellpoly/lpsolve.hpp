// Exact rational linear programming and polytope distance queries.

#ifndef BELLPOLY_LPSOLVE_HPP
#define BELLPOLY_LPSOLVE_HPP

#include "bellpoly/polytope.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace bellpoly {

enum class Relation { less_equal, equal, greater_equal };

struct LinearConstraint {
    RVector row;
    Relation relation = Relation::less_equal;
    Rational rhs;
};

/**
 * maximize objective . z subject to the constraints and optional variable bounds.
 *
 * `lower`/`upper` are either empty (every variable free) or have one entry
 * per variable; std::nullopt means no bound on that side.
 */
struct LinearProgram {
    RVector objective;
    std::vector<LinearConstraint> constraints;
    std::vector<std::optional<Rational>> lower;
    std::vector<std::optional<Rational>> upper;

    std::size_t num_vars() const { return objective.size(); }
    void add(RVector row, Relation rel, Rational rhs) { constraints.push_back({std::move(row), rel, std::move(rhs)}); }
    /// Sets every variable's lower bound to zero.
    void nonnegative();
};

enum class LPStatus { optimal, infeasible, unbounded };
std::string_view to_string(LPStatus status);

struct LPResult {
    LPStatus status = LPStatus::infeasible;
    std::optional<Rational> optimum;
    std::optional<RVector> solution;
};

/// Two-phase revised simplex over exact rationals; terminates on every input (anti-cycling ratio test).
LPResult simplex_solve(const LinearProgram& lp);

struct MembershipResult {
    bool inside = false;
    /// Convex weights over the vertices when inside.
    RVector weights;
    /// When outside: normal . x > offset >= normal . v for every vertex v.
    RVector separator_normal;
    Rational separator_offset;
};

/**
 * Decides whether x is a convex combination of the vertices of v.
 *
 * Solved as a phase-1 feasibility problem; the infeasibility certificate is
 * turned into a strictly separating hyperplane. Throws std::invalid_argument
 * on a scenario or dimension mismatch.
 */
MembershipResult membership(const VPolytope& v, const ReducedPoint& x);

/// Same test against a bare vertex matrix (one RVector per vertex).
MembershipResult membership(const std::vector<RVector>& vertices, const RVector& x);

namespace detail {
struct SparseColumn;
}

/// Last point of a ray inside a polytope and a supporting hyperplane there.
struct RayExit {
    Rational t;         ///< largest t with origin + t*direction in the hull
    RVector normal;     ///< normal . v <= offset for every vertex, equality at the exit point
    Rational offset;
};

/// Reusable membership test against a fixed vertex set; builds the LP columns once.
class HullMembership {
  public:
    explicit HullMembership(std::vector<RVector> vertices);
    ~HullMembership();
    HullMembership(HullMembership&&) noexcept;
    HullMembership& operator=(HullMembership&&) noexcept;

    MembershipResult test(const RVector& x) const;
    /// Same decision without building weights or a certificate.
    bool contains(const RVector& x) const;
    /**
     * Maximizes t subject to origin + t*direction in the hull, t >= 0.
     *
     * nullopt when the origin lies outside. The hyperplane comes from the
     * optimal duals, scaled to coprime integers; when the exit point is in
     * the relative interior of a facet it is that facet. Throws
     * std::invalid_argument for a zero direction.
     */
    std::optional<RayExit> ray_exit(const RVector& origin, const RVector& direction) const;
    const std::vector<RVector>& vertices() const { return vertices_; }

  private:
    std::vector<RVector> vertices_;
    std::vector<detail::SparseColumn> columns_;
};

struct DistanceResult {
    Rational distance;
    RVector witness;  ///< nearest polytope point C.w
    RVector weights;
};

/// min over y in conv(v) of |y - x|_1.
DistanceResult distance_l1(const VPolytope& v, const ReducedPoint& x);
DistanceResult distance_l1(const std::vector<RVector>& vertices, const RVector& x);

/// min over y in conv(v) of |y - x|_inf.
DistanceResult distance_linf(const VPolytope& v, const ReducedPoint& x);
DistanceResult distance_linf(const std::vector<RVector>& vertices, const RVector& x);

}  // namespace bellpoly

#endif  // BELLPOLY_LPSOLVE_HPP
