// Detector-inefficiency maps and critical detection efficiencies.

#ifndef BELLPOLY_EFFICIENCY_HPP
#define BELLPOLY_EFFICIENCY_HPP

#include "bellpoly/lpsolve.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bellpoly {

enum class ModelKind {
    merged,         ///< no-click binned into each party's last output
    extra_outcome,  ///< no-click is a new last output per party
};

std::string_view to_string(ModelKind kind);
/// Accepts "merged", "extra" and "extra_outcome".
ModelKind parse_model(std::string_view text);

struct EfficiencyModel {
    ModelKind kind = ModelKind::merged;
    Scenario base;
    Scenario target;

    static EfficiencyModel make(ModelKind kind, const Scenario& base);
};

/// A one-parameter family t -> (eta1, eta2), t in [0, 1].
struct EfficiencyPath {
    enum class Kind {
        symmetric,       ///< (t, t)
        alice_perfect,   ///< (1, t)
        bob_perfect,     ///< (t, 1)
        fixed_eta1,      ///< (value, t)
    };
    Kind kind = Kind::symmetric;
    Rational value = 1;

    static EfficiencyPath symmetric() { return {Kind::symmetric, 1}; }
    static EfficiencyPath alice_perfect() { return {Kind::alice_perfect, 1}; }
    static EfficiencyPath bob_perfect() { return {Kind::bob_perfect, 1}; }
    /// Throws std::invalid_argument unless 0 <= eta1 <= 1.
    static EfficiencyPath fixed_eta1(const Rational& eta1);
    /// "symmetric", "asymmetric" (Alice perfect), "bob-perfect" or "eta1=<p/q>".
    static EfficiencyPath parse(std::string_view text);

    std::pair<Rational, Rational> at(const Rational& t) const;
    std::string str() const;
};

/// Scales marginals by eta1 / eta2 and joints by eta1*eta2. Throws on eta outside [0, 1].
ReducedPoint apply_merged(const EfficiencyModel& model, const Rational& eta1, const Rational& eta2,
                          const ReducedPoint& p);

/// Embeds p into the scenario with a no-click output per party. Throws on eta outside [0, 1].
ReducedPoint apply_extra_outcome(const EfficiencyModel& model, const Rational& eta1, const Rational& eta2,
                                 const ReducedPoint& p);

/// Dispatches on model.kind.
ReducedPoint apply_model(const EfficiencyModel& model, const Rational& eta1, const Rational& eta2,
                         const ReducedPoint& p);

/// No vertex leaves the local polytope anywhere on the path.
class NoViolationError : public std::runtime_error {
  public:
    NoViolationError() : std::runtime_error("no violation possible on this path") {}
};

/// Membership was found to be non-monotone along the path.
class MonotonicityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CriticalResult {
    EfficiencyModel model;
    EfficiencyPath path;
    Rational critical_t;  ///< bracket midpoint
    Rational t_inside;    ///< transformed binding vertex inside L(target)
    Rational t_outside;   ///< transformed binding vertex outside L(target)
    std::size_t binding_vertex = 0;  ///< index into the no-signaling vertex list
    std::size_t membership_tests = 0;
};

struct CriticalOptions {
    Rational tolerance = dyadic(20);
    unsigned jobs = 1;
    /// Collapse no-signaling vertices related by input/output relabelings that fix the model.
    bool use_symmetry = true;
};

/**
 * Critical efficiency search for one model over a fixed no-signaling vertex set.
 *
 * The local polytope of the target scenario is built once and reused for
 * every membership test. The critical value is the smallest threshold over
 * no-signaling vertices of the point where the transformed vertex leaves the
 * local polytope.
 */
class CriticalSolver {
  public:
    CriticalSolver(EfficiencyModel model, VPolytope ns_vertices, CriticalOptions options = {});

    /// Throws NoViolationError when every transformed vertex stays local on the whole path.
    CriticalResult solve(const EfficiencyPath& path) const;

    bool inside(std::size_t vertex, const EfficiencyPath& path, const Rational& t) const;

    /// Exact exit of a vertex along eta2 at fixed eta1; nullopt if it never leaves L(target).
    std::optional<RayExit> exit_at_eta1(std::size_t vertex, const Rational& eta1) const;

    const EfficiencyModel& model() const { return model_; }
    const VPolytope& ns_vertices() const { return ns_; }
    const VPolytope& local_target() const { return local_; }
    const HullMembership& hull() const { return hull_; }
    /// Lowest-index member of each symmetry orbit, ascending.
    const std::vector<std::size_t>& representatives() const { return reps_; }
    const CriticalOptions& options() const { return options_; }

  private:
    EfficiencyModel model_;
    VPolytope ns_;
    VPolytope local_;
    HullMembership hull_;
    CriticalOptions options_;
    std::vector<std::size_t> reps_;
};

/// Builds the no-signaling polytope of `base` and runs one search.
CriticalResult critical_eta(const Scenario& base, ModelKind kind, const EfficiencyPath& path,
                            const Rational& tol = dyadic(20));

struct CurvePoint {
    Rational eta1;
    CriticalResult result;
    /// Exact threshold of the binding vertex; eta2 enters the maps affinely, so one LP gives it.
    Rational exact_eta2;
    /// Face of L(target) where the binding vertex leaves it, as coprime integers.
    RVector exit_normal;
    Rational exit_offset;
};

struct EfficiencyCurve {
    Rational eta1_min;  ///< outside bracket of the Bob-perfect critical value
    std::vector<CurvePoint> points;
    /// i such that the binding vertex or its exit face differs between points i and i+1.
    std::vector<std::size_t> cusp_cells;
    /// Subset of cusp_cells where the binding vertex itself changes.
    std::vector<std::size_t> vertex_change_cells;
};

/// Critical eta2 for eta1 on a uniform grid of `grid` points over [eta1_min, 1]. Requires grid >= 2.
EfficiencyCurve efficiency_curve(const CriticalSolver& solver, std::size_t grid);

struct Table1Row {
    std::pair<int, int> inputs;
    /// symmetric/extra, symmetric/merged, one-sided/extra, one-sided/merged
    std::array<CriticalResult, 4> cells;
};

inline constexpr std::array<std::pair<int, int>, 4> kTable1Inputs{{{2, 2}, {3, 2}, {3, 3}, {4, 3}}};

/// One-sided column of the table: the party with fewer inputs is perfect (Alice on ties).
EfficiencyPath table1_one_sided_path(const Scenario& s);

/// One row of the critical-efficiency table for dichotomic outputs.
Table1Row table1_row(const VPolytope& ns_vertices, const CriticalOptions& options = {});

struct DistanceSample {
    Rational eta;
    Rational l1;
    Rational linf;
};

/// Distances of one transformed no-signaling vertex to L(target) along the symmetric path.
std::vector<DistanceSample> distance_vs_eta(const CriticalSolver& solver, std::size_t vertex_index,
                                            const std::vector<Rational>& etas);

/// n evenly spaced exact values from lo to hi inclusive (n >= 2).
std::vector<Rational> uniform_grid(const Rational& lo, const Rational& hi, std::size_t n);

}  // namespace bellpoly

#endif  // BELLPOLY_EFFICIENCY_HPP
