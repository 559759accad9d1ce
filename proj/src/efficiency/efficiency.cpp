#include "bellpoly/efficiency.hpp"

#include "bellpoly/localpoly.hpp"
#include "bellpoly/nosignal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <thread>

namespace bellpoly {

std::string_view to_string(ModelKind kind) { return kind == ModelKind::merged ? "merged" : "extra"; }

ModelKind parse_model(std::string_view text) {
    if (text == "merged") return ModelKind::merged;
    if (text == "extra" || text == "extra_outcome") return ModelKind::extra_outcome;
    throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected merged|extra)");
}

EfficiencyModel EfficiencyModel::make(ModelKind kind, const Scenario& base) {
    EfficiencyModel m{kind, base, base};
    if (kind == ModelKind::extra_outcome) m.target = Scenario::make(base.nx, base.ny, base.na + 1, base.nb + 1);
    return m;
}

EfficiencyPath EfficiencyPath::fixed_eta1(const Rational& eta1) {
    if (eta1.sign() < 0 || eta1 > 1) throw std::invalid_argument("eta1 must lie in [0, 1], got " + eta1.str());
    return {Kind::fixed_eta1, eta1};
}

EfficiencyPath EfficiencyPath::parse(std::string_view text) {
    if (text == "symmetric") return symmetric();
    if (text == "asymmetric" || text == "alice-perfect") return alice_perfect();
    if (text == "bob-perfect") return bob_perfect();
    if (text.starts_with("eta1=")) return fixed_eta1(Rational::parse(text.substr(5)));
    throw std::invalid_argument("unknown path '" + std::string(text) +
                                "' (expected symmetric|asymmetric|bob-perfect|eta1=<p/q>)");
}

std::pair<Rational, Rational> EfficiencyPath::at(const Rational& t) const {
    switch (kind) {
        case Kind::symmetric: return {t, t};
        case Kind::alice_perfect: return {Rational(1), t};
        case Kind::bob_perfect: return {t, Rational(1)};
        case Kind::fixed_eta1: return {value, t};
    }
    return {t, t};
}

std::string EfficiencyPath::str() const {
    switch (kind) {
        case Kind::symmetric: return "symmetric";
        case Kind::alice_perfect: return "asymmetric";
        case Kind::bob_perfect: return "bob-perfect";
        case Kind::fixed_eta1: return "eta1=" + value.str();
    }
    return "";
}

namespace {

void check_eta(const Rational& eta1, const Rational& eta2) {
    for (const auto* e : {&eta1, &eta2}) {
        if (e->sign() < 0 || *e > 1) throw std::invalid_argument("detection efficiency outside [0, 1]: " + e->str());
    }
}

void check_base(const EfficiencyModel& model, const ReducedPoint& p) {
    if (!(p.scenario == model.base)) {
        throw std::invalid_argument("point scenario " + p.scenario.str() + " differs from model base " +
                                    model.base.str());
    }
}

}  // namespace

ReducedPoint apply_merged(const EfficiencyModel& model, const Rational& eta1, const Rational& eta2,
                          const ReducedPoint& p) {
    if (model.kind != ModelKind::merged) throw std::invalid_argument("apply_merged needs a merged model");
    check_eta(eta1, eta2);
    check_base(model, p);
    const Scenario& s = p.scenario;
    const Rational both = eta1 * eta2;
    ReducedPoint out(s);
    for (int x = 0; x < s.nx; ++x)
        for (int a = 0; a + 1 < s.na; ++a) out.coords[s.alice_index(a, x)] = eta1 * p.coords[s.alice_index(a, x)];
    for (int y = 0; y < s.ny; ++y)
        for (int b = 0; b + 1 < s.nb; ++b) out.coords[s.bob_index(b, y)] = eta2 * p.coords[s.bob_index(b, y)];
    for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
            for (int a = 0; a + 1 < s.na; ++a)
                for (int b = 0; b + 1 < s.nb; ++b) {
                    const auto k = s.joint_index(a, b, x, y);
                    out.coords[k] = both * p.coords[k];
                }
    return out;
}

ReducedPoint apply_extra_outcome(const EfficiencyModel& model, const Rational& eta1, const Rational& eta2,
                                 const ReducedPoint& p) {
    if (model.kind != ModelKind::extra_outcome) throw std::invalid_argument("apply_extra_outcome needs an extra-outcome model");
    check_eta(eta1, eta2);
    check_base(model, p);
    const Scenario& s = model.base;
    const Scenario& t = model.target;
    const FullPoint ideal = from_reduced(p).point;
    const Rational both = eta1 * eta2;
    const Rational a_only = eta1 * (Rational(1) - eta2);
    const Rational b_only = (Rational(1) - eta1) * eta2;
    const Rational neither = (Rational(1) - eta1) * (Rational(1) - eta2);
    const int none_a = t.na - 1;
    const int none_b = t.nb - 1;

    FullPoint out(t);
    for (int x = 0; x < s.nx; ++x) {
        for (int y = 0; y < s.ny; ++y) {
            for (int a = 0; a < s.na; ++a) {
                Rational row;
                for (int b = 0; b < s.nb; ++b) {
                    out.at(a, b, x, y) = both * ideal.at(a, b, x, y);
                    row += ideal.at(a, b, x, y);
                }
                out.at(a, none_b, x, y) = a_only * row;
            }
            for (int b = 0; b < s.nb; ++b) {
                Rational col;
                for (int a = 0; a < s.na; ++a) col += ideal.at(a, b, x, y);
                out.at(none_a, b, x, y) = b_only * col;
            }
            out.at(none_a, none_b, x, y) = neither;
        }
    }
    // Reduced coordinates of the target keep every real output; read them off directly.
    ReducedPoint r(t);
    for (int x = 0; x < t.nx; ++x)
        for (int a = 0; a + 1 < t.na; ++a) {
            Rational m;
            for (int b = 0; b < t.nb; ++b) m += out.at(a, b, x, 0);
            r.coords[t.alice_index(a, x)] = m;
        }
    for (int y = 0; y < t.ny; ++y)
        for (int b = 0; b + 1 < t.nb; ++b) {
            Rational m;
            for (int a = 0; a < t.na; ++a) m += out.at(a, b, 0, y);
            r.coords[t.bob_index(b, y)] = m;
        }
    for (int x = 0; x < t.nx; ++x)
        for (int y = 0; y < t.ny; ++y)
            for (int a = 0; a + 1 < t.na; ++a)
                for (int b = 0; b + 1 < t.nb; ++b) r.coords[t.joint_index(a, b, x, y)] = out.at(a, b, x, y);
    return r;
}

ReducedPoint apply_model(const EfficiencyModel& model, const Rational& eta1, const Rational& eta2,
                         const ReducedPoint& p) {
    return model.kind == ModelKind::merged ? apply_merged(model, eta1, eta2, p)
                                           : apply_extra_outcome(model, eta1, eta2, p);
}

namespace {

/// Relabeling of inputs (and outputs, per input) applied to full tables.
struct Relabel {
    std::vector<int> xs, ys;               // new index of each input
    std::vector<std::vector<int>> as, bs;  // per input: new label of each output
};

Relabel identity_relabel(const Scenario& s) {
    Relabel r;
    r.xs.resize(s.nx);
    r.ys.resize(s.ny);
    for (int i = 0; i < s.nx; ++i) r.xs[i] = i;
    for (int i = 0; i < s.ny; ++i) r.ys[i] = i;
    r.as.assign(s.nx, std::vector<int>(s.na));
    r.bs.assign(s.ny, std::vector<int>(s.nb));
    for (auto& v : r.as)
        for (int i = 0; i < s.na; ++i) v[i] = i;
    for (auto& v : r.bs)
        for (int i = 0; i < s.nb; ++i) v[i] = i;
    return r;
}

/// Generators of the relabelings that commute with the detector model.
std::vector<Relabel> symmetry_generators(const EfficiencyModel& model) {
    const Scenario& s = model.base;
    std::vector<Relabel> gens;
    for (int x = 0; x + 1 < s.nx; ++x) {
        Relabel r = identity_relabel(s);
        std::swap(r.xs[x], r.xs[x + 1]);
        gens.push_back(std::move(r));
    }
    for (int y = 0; y + 1 < s.ny; ++y) {
        Relabel r = identity_relabel(s);
        std::swap(r.ys[y], r.ys[y + 1]);
        gens.push_back(std::move(r));
    }
    // The merged model singles out the last output, so only the others may be relabeled.
    const int fixed = model.kind == ModelKind::merged ? 1 : 0;
    for (int x = 0; x < s.nx; ++x)
        for (int a = 0; a + 1 < s.na - fixed; ++a) {
            Relabel r = identity_relabel(s);
            std::swap(r.as[x][a], r.as[x][a + 1]);
            gens.push_back(std::move(r));
        }
    for (int y = 0; y < s.ny; ++y)
        for (int b = 0; b + 1 < s.nb - fixed; ++b) {
            Relabel r = identity_relabel(s);
            std::swap(r.bs[y][b], r.bs[y][b + 1]);
            gens.push_back(std::move(r));
        }
    return gens;
}

RVector relabel(const Scenario& s, const Relabel& g, const RVector& z) {
    const FullPoint p = from_reduced(ReducedPoint(s, z)).point;
    FullPoint q(s);
    for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
            for (int a = 0; a < s.na; ++a)
                for (int b = 0; b < s.nb; ++b) q.at(g.as[x][a], g.bs[y][b], g.xs[x], g.ys[y]) = p.at(a, b, x, y);
    return to_reduced(q).coords;
}

std::vector<std::size_t> orbit_representatives(const EfficiencyModel& model, const std::vector<RVector>& vertices,
                                               bool use_symmetry) {
    std::vector<std::size_t> reps;
    if (!use_symmetry) {
        reps.resize(vertices.size());
        for (std::size_t i = 0; i < vertices.size(); ++i) reps[i] = i;
        return reps;
    }
    std::map<RVector, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], i);
    const auto gens = symmetry_generators(model);
    std::vector<bool> seen(vertices.size(), false);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (seen[i]) continue;
        reps.push_back(i);
        seen[i] = true;
        std::deque<std::size_t> queue{i};
        while (!queue.empty()) {
            const std::size_t k = queue.front();
            queue.pop_front();
            for (const auto& g : gens) {
                auto it = index.find(relabel(model.base, g, vertices[k]));
                if (it == index.end()) throw std::logic_error("vertex set is not closed under relabeling");
                if (!seen[it->second]) {
                    seen[it->second] = true;
                    queue.push_back(it->second);
                }
            }
        }
    }
    return reps;
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> workers;
    const std::size_t count = std::min<std::size_t>(jobs, n);
    for (std::size_t w = 0; w < count; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += count) fn(i);
        });
    }
}

}  // namespace

CriticalSolver::CriticalSolver(EfficiencyModel model, VPolytope ns_vertices, CriticalOptions options)
    : model_(std::move(model)),
      ns_(std::move(ns_vertices)),
      local_(enumerate_local_vertices(model_.target)),
      hull_(local_.vertices),
      options_(std::move(options)) {
    if (!(ns_.scenario == model_.base)) {
        throw std::invalid_argument("no-signaling vertices belong to " + ns_.scenario.str() + ", model base is " +
                                    model_.base.str());
    }
    if (options_.tolerance.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
    if (options_.jobs == 0) options_.jobs = 1;
    reps_ = orbit_representatives(model_, ns_.vertices, options_.use_symmetry);
}

bool CriticalSolver::inside(std::size_t vertex, const EfficiencyPath& path, const Rational& t) const {
    const auto [eta1, eta2] = path.at(t);
    return hull_.contains(apply_model(model_, eta1, eta2, ns_.vertex(vertex)).coords);
}

std::optional<RayExit> CriticalSolver::exit_at_eta1(std::size_t vertex, const Rational& eta1) const {
    const ReducedPoint v = ns_.vertex(vertex);
    const RVector origin = apply_model(model_, eta1, Rational(0), v).coords;
    const RVector direction = apply_model(model_, eta1, Rational(1), v).coords - origin;
    auto exit = hull_.ray_exit(origin, direction);
    if (!exit) throw std::logic_error("transformed vertex with a silent detector is not local");
    if (exit->t >= 1) return std::nullopt;
    return exit;
}

CriticalResult CriticalSolver::solve(const EfficiencyPath& path) const {
    struct Bracket {
        Rational lo, hi;
        std::size_t vertex;
    };
    std::optional<Bracket> best;
    std::size_t tests = 0;

    auto bisect = [&](std::size_t v, Rational hi) {
        Rational lo = 0;
        while (hi - lo > options_.tolerance) {
            Rational mid = (lo + hi) / Rational(2);
            ++tests;
            if (inside(v, path, mid)) {
                lo = std::move(mid);
            } else {
                hi = std::move(mid);
            }
        }
        best = Bracket{lo, hi, v};
    };

    const std::size_t batch = options_.jobs;
    std::vector<char> flags;
    for (std::size_t start = 0; start < reps_.size(); start += batch) {
        const std::size_t n = std::min(batch, reps_.size() - start);
        const Rational pivot = best ? best->lo : Rational(1);
        flags.assign(n, 0);
        parallel_for(n, options_.jobs, [&](std::size_t k) { flags[k] = inside(reps_[start + k], path, pivot) ? 1 : 0; });
        tests += n;
        for (std::size_t k = 0; k < n; ++k) {
            if (flags[k]) continue;  // inside at pivot, hence at every smaller t
            const std::size_t v = reps_[start + k];
            if (!best) {
                bisect(v, Rational(1));
                continue;
            }
            if (best->lo < pivot) {
                ++tests;
                if (inside(v, path, best->lo)) continue;
            }
            bisect(v, best->lo);
        }
    }
    if (!best) throw NoViolationError();

    for (int k = 1; k <= 3; ++k) {
        const Rational t = best->lo * Rational::canonicalize(k, 4);
        ++tests;
        if (!inside(best->vertex, path, t)) {
            throw MonotonicityError("membership is not monotone along path " + path.str() + " for vertex " +
                                    std::to_string(best->vertex) + ": outside at t=" + t.str() +
                                    " but inside at t=" + best->lo.str());
        }
    }

    CriticalResult r;
    r.model = model_;
    r.path = path;
    r.t_inside = best->lo;
    r.t_outside = best->hi;
    r.critical_t = (best->lo + best->hi) / Rational(2);
    r.binding_vertex = best->vertex;
    r.membership_tests = tests;
    return r;
}

CriticalResult critical_eta(const Scenario& base, ModelKind kind, const EfficiencyPath& path, const Rational& tol) {
    CriticalOptions options;
    options.tolerance = tol;
    const CriticalSolver solver(EfficiencyModel::make(kind, base), ns_polytope(base), options);
    return solver.solve(path);
}

std::vector<Rational> uniform_grid(const Rational& lo, const Rational& hi, std::size_t n) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<Rational> out;
    out.reserve(n);
    const Rational step = (hi - lo) / Rational(static_cast<long>(n - 1));
    for (std::size_t k = 0; k < n; ++k) out.push_back(lo + Rational(static_cast<long>(k)) * step);
    return out;
}

EfficiencyCurve efficiency_curve(const CriticalSolver& solver, std::size_t grid) {
    if (grid < 2) throw std::invalid_argument("grid needs at least 2 points");
    EfficiencyCurve curve;
    curve.eta1_min = solver.solve(EfficiencyPath::bob_perfect()).t_outside;
    for (const auto& eta1 : uniform_grid(curve.eta1_min, Rational(1), grid)) {
        CurvePoint p{eta1, solver.solve(EfficiencyPath::fixed_eta1(eta1)), {}, {}, {}};
        const auto exit = solver.exit_at_eta1(p.result.binding_vertex, eta1);
        if (!exit || exit->t < p.result.t_inside || exit->t > p.result.t_outside) {
            throw std::logic_error("exact exit of vertex " + std::to_string(p.result.binding_vertex) +
                                   " disagrees with its bisection bracket at eta1=" + eta1.str());
        }
        p.exact_eta2 = exit->t;
        p.exit_normal = exit->normal;
        p.exit_offset = exit->offset;
        curve.points.push_back(std::move(p));
    }
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const CurvePoint& a = curve.points[i];
        const CurvePoint& b = curve.points[i + 1];
        const bool vertex_change = a.result.binding_vertex != b.result.binding_vertex;
        if (vertex_change) curve.vertex_change_cells.push_back(i);
        if (vertex_change || a.exit_normal != b.exit_normal || a.exit_offset != b.exit_offset) {
            curve.cusp_cells.push_back(i);
        }
    }
    return curve;
}

EfficiencyPath table1_one_sided_path(const Scenario& s) {
    // The party with fewer inputs gets the perfect detector.
    return s.nx > s.ny ? EfficiencyPath::bob_perfect() : EfficiencyPath::alice_perfect();
}

Table1Row table1_row(const VPolytope& ns_vertices, const CriticalOptions& options) {
    const Scenario& s = ns_vertices.scenario;
    if (s.na != 2 || s.nb != 2) throw std::invalid_argument("table rows use dichotomic outputs");
    const CriticalSolver extra(EfficiencyModel::make(ModelKind::extra_outcome, s), ns_vertices, options);
    const CriticalSolver merged(EfficiencyModel::make(ModelKind::merged, s), ns_vertices, options);
    Table1Row row;
    row.inputs = {s.nx, s.ny};
    row.cells[0] = extra.solve(EfficiencyPath::symmetric());
    row.cells[1] = merged.solve(EfficiencyPath::symmetric());
    const EfficiencyPath one_sided = table1_one_sided_path(s);
    row.cells[2] = extra.solve(one_sided);
    row.cells[3] = merged.solve(one_sided);
    return row;
}

std::vector<DistanceSample> distance_vs_eta(const CriticalSolver& solver, std::size_t vertex_index,
                                            const std::vector<Rational>& etas) {
    if (vertex_index >= solver.ns_vertices().vertices.size()) {
        throw std::out_of_range("vertex index " + std::to_string(vertex_index) + " out of range (have " +
                                std::to_string(solver.ns_vertices().vertices.size()) + " vertices)");
    }
    const ReducedPoint v = solver.ns_vertices().vertex(vertex_index);
    std::vector<DistanceSample> out;
    out.reserve(etas.size());
    for (const auto& eta : etas) {
        const ReducedPoint p = apply_model(solver.model(), eta, eta, v);
        out.push_back({eta, distance_l1(solver.local_target(), p).distance,
                       distance_linf(solver.local_target(), p).distance});
    }
    return out;
}

}  // namespace bellpoly
