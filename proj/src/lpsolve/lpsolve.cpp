#include "bellpoly/lpsolve.hpp"

#include "simplex_engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace bellpoly {

using detail::EngineStatus;
using detail::SparseColumn;

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct StandardForm {
    std::vector<SparseColumn> columns;
    std::vector<mpq_class> rhs;
    std::vector<mpq_class> cost;
    std::vector<std::size_t> unit_hint;
    // z_j = shift_j + sum over (column, sign)
    std::vector<mpq_class> shift;
    std::vector<std::vector<std::pair<std::size_t, int>>> var_map;
    mpq_class objective_offset;
};

StandardForm to_standard_form(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    if (!lp.lower.empty() && lp.lower.size() != n) throw std::invalid_argument("LP: lower bounds length mismatch");
    if (!lp.upper.empty() && lp.upper.size() != n) throw std::invalid_argument("LP: upper bounds length mismatch");
    for (const auto& c : lp.constraints) {
        if (c.row.size() != n) throw std::invalid_argument("LP: constraint row length differs from objective");
    }

    StandardForm sf;
    sf.shift.assign(n, 0);
    sf.var_map.resize(n);
    std::size_t next_col = 0;
    std::vector<std::pair<std::size_t, mpq_class>> bound_rows;  // (column, width) for x' <= U - L
    for (std::size_t j = 0; j < n; ++j) {
        const auto* lo = lp.lower.empty() || !lp.lower[j] ? nullptr : &*lp.lower[j];
        const auto* hi = lp.upper.empty() || !lp.upper[j] ? nullptr : &*lp.upper[j];
        if (lo) {
            sf.shift[j] = lo->mpq();
            sf.var_map[j].push_back({next_col, 1});
            if (hi) bound_rows.emplace_back(next_col, hi->mpq() - lo->mpq());
            ++next_col;
        } else if (hi) {
            sf.shift[j] = hi->mpq();
            sf.var_map[j].push_back({next_col++, -1});
        } else {
            sf.var_map[j].push_back({next_col++, 1});
            sf.var_map[j].push_back({next_col++, -1});
        }
    }
    const std::size_t structural = next_col;
    const std::size_t rows = lp.constraints.size() + bound_rows.size();

    std::vector<std::vector<mpq_class>> dense(rows, std::vector<mpq_class>(structural));
    std::vector<mpq_class> rhs(rows);
    std::vector<int> slack_sign(rows, 0);
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const auto& c = lp.constraints[i];
        rhs[i] = c.rhs.mpq();
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& a = c.row[j].mpq();
            if (sgn(a) == 0) continue;
            rhs[i] -= a * sf.shift[j];
            for (const auto& [col, s] : sf.var_map[j]) dense[i][col] += s > 0 ? mpq_class(a) : mpq_class(-a);
        }
        slack_sign[i] = c.relation == Relation::less_equal ? 1 : (c.relation == Relation::greater_equal ? -1 : 0);
    }
    for (std::size_t k = 0; k < bound_rows.size(); ++k) {
        const std::size_t i = lp.constraints.size() + k;
        dense[i][bound_rows[k].first] = 1;
        rhs[i] = bound_rows[k].second;
        slack_sign[i] = 1;
    }

    std::size_t slacks = 0;
    for (int s : slack_sign) slacks += s != 0 ? 1 : 0;
    sf.columns.resize(structural + slacks);
    sf.unit_hint.assign(rows, npos);
    sf.rhs.resize(rows);
    std::size_t slack_col = structural;
    for (std::size_t i = 0; i < rows; ++i) {
        const bool flip = sgn(rhs[i]) < 0;
        sf.rhs[i] = flip ? mpq_class(-rhs[i]) : rhs[i];
        for (std::size_t col = 0; col < structural; ++col) {
            if (sgn(dense[i][col]) != 0) sf.columns[col].entries.emplace_back(i, flip ? mpq_class(-dense[i][col]) : dense[i][col]);
        }
        if (slack_sign[i] != 0) {
            const int coeff = flip ? -slack_sign[i] : slack_sign[i];
            sf.columns[slack_col].entries.emplace_back(i, coeff);
            if (coeff > 0) sf.unit_hint[i] = slack_col;
            ++slack_col;
        }
    }

    sf.cost.assign(sf.columns.size(), 0);
    for (std::size_t j = 0; j < n; ++j) {
        const mpq_class& c = lp.objective[j].mpq();
        sf.objective_offset += c * sf.shift[j];
        for (const auto& [col, s] : sf.var_map[j]) sf.cost[col] += s > 0 ? mpq_class(c) : mpq_class(-c);
    }
    return sf;
}

void check_vertices(const std::vector<RVector>& vertices, const RVector& x) {
    if (vertices.empty()) throw std::invalid_argument("polytope has no vertices");
    for (const auto& v : vertices) {
        if (v.size() != x.size()) {
            throw std::invalid_argument("dimension mismatch: point has " + std::to_string(x.size()) +
                                        " coordinates, vertex has " + std::to_string(v.size()));
        }
    }
}

void check_scenario(const VPolytope& v, const ReducedPoint& x) {
    if (!(v.scenario == x.scenario)) {
        throw std::invalid_argument("scenario mismatch: polytope is " + v.scenario.str() + ", point is " +
                                    x.scenario.str());
    }
}

}  // namespace

void LinearProgram::nonnegative() {
    lower.assign(num_vars(), Rational(0));
    if (upper.empty()) upper.assign(num_vars(), std::nullopt);
}

std::string_view to_string(LPStatus status) {
    switch (status) {
        case LPStatus::optimal: return "optimal";
        case LPStatus::infeasible: return "infeasible";
        case LPStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

LPResult simplex_solve(const LinearProgram& lp) {
    const StandardForm sf = to_standard_form(lp);
    const auto out = detail::solve_standard_form(sf.rhs.size(), sf.columns, sf.rhs, sf.cost, sf.unit_hint);
    LPResult result;
    switch (out.status) {
        case EngineStatus::infeasible: result.status = LPStatus::infeasible; return result;
        case EngineStatus::unbounded: result.status = LPStatus::unbounded; return result;
        case EngineStatus::optimal: break;
    }
    result.status = LPStatus::optimal;
    RVector z(lp.num_vars());
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        mpq_class v = sf.shift[j];
        for (const auto& [col, s] : sf.var_map[j]) v += s > 0 ? out.x[col] : mpq_class(-out.x[col]);
        z[j] = Rational(std::move(v));
    }
    result.optimum = Rational(out.objective + sf.objective_offset);
    result.solution = std::move(z);
    return result;
}

HullMembership::HullMembership(std::vector<RVector> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("polytope has no vertices");
    const std::size_t dim = vertices_.front().size();
    columns_.resize(vertices_.size());
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        if (vertices_[j].size() != dim) throw std::invalid_argument("vertices of different lengths");
        for (std::size_t i = 0; i < dim; ++i) {
            if (!vertices_[j][i].is_zero()) columns_[j].entries.emplace_back(i, vertices_[j][i].mpq());
        }
        columns_[j].entries.emplace_back(dim, 1);
    }
}

HullMembership::~HullMembership() = default;
HullMembership::HullMembership(HullMembership&&) noexcept = default;
HullMembership& HullMembership::operator=(HullMembership&&) noexcept = default;

namespace {

// Phase-1 feasibility of C w = x, 1.w = 1, w >= 0. Rows with negative x are negated.
detail::EngineResult hull_feasibility(const std::vector<SparseColumn>& base, const RVector& x,
                                      std::vector<int>& sign) {
    const std::size_t dim = x.size();
    const std::size_t rows = dim + 1;
    sign.assign(rows, 1);
    std::vector<mpq_class> rhs(rows);
    bool flipped = false;
    for (std::size_t i = 0; i < dim; ++i) {
        sign[i] = x[i].sign() < 0 ? -1 : 1;
        flipped = flipped || sign[i] < 0;
        rhs[i] = sign[i] > 0 ? x[i].mpq() : mpq_class(-x[i].mpq());
    }
    rhs[dim] = 1;
    const std::vector<mpq_class> cost(base.size(), 0);
    if (!flipped) return detail::solve_standard_form(rows, base, rhs, cost, {});
    std::vector<SparseColumn> cols = base;
    for (auto& c : cols) {
        for (auto& [row, value] : c.entries) {
            if (sign[row] < 0) value = -value;
        }
    }
    return detail::solve_standard_form(rows, cols, rhs, cost, {});
}

}  // namespace

bool HullMembership::contains(const RVector& x) const {
    check_vertices(vertices_, x);
    std::vector<int> sign;
    return hull_feasibility(columns_, x, sign).status == EngineStatus::optimal;
}

MembershipResult HullMembership::test(const RVector& x) const {
    check_vertices(vertices_, x);
    const std::size_t dim = x.size();
    std::vector<int> sign;
    const auto out = hull_feasibility(columns_, x, sign);

    MembershipResult result;
    if (out.status == EngineStatus::optimal) {
        result.inside = true;
        result.weights = RVector(vertices_.size());
        for (std::size_t j = 0; j < vertices_.size(); ++j) result.weights[j] = Rational(out.x[j]);
        return result;
    }
    // farkas y = (h, -c) in original row signs: h.v - c <= 0 for every vertex, h.x - c > 0.
    result.inside = false;
    result.separator_normal = RVector(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        result.separator_normal[i] = Rational(sign[i] > 0 ? out.farkas[i] : mpq_class(-out.farkas[i]));
    }
    Rational best = dot(result.separator_normal, vertices_.front());
    for (const auto& v : vertices_) {
        Rational h = dot(result.separator_normal, v);
        if (h > best) best = std::move(h);
    }
    result.separator_offset = best;
    return result;
}

std::optional<RayExit> HullMembership::ray_exit(const RVector& origin, const RVector& direction) const {
    check_vertices(vertices_, origin);
    check_vertices(vertices_, direction);
    const std::size_t dim = origin.size();
    if (std::all_of(direction.begin(), direction.end(), [](const Rational& q) { return q.is_zero(); })) {
        throw std::invalid_argument("ray direction is zero");
    }
    // Columns (w..., t): C w - t d = origin, 1.w = 1; maximize t.
    std::vector<int> sign(dim + 1, 1);
    std::vector<mpq_class> rhs(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) {
        sign[i] = origin[i].sign() < 0 ? -1 : 1;
        rhs[i] = sign[i] > 0 ? origin[i].mpq() : mpq_class(-origin[i].mpq());
    }
    rhs[dim] = 1;
    std::vector<SparseColumn> cols = columns_;
    for (auto& c : cols) {
        for (auto& [row, value] : c.entries) {
            if (sign[row] < 0) value = -value;
        }
    }
    SparseColumn tcol;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!direction[i].is_zero()) tcol.entries.emplace_back(i, -sign[i] * direction[i].mpq());
    }
    cols.push_back(std::move(tcol));
    std::vector<mpq_class> cost(cols.size(), 0);
    cost.back() = 1;
    const auto out = detail::solve_standard_form(dim + 1, cols, rhs, cost, {});
    if (out.status == EngineStatus::infeasible) return std::nullopt;
    if (out.status == EngineStatus::unbounded) throw std::logic_error("ray leaves no bounded hull");

    // With y' the duals in original row signs: h = -y'[0..dim), c = y'[dim] gives h.v <= c and h.d = 1.
    std::vector<mpq_class> h(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) h[i] = sign[i] > 0 ? mpq_class(-out.duals[i]) : out.duals[i];
    h[dim] = out.duals[dim];
    mpz_class scale = 1, g = 0;
    for (const auto& q : h) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> ints(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        ints[i] = h[i].get_num() * (scale / h[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    RayExit exit;
    exit.t = Rational(out.objective);
    exit.normal = RVector(dim);
    for (std::size_t i = 0; i < dim; ++i) exit.normal[i] = Rational(mpq_class(ints[i] / g));
    exit.offset = Rational(mpq_class(ints[dim] / g));
    return exit;
}

MembershipResult membership(const std::vector<RVector>& vertices, const RVector& x) {
    check_vertices(vertices, x);
    return HullMembership(vertices).test(x);
}

MembershipResult membership(const VPolytope& v, const ReducedPoint& x) {
    check_scenario(v, x);
    return membership(v.vertices, x.coords);
}

namespace {

// Shared epigraph LP: variables (gap..., w...). l1 uses one gap per coordinate, linf a single gap.
DistanceResult distance_lp(const std::vector<RVector>& vertices, const RVector& x, bool l1) {
    check_vertices(vertices, x);
    const std::size_t dim = x.size();
    const std::size_t r = vertices.size();
    const std::size_t gaps = l1 ? dim : 1;
    LinearProgram lp;
    lp.objective = RVector(gaps + r);
    for (std::size_t k = 0; k < gaps; ++k) lp.objective[k] = -1;
    for (std::size_t i = 0; i < dim; ++i) {
        RVector upper(gaps + r);
        RVector lower(gaps + r);
        upper[l1 ? i : 0] = -1;
        lower[l1 ? i : 0] = -1;
        for (std::size_t j = 0; j < r; ++j) {
            upper[gaps + j] = vertices[j][i];
            lower[gaps + j] = -vertices[j][i];
        }
        lp.add(std::move(upper), Relation::less_equal, x[i]);   //  C w - x <= gap
        lp.add(std::move(lower), Relation::less_equal, -x[i]);  // -(C w - x) <= gap
    }
    RVector convex(gaps + r);
    for (std::size_t j = 0; j < r; ++j) convex[gaps + j] = 1;
    lp.add(std::move(convex), Relation::equal, Rational(1));
    lp.nonnegative();

    const LPResult res = simplex_solve(lp);
    if (res.status != LPStatus::optimal) {
        throw std::logic_error("distance LP did not reach an optimum: " + std::string(to_string(res.status)));
    }
    DistanceResult out;
    out.distance = -*res.optimum;
    out.weights = RVector(r);
    out.witness = RVector(dim);
    for (std::size_t j = 0; j < r; ++j) {
        out.weights[j] = (*res.solution)[gaps + j];
        if (out.weights[j].is_zero()) continue;
        for (std::size_t i = 0; i < dim; ++i) out.witness[i] += out.weights[j] * vertices[j][i];
    }
    return out;
}

}  // namespace

DistanceResult distance_l1(const std::vector<RVector>& vertices, const RVector& x) {
    return distance_lp(vertices, x, true);
}

DistanceResult distance_linf(const std::vector<RVector>& vertices, const RVector& x) {
    return distance_lp(vertices, x, false);
}

DistanceResult distance_l1(const VPolytope& v, const ReducedPoint& x) {
    check_scenario(v, x);
    return distance_l1(v.vertices, x.coords);
}

DistanceResult distance_linf(const VPolytope& v, const ReducedPoint& x) {
    check_scenario(v, x);
    return distance_linf(v.vertices, x.coords);
}

}  // namespace bellpoly
