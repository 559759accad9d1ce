#include "bellpoly/nosignal.hpp"

#include "bellpoly/lpsolve.hpp"

#include <set>

namespace bellpoly {

HPolytope build_ns_hrep(const Scenario& s) {
    HPolytope h;
    h.dim = s.dimension();
    h.inequalities.reserve(s.full_size());
    for (int x = 0; x < s.nx; ++x)
        for (int y = 0; y < s.ny; ++y)
            for (int a = 0; a < s.na; ++a)
                for (int b = 0; b < s.nb; ++b) {
                    CellForm f = cell_form(s, a, b, x, y);
                    // constant + coeffs.z >= 0  <=>  -coeffs.z <= constant
                    h.inequalities.push_back({Rational(-1) * f.coeffs, f.constant});
                }
    return h;
}

Boundedness check_bounded(const HPolytope& h) {
    h.check_shape();
    for (std::size_t k = 0; k < h.dim; ++k) {
        for (int direction : {1, -1}) {
            LinearProgram lp;
            lp.objective = RVector(h.dim);
            lp.objective[k] = direction;
            for (const auto& ineq : h.inequalities) lp.add(ineq.normal, Relation::less_equal, ineq.offset);
            const auto res = simplex_solve(lp);
            if (res.status == LPStatus::infeasible) return Boundedness::empty;
            if (res.status == LPStatus::unbounded) return Boundedness::unbounded;
        }
    }
    return Boundedness::bounded;
}

std::vector<RVector> brute_force_vertices(const HPolytope& h, std::uint64_t cap) {
    h.check_shape();
    const std::size_t m = h.inequalities.size();
    const std::size_t d = h.dim;
    if (d == 0) {
        if (h.contains(RVector())) return {RVector()};
        return {};
    }
    if (m < d) return {};
    // C(m, d) with overflow guard
    std::uint64_t subsets = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        subsets = subsets * (m - d + i) / i;
        if (subsets > cap) {
            throw std::length_error("brute-force vertex enumeration needs more than " + std::to_string(cap) +
                                    " inequality subsets");
        }
    }

    std::set<RVector> found;
    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i) pick[i] = i;
    RMatrix a(d, d);
    RVector b(d);
    for (;;) {
        for (std::size_t r = 0; r < d; ++r) {
            const auto& ineq = h.inequalities[pick[r]];
            for (std::size_t c = 0; c < d; ++c) a(r, c) = ineq.normal[c];
            b[r] = ineq.offset;
        }
        const auto sol = solve_linear_system(a, b);
        if (sol && sol->unique && h.contains(sol->x)) found.insert(sol->x);

        std::size_t i = d;
        while (i > 0 && pick[i - 1] == m - d + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
    }
    return {found.begin(), found.end()};
}

VPolytope ns_polytope(const Scenario& s) {
    return VPolytope{s, PolytopeLabel::nosignaling, dd_convert(build_ns_hrep(s))};
}

}  // namespace bellpoly
