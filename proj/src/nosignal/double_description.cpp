#include "bellpoly/nosignal.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace bellpoly {

namespace {

/// Incidence set over homogenized rows.
class ZeroSet {
  public:
    explicit ZeroSet(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    ZeroSet operator&(const ZeroSet& o) const {
        ZeroSet r = *this;
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
        return r;
    }
    bool subset_of(const ZeroSet& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

  private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    std::vector<mpz_class> v;
    ZeroSet zeros;
};

struct HomRow {
    std::vector<std::pair<std::size_t, mpz_class>> terms;  // sparse integer row
};

void make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) {
        if (sgn(x) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g > 1) {
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
}

mpz_class eval(const HomRow& row, const std::vector<mpz_class>& v) {
    mpz_class acc;
    for (const auto& [k, c] : row.terms) {
        if (sgn(v[k]) != 0) acc += c * v[k];
    }
    return acc;
}

/// Homogenized integer rows: t*offset - normal.z >= 0, scaled by the lcm of denominators; plus t >= 0.
std::vector<HomRow> homogenize(const HPolytope& h) {
    std::vector<HomRow> rows;
    rows.reserve(h.inequalities.size() + 1);
    for (const auto& ineq : h.inequalities) {
        mpz_class l = ineq.offset.denominator();
        for (const auto& a : ineq.normal) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.denominator().get_mpz_t());
        HomRow row;
        if (!ineq.offset.is_zero()) row.terms.emplace_back(0, ineq.offset.numerator() * (l / ineq.offset.denominator()));
        for (std::size_t k = 0; k < ineq.normal.size(); ++k) {
            const auto& a = ineq.normal[k];
            if (!a.is_zero()) row.terms.emplace_back(k + 1, -a.numerator() * (l / a.denominator()));
        }
        rows.push_back(std::move(row));
    }
    HomRow t_row;
    t_row.terms.emplace_back(0, 1);
    rows.push_back(std::move(t_row));
    return rows;
}

RVector dense_row(const HomRow& row, std::size_t d) {
    RVector r(d);
    for (const auto& [k, c] : row.terms) r[k] = Rational(c);
    return r;
}

}  // namespace

std::vector<RVector> dd_convert(const HPolytope& h) {
    h.check_shape();
    switch (check_bounded(h)) {
        case Boundedness::empty: return {};
        case Boundedness::unbounded: throw UnboundedPolyhedron();
        case Boundedness::bounded: break;
    }
    if (h.dim == 0) return {RVector()};

    const std::size_t d = h.dim + 1;
    const auto rows = homogenize(h);
    const std::size_t total = rows.size();

    // Initial simplicial cone: greedily pick d independent rows, t >= 0 first.
    std::vector<std::size_t> basis;
    {
        std::vector<RVector> echelon;  // reduced rows with their pivot columns
        std::vector<std::size_t> pivot_col;
        std::vector<std::size_t> order(total);
        order[0] = total - 1;
        std::iota(order.begin() + 1, order.end(), std::size_t{0});
        for (std::size_t idx : order) {
            RVector r = dense_row(rows[idx], d);
            for (std::size_t e = 0; e < echelon.size(); ++e) {
                if (!r[pivot_col[e]].is_zero()) r = r - r[pivot_col[e]] * echelon[e];
            }
            auto nz = std::find_if(r.begin(), r.end(), [](const Rational& q) { return !q.is_zero(); });
            if (nz == r.end()) continue;
            const auto col = static_cast<std::size_t>(nz - r.begin());
            r = (Rational(1) / r[col]) * r;
            for (auto& e : echelon) {
                if (!e[col].is_zero()) e = e - e[col] * r;
            }
            echelon.push_back(std::move(r));
            pivot_col.push_back(col);
            basis.push_back(idx);
            if (basis.size() == d) break;
        }
        if (basis.size() < d) throw UnboundedPolyhedron();  // lineality space
    }

    std::vector<Ray> rays;
    {
        RMatrix aug(d, 2 * d);
        for (std::size_t r = 0; r < d; ++r) {
            const RVector row = dense_row(rows[basis[r]], d);
            for (std::size_t c = 0; c < d; ++c) aug(r, c) = row[c];
            aug(r, d + r) = 1;
        }
        row_reduce(aug, d);
        // column j of the inverse is tight on every basis row except basis[j]
        for (std::size_t j = 0; j < d; ++j) {
            mpz_class l = 1;
            for (std::size_t r = 0; r < d; ++r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), aug(r, d + j).denominator().get_mpz_t());
            Ray ray{std::vector<mpz_class>(d), ZeroSet(total)};
            for (std::size_t r = 0; r < d; ++r) {
                const auto& q = aug(r, d + j);
                ray.v[r] = q.numerator() * (l / q.denominator());
            }
            make_primitive(ray.v);
            for (std::size_t k = 0; k < d; ++k)
                if (k != j) ray.zeros.set(basis[k]);
            rays.push_back(std::move(ray));
        }
    }

    std::vector<bool> in_basis(total, false);
    for (auto b : basis) in_basis[b] = true;

    std::vector<mpz_class> value;
    for (std::size_t i = 0; i < total; ++i) {
        if (in_basis[i]) continue;
        value.resize(rays.size());
        std::vector<std::size_t> pos;
        std::vector<std::size_t> neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            value[k] = eval(rows[i], rays[k].v);
            const int s = sgn(value[k]);
            if (s > 0) {
                pos.push_back(k);
            } else if (s < 0) {
                neg.push_back(k);
            } else {
                rays[k].zeros.set(i);
            }
        }
        if (neg.empty()) continue;

        std::vector<Ray> next;
        next.reserve(rays.size() - neg.size() + pos.size());
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                ZeroSet common = rays[p].zeros & rays[n].zeros;
                if (common.count() + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t q = 0; q < rays.size() && adjacent; ++q) {
                    if (q != p && q != n && common.subset_of(rays[q].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray ray{std::vector<mpz_class>(d), std::move(common)};
                const mpz_class neg_n = -value[n];
                for (std::size_t c = 0; c < d; ++c) ray.v[c] = value[p] * rays[n].v[c] + neg_n * rays[p].v[c];
                make_primitive(ray.v);
                ray.zeros.set(i);
                next.push_back(std::move(ray));
            }
        }
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (sgn(value[k]) >= 0) next.push_back(std::move(rays[k]));
        }
        rays = std::move(next);
    }

    std::vector<RVector> vertices;
    vertices.reserve(rays.size());
    for (const auto& ray : rays) {
        if (sgn(ray.v[0]) == 0) throw UnboundedPolyhedron();
        RVector z(h.dim);
        for (std::size_t c = 0; c < h.dim; ++c) z[c] = Rational::canonicalize(ray.v[c + 1], ray.v[0]);
        vertices.push_back(std::move(z));
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

}  // namespace bellpoly
