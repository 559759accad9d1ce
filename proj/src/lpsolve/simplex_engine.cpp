#include "simplex_engine.hpp"

#include <limits>
#include <stdexcept>

namespace bellpoly::detail {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

class RevisedSimplex {
  public:
    RevisedSimplex(std::size_t rows, const std::vector<SparseColumn>& columns, const std::vector<mpq_class>& rhs,
                   const std::vector<std::size_t>& unit_hint)
        : m_(rows), n_(columns.size()), cols_(columns), binv_(rows * rows), xb_(rhs), basis_(rows) {
        for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1;
        in_basis_.assign(n_, false);
        integral_ = true;
        icols_.resize(n_);
        for (std::size_t j = 0; j < n_ && integral_; ++j) {
            for (const auto& [row, value] : cols_[j].entries) {
                if (value.get_den() != 1) {
                    integral_ = false;
                    break;
                }
                icols_[j].emplace_back(row, value.get_num());
            }
        }
        if (!integral_) icols_.clear();
        for (std::size_t r = 0; r < m_; ++r) {
            const std::size_t hint = r < unit_hint.size() ? unit_hint[r] : npos;
            if (hint != npos && !in_basis_[hint]) {
                basis_[r] = hint;
                in_basis_[hint] = true;
            } else {
                art_row_.push_back(r);
                basis_[r] = n_ + art_row_.size() - 1;
                in_basis_.push_back(true);
            }
        }
    }

    EngineResult run(const std::vector<mpq_class>& cost) {
        EngineResult result;
        if (!art_row_.empty()) {
            phase_ = 1;
            costs_.assign(total(), 0);
            for (std::size_t k = 0; k < art_row_.size(); ++k) costs_[n_ + k] = -1;
            iterate();  // bounded above by zero
            if (sgn(objective()) < 0) {
                result.status = EngineStatus::infeasible;
                result.farkas.resize(m_);
                for (std::size_t i = 0; i < m_; ++i) result.farkas[i] = -y_[i];
                return result;
            }
            drive_out_artificials();
        }
        phase_ = 2;
        costs_.assign(total(), 0);
        for (std::size_t j = 0; j < n_; ++j) costs_[j] = cost[j];
        const bool bounded = iterate();
        result.status = bounded ? EngineStatus::optimal : EngineStatus::unbounded;
        if (bounded) {
            result.x.assign(n_, 0);
            for (std::size_t r = 0; r < m_; ++r) {
                if (basis_[r] < n_) result.x[basis_[r]] = xb_[r];
            }
            result.objective = objective();
            result.duals = y_;
        }
        return result;
    }

  private:
    std::size_t total() const { return n_ + art_row_.size(); }

    mpq_class objective() const {
        mpq_class v;
        for (std::size_t r = 0; r < m_; ++r) {
            if (sgn(costs_[basis_[r]]) != 0) v += costs_[basis_[r]] * xb_[r];
        }
        return v;
    }

    void compute_duals() {
        y_.assign(m_, 0);
        for (std::size_t k = 0; k < m_; ++k) {
            const mpq_class& c = costs_[basis_[k]];
            if (sgn(c) == 0) continue;
            for (std::size_t i = 0; i < m_; ++i) {
                const mpq_class& b = binv_[k * m_ + i];
                if (sgn(b) != 0) y_[i] += c * b;
            }
        }
    }

    // Integer image of the costs and duals: costs_ = icost_ / cost_den_, y_ = iy_ / y_den_.
    void scale_costs() {
        cost_den_ = 1;
        for (const auto& c : costs_) mpz_lcm(cost_den_.get_mpz_t(), cost_den_.get_mpz_t(), c.get_den_mpz_t());
        icost_.resize(costs_.size());
        for (std::size_t j = 0; j < costs_.size(); ++j) icost_[j] = costs_[j].get_num() * (cost_den_ / costs_[j].get_den());
    }

    void scale_duals() {
        y_den_ = 1;
        for (const auto& v : y_) mpz_lcm(y_den_.get_mpz_t(), y_den_.get_mpz_t(), v.get_den_mpz_t());
        iy_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) iy_[i] = y_[i].get_num() * (y_den_ / y_[i].get_den());
    }

    // (c_j - y.a_j) * cost_den * y_den; same positive scale for every column.
    void scaled_reduced(std::size_t j, mpz_class& out, mpz_class& tmp) const {
        if (j >= n_) {
            out = iy_[art_row_[j - n_]];
        } else {
            out = 0;
            for (const auto& [row, value] : icols_[j]) {
                if (sgn(iy_[row]) != 0) mpz_addmul(out.get_mpz_t(), iy_[row].get_mpz_t(), value.get_mpz_t());
            }
        }
        out *= cost_den_;
        mpz_mul(tmp.get_mpz_t(), icost_[j].get_mpz_t(), y_den_.get_mpz_t());
        mpz_sub(out.get_mpz_t(), tmp.get_mpz_t(), out.get_mpz_t());
    }

    // y . a_j
    mpq_class priced(std::size_t j) const {
        if (j >= n_) return y_[art_row_[j - n_]];
        mpq_class acc;
        for (const auto& [row, value] : cols_[j].entries) {
            if (sgn(y_[row]) != 0) acc += y_[row] * value;
        }
        return acc;
    }

    std::vector<mpq_class> ftran(std::size_t j) const {
        std::vector<mpq_class> u(m_);
        if (j >= n_) {
            const std::size_t row = art_row_[j - n_];
            for (std::size_t k = 0; k < m_; ++k) u[k] = binv_[k * m_ + row];
            return u;
        }
        for (std::size_t k = 0; k < m_; ++k) {
            for (const auto& [row, value] : cols_[j].entries) {
                const mpq_class& b = binv_[k * m_ + row];
                if (sgn(b) != 0) u[k] += b * value;
            }
        }
        return u;
    }

    void pivot(std::size_t r, std::size_t entering, const std::vector<mpq_class>& u) {
        const mpq_class inv = 1 / u[r];
        mpq_class* prow = &binv_[r * m_];
        for (std::size_t c = 0; c < m_; ++c) {
            if (sgn(prow[c]) != 0) prow[c] *= inv;
        }
        xb_[r] *= inv;
        mpq_class tmp;
        for (std::size_t k = 0; k < m_; ++k) {
            if (k == r || sgn(u[k]) == 0) continue;
            mpq_class* row = &binv_[k * m_];
            for (std::size_t c = 0; c < m_; ++c) {
                if (sgn(prow[c]) == 0) continue;
                mpq_mul(tmp.get_mpq_t(), u[k].get_mpq_t(), prow[c].get_mpq_t());
                mpq_sub(row[c].get_mpq_t(), row[c].get_mpq_t(), tmp.get_mpq_t());
            }
            if (sgn(xb_[r]) != 0) xb_[k] -= u[k] * xb_[r];
        }
        in_basis_[basis_[r]] = false;
        in_basis_[entering] = true;
        basis_[r] = entering;
    }

    // Lexicographic tie-break on rows of B^-1 scaled by the pivot column.
    bool lex_less(std::size_t a, std::size_t b, const std::vector<mpq_class>& u) const {
        const mpq_class* ra = &binv_[a * m_];
        const mpq_class* rb = &binv_[b * m_];
        for (std::size_t c = 0; c < m_; ++c) {
            if (sgn(ra[c]) == 0 && sgn(rb[c]) == 0) continue;
            const int cmp = ::cmp(ra[c] * u[b], rb[c] * u[a]);
            if (cmp != 0) return cmp < 0;
        }
        return false;
    }

    /// Returns false when unbounded.
    bool iterate() {
        compute_duals();
        if (integral_) scale_costs();
        for (;;) {
            std::size_t entering = npos;
            mpq_class reduced;
            const std::size_t limit = phase_ == 2 ? n_ : total();
            // Dantzig pricing; Bland's rule after a run of degenerate pivots to rule out cycling.
            const bool bland = degenerate_run_ > kDegenerateLimit;
            if (integral_) {
                scale_duals();
                mpz_class candidate, best_scaled, tmp;
                for (std::size_t j = 0; j < limit; ++j) {
                    if (in_basis_[j]) continue;
                    scaled_reduced(j, candidate, tmp);
                    if (sgn(candidate) <= 0) continue;
                    if (entering == npos || candidate > best_scaled) {
                        entering = j;
                        std::swap(best_scaled, candidate);
                        if (bland) break;
                    }
                }
                if (entering != npos) reduced = costs_[entering] - priced(entering);
            } else {
                mpq_class candidate;
                for (std::size_t j = 0; j < limit; ++j) {
                    if (in_basis_[j]) continue;
                    candidate = costs_[j] - priced(j);
                    if (sgn(candidate) <= 0) continue;
                    if (entering == npos || candidate > reduced) {
                        entering = j;
                        reduced = candidate;
                        if (bland) break;
                    }
                }
            }
            if (entering == npos) return true;

            const auto u = ftran(entering);
            std::size_t leave = npos;
            mpq_class best;
            for (std::size_t k = 0; k < m_; ++k) {
                if (sgn(u[k]) <= 0) continue;
                mpq_class ratio = xb_[k] / u[k];
                bool take = leave == npos || ratio < best;
                if (!take && ratio == best) {
                    take = bland ? basis_[k] < basis_[leave] : lex_less(k, leave, u);
                }
                if (take) {
                    leave = k;
                    best = std::move(ratio);
                }
            }
            if (leave == npos) return false;
            degenerate_run_ = sgn(best) == 0 ? degenerate_run_ + 1 : 0;
            pivot(leave, entering, u);
            const mpq_class* prow = &binv_[leave * m_];
            for (std::size_t i = 0; i < m_; ++i) {
                if (sgn(prow[i]) != 0) y_[i] += reduced * prow[i];
            }
        }
    }

    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (in_basis_[j]) continue;
                mpq_class v;
                for (const auto& [row, value] : cols_[j].entries) {
                    const mpq_class& b = binv_[r * m_ + row];
                    if (sgn(b) != 0) v += b * value;
                }
                if (sgn(v) != 0) {
                    pivot(r, j, ftran(j));
                    break;
                }
            }
            // A row with no structural pivot is redundant; its artificial stays at zero.
        }
    }

    std::size_t m_;
    std::size_t n_;
    const std::vector<SparseColumn>& cols_;
    std::vector<mpq_class> binv_;
    std::vector<mpq_class> xb_;
    std::vector<std::size_t> basis_;
    std::vector<bool> in_basis_;
    std::vector<std::size_t> art_row_;
    std::vector<mpq_class> costs_;
    std::vector<mpq_class> y_;
    int phase_ = 1;
    bool integral_ = false;
    std::vector<std::vector<std::pair<std::size_t, mpz_class>>> icols_;
    std::vector<mpz_class> icost_;
    mpz_class cost_den_;
    std::vector<mpz_class> iy_;
    mpz_class y_den_;
    std::size_t degenerate_run_ = 0;
    static constexpr std::size_t kDegenerateLimit = 5000;
};

}  // namespace

EngineResult solve_standard_form(std::size_t rows, const std::vector<SparseColumn>& columns,
                                 const std::vector<mpq_class>& rhs, const std::vector<mpq_class>& cost,
                                 const std::vector<std::size_t>& unit_hint) {
    if (rhs.size() != rows || cost.size() != columns.size()) {
        throw std::invalid_argument("simplex: inconsistent standard form dimensions");
    }
    for (const auto& b : rhs) {
        if (sgn(b) < 0) throw std::invalid_argument("simplex: standard form needs b >= 0");
    }
    RevisedSimplex solver(rows, columns, rhs, unit_hint);
    return solver.run(cost);
}

}  // namespace bellpoly::detail
