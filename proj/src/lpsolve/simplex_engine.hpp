// Internal standard-form revised simplex: max c.x, A x = b, x >= 0, b >= 0.

#ifndef BELLPOLY_SIMPLEX_ENGINE_HPP
#define BELLPOLY_SIMPLEX_ENGINE_HPP

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace bellpoly::detail {

struct SparseColumn {
    std::vector<std::pair<std::size_t, mpq_class>> entries;  // (row, value), rows ascending
};

enum class EngineStatus { optimal, infeasible, unbounded };

struct EngineResult {
    EngineStatus status = EngineStatus::infeasible;
    std::vector<mpq_class> x;  ///< structural columns only
    mpq_class objective;
    /// Phase-1 row duals when infeasible: y.A_j <= 0 for all columns and y.b > 0.
    std::vector<mpq_class> farkas;
    /// Row duals at the optimum: c_j - y.A_j <= 0 for all columns and y.b = objective.
    std::vector<mpq_class> duals;
};

/**
 * Revised simplex keeping an explicit dense basis inverse.
 *
 * Rows without a usable unit slack column get an artificial variable.
 * `unit_hint[i]`, when not npos, names a structural column equal to e_i
 * that may start in the basis. Entering columns are priced by largest
 * reduced cost (in integers when the data allow it); ratio-test ties are
 * broken lexicographically, and a long degenerate run switches to Bland's
 * rule until the objective moves again, so every solve terminates.
 */
EngineResult solve_standard_form(std::size_t rows, const std::vector<SparseColumn>& columns,
                                 const std::vector<mpq_class>& rhs, const std::vector<mpq_class>& cost,
                                 const std::vector<std::size_t>& unit_hint);

}  // namespace bellpoly::detail

#endif  // BELLPOLY_SIMPLEX_ENGINE_HPP
