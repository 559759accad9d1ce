#include "bellpoly/linalg.hpp"

#include <stdexcept>

namespace bellpoly {

Rational dot(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    mpq_class acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || b[i].is_zero()) continue;
        acc += a[i].mpq() * b[i].mpq();
    }
    return Rational(std::move(acc));
}

RVector operator+(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector add: length mismatch");
    RVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

RVector operator-(const RVector& a, const RVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector subtract: length mismatch");
    RVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RVector operator*(const Rational& s, const RVector& v) {
    RVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

RMatrix::RMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("RMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RMatrix RMatrix::identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMatrix RMatrix::from_rows(std::span<const RVector> rows, std::size_t cols) {
    RMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("RMatrix::from_rows: row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RVector RMatrix::row(std::size_t r) const {
    RVector out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
}

RVector RMatrix::operator*(const RVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    RVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        mpq_class acc;
        for (std::size_t c = 0; c < cols_; ++c) {
            const auto& a = (*this)(r, c);
            if (!a.is_zero()) acc += a.mpq() * x[c].mpq();
        }
        out[r] = Rational(std::move(acc));
    }
    return out;
}

void RMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void RMatrix::scale_row(std::size_t r, const Rational& s) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) *= s;
}

std::vector<std::size_t> row_reduce(RMatrix& m, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < pivot_cols && lead < m.rows(); ++col) {
        std::size_t p = lead;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, lead);
        const mpq_class inv = 1 / m(lead, col).mpq();
        for (std::size_t c = col; c < m.cols(); ++c) m(lead, c).mpq() *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, col).is_zero()) continue;
            const mpq_class f = m(r, col).mpq();
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (!m(lead, c).is_zero()) m(r, c).mpq() -= f * m(lead, c).mpq();
            }
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

std::optional<LinearSolution> solve_linear_system(const RMatrix& a, const RVector& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve_linear_system: A has " + std::to_string(a.rows()) +
                                                          " rows but b has length " + std::to_string(b.size()));
    const std::size_t n = a.cols();
    RMatrix aug(a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    const auto pivots = row_reduce(aug, n);
    for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
        if (!aug(r, n).is_zero()) return std::nullopt;
    }
    LinearSolution sol{RVector(n), pivots.size() == n};
    for (std::size_t i = 0; i < pivots.size(); ++i) sol.x[pivots[i]] = aug(i, n);
    return sol;
}

std::size_t matrix_rank(const RMatrix& a) {
    RMatrix m = a;
    return row_reduce(m, m.cols()).size();
}

}  // namespace bellpoly
