// Dense exact vectors, matrices and Gaussian elimination over the rationals.

#ifndef BELLPOLY_LINALG_HPP
#define BELLPOLY_LINALG_HPP

#include "bellpoly/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bellpoly {

/// Fixed-length vector of exact rationals.
class RVector {
  public:
    RVector() = default;
    explicit RVector(std::size_t n) : data_(n) {}
    RVector(std::initializer_list<Rational> values) : data_(values) {}
    explicit RVector(std::vector<Rational> values) : data_(std::move(values)) {}

    std::size_t size() const { return data_.size(); }
    Rational& operator[](std::size_t i) { return data_[i]; }
    const Rational& operator[](std::size_t i) const { return data_[i]; }

    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }
    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }

    std::span<const Rational> view() const { return data_; }
    const std::vector<Rational>& values() const { return data_; }

    friend bool operator==(const RVector&, const RVector&) = default;
    /// Lexicographic order on exact coordinates.
    friend auto operator<=>(const RVector& a, const RVector& b) { return a.data_ <=> b.data_; }

  private:
    std::vector<Rational> data_;
};

Rational dot(const RVector& a, const RVector& b);
RVector operator+(const RVector& a, const RVector& b);
RVector operator-(const RVector& a, const RVector& b);
RVector operator*(const Rational& s, const RVector& v);

/// Dense row-major rational matrix.
class RMatrix {
  public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
    static RMatrix identity(std::size_t n);
    static RMatrix from_rows(std::span<const RVector> rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RVector row(std::size_t r) const;
    RVector operator*(const RVector& x) const;
    void swap_rows(std::size_t a, std::size_t b);
    void scale_row(std::size_t r, const Rational& s);

    friend bool operator==(const RMatrix&, const RMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct LinearSolution {
    RVector x;
    bool unique = true;  ///< false when the system is underdetermined; x is one particular solution
};

/**
 * Exact solve of A x = b by Gaussian elimination with nonzero pivoting.
 *
 * Returns std::nullopt when the system is inconsistent. Free variables of an
 * underdetermined system are set to zero and `unique` is cleared.
 * Throws std::invalid_argument when A.rows() != b.size().
 */
std::optional<LinearSolution> solve_linear_system(const RMatrix& a, const RVector& b);

std::size_t matrix_rank(const RMatrix& a);

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> row_reduce(RMatrix& m, std::size_t pivot_cols);

}  // namespace bellpoly

#endif  // BELLPOLY_LINALG_HPP
