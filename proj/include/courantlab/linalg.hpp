#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "courantlab/rational.hpp"

namespace clab {

/// Dense row-major matrix. Used for the pairing (over Q) and for
/// endomorphisms (over Q[q], with T = GradedPoly).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);

/// Exact inverse by Gauss-Jordan; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

/// Incrementally maintained reduced row echelon basis of a row space.
/// Pivots are chosen by column order, so the basis (and everything derived
/// from it) is reproducible.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}

  /// Reduces `row` against the current basis and inserts it if independent.
  /// Returns true when the rank increased.
  bool add_row(std::vector<Rational> row);

  std::size_t rank() const { return rows_.size(); }
  /// Reduced row echelon basis, sorted by pivot column.
  const std::vector<std::vector<Rational>>& basis() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Basis of the null space {x : R x = 0}, one vector per free column,
  /// each normalized to have 1 at its free column.
  std::vector<std::vector<Rational>> kernel() const;

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;  // fully reduced, pivot = 1
  std::vector<std::size_t> pivots_;
};

/// Reduced row echelon form of a set of vectors (as rows), dropping zero rows.
/// Two families span the same space iff their canonical forms are equal.
std::vector<std::vector<Rational>> canonical_span(const std::vector<std::vector<Rational>>& vectors,
                                                  std::size_t dim);

}  // namespace clab
