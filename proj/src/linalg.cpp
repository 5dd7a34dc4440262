#include "courantlab/linalg.hpp"

#include <algorithm>

namespace clab {

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix out(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix out(a.cols(), a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  RationalMatrix work = a;
  RationalMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational scale = 1 / work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work(r, col) == 0) continue;
      const Rational f = work(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) -= f * work(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

bool RowReducer::add_row(std::vector<Rational> row) {
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = row[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (rows_[i][j] != 0) row[j] -= f * rows_[i][j];
  }
  auto lead = std::find_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
  if (lead == row.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(lead - row.begin());
  const Rational scale = 1 / row[pivot];
  for (auto& x : row) x *= scale;
  // Keep the basis fully reduced in the new pivot column.
  for (auto& existing : rows_) {
    const Rational f = existing[pivot];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (row[j] != 0) existing[j] -= f * row[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + idx, std::move(row));
  return true;
}

std::vector<std::vector<Rational>> RowReducer::kernel() const {
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) v[pivots_[i]] = -rows_[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Rational>> canonical_span(const std::vector<std::vector<Rational>>& vectors,
                                                  std::size_t dim) {
  RowReducer reducer(dim);
  for (const auto& v : vectors) reducer.add_row(v);
  return reducer.basis();
}

}  // namespace clab
