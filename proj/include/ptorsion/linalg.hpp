#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace ptorsion {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Rank by fraction-free elimination: rows are combined as pivot*row - a*pivot_row,
/// so only ring operations and zero tests are needed.
template <class T>
std::int64_t rank_fraction_free(Matrix<T> m) {
  std::int64_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const T a = m[i][c];
      const T b = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = b * m[i][j] - a * m[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

/// Reduced row echelon form over a field; returns the pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const T inv = m[r][c].inverse();
    for (std::size_t j = 0; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const T a = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - a * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of {x : m x = 0} over a field. `zero` fixes the field of the output.
template <class T>
Matrix<T> kernel_basis(Matrix<T> m, std::size_t cols, const T& zero) {
  const auto pivots = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<T> basis;
  const T one = zero.one_like();
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Determinant over a commutative ring by Laplace expansion along the first row.
/// Intended for the small (<= 6x6) symbolic matrices of determinantal ideals.
template <class T>
T determinant(const Matrix<T>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  if (n == 1) return m[0][0];
  T sum = zero;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    Matrix<T> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const T term = m[0][c] * determinant(minor, zero, one);
    sum = (c % 2 == 0) ? sum + term : sum - term;
  }
  return sum;
}

}  // namespace ptorsion
