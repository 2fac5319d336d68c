#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace ptorsion {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;

inline IntMat identity_matrix(std::size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::size_t num_cols(const IntMat& a, std::size_t fallback = 0) {
  return a.empty() ? fallback : a[0].size();
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = num_cols(b);
  IntMat r(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw InputError("matrix dimension mismatch");
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] = checked_add(r[i][j], checked_mul(a[i][t], b[t][j]));
    }
  }
  return r;
}

inline IntMat transpose(const IntMat& a, std::size_t cols = 0) {
  const std::size_t n = a.size(), m = num_cols(a, cols);
  IntMat r(m, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

/// U * A * W = D with U, W unimodular, D diagonal with d_1 | d_2 | ... and d_i >= 0.
/// W_inv is the inverse of W.
struct SmithForm {
  IntMat U, W, W_inv;
  IntVec diagonal;  // min(rows, cols) entries
  std::int64_t rank = 0;
};

namespace detail {

// Column operations on A are mirrored on W (columns) and W_inv (rows, inverse op).
struct SmithWork {
  IntMat A, U, W, Winv;
  std::size_t rows, cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : A) std::swap(r[i], r[j]);
    for (auto& r : W) std::swap(r[i], r[j]);
    std::swap(Winv[i], Winv[j]);
  }
  // row_i -= k row_j
  void row_sub(std::size_t i, std::size_t j, std::int64_t k) {
    for (std::size_t c = 0; c < cols; ++c) A[i][c] = checked_add(A[i][c], -checked_mul(k, A[j][c]));
    for (std::size_t c = 0; c < rows; ++c) U[i][c] = checked_add(U[i][c], -checked_mul(k, U[j][c]));
  }
  // col_i -= k col_j
  void col_sub(std::size_t i, std::size_t j, std::int64_t k) {
    for (auto& r : A) r[i] = checked_add(r[i], -checked_mul(k, r[j]));
    for (auto& r : W) r[i] = checked_add(r[i], -checked_mul(k, r[j]));
    for (std::size_t c = 0; c < cols; ++c) Winv[j][c] = checked_add(Winv[j][c], checked_mul(k, Winv[i][c]));
  }
  void negate_row(std::size_t i) {
    for (auto& x : A[i]) x = -x;
    for (auto& x : U[i]) x = -x;
  }
};

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

inline SmithForm smith_form(const IntMat& a, std::size_t cols_if_empty = 0) {
  detail::SmithWork w;
  w.rows = a.size();
  w.cols = num_cols(a, cols_if_empty);
  w.A = a;
  w.U = identity_matrix(w.rows);
  w.W = identity_matrix(w.cols);
  w.Winv = identity_matrix(w.cols);
  const std::size_t lim = std::min(w.rows, w.cols);
  for (std::size_t t = 0; t < lim; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = w.rows, pj = w.cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < w.rows; ++i)
        for (std::size_t j = t; j < w.cols; ++j) {
          const auto v = w.A[i][j] < 0 ? -w.A[i][j] : w.A[i][j];
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) break;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        if (w.A[i][t] == 0) continue;
        w.row_sub(i, t, detail::floor_div(w.A[i][t], w.A[t][t]));
        if (w.A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.cols; ++j) {
        if (w.A[t][j] == 0) continue;
        w.col_sub(j, t, detail::floor_div(w.A[t][j], w.A[t][t]));
        if (w.A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = w.rows;
      for (std::size_t i = t + 1; i < w.rows && bad == w.rows; ++i)
        for (std::size_t j = t + 1; j < w.cols; ++j)
          if (w.A[i][j] % w.A[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == w.rows) break;
      w.row_sub(t, bad, -1);
    }
    if (t < w.rows && t < w.cols && w.A[t][t] < 0) w.negate_row(t);
  }
  SmithForm s;
  s.diagonal.resize(lim);
  for (std::size_t i = 0; i < lim; ++i) {
    s.diagonal[i] = w.A[i][i];
    if (s.diagonal[i] != 0) ++s.rank;
  }
  s.U = std::move(w.U);
  s.W = std::move(w.W);
  s.W_inv = std::move(w.Winv);
  return s;
}

/// Row-style Hermite normal form of the row lattice of B: H = T * B with H's nonzero
/// rows in echelon form, positive pivots, entries above each pivot in [0, pivot).
/// Zero rows are dropped from H and the corresponding rows from T.
struct HermiteForm {
  IntMat H, T;
};

inline HermiteForm hermite_form(const IntMat& b, std::size_t cols_if_empty = 0) {
  const std::size_t n = b.size(), m = num_cols(b, cols_if_empty);
  IntMat A = b;
  IntMat T = identity_matrix(n);
  auto row_sub = [&](std::size_t i, std::size_t j, std::int64_t k) {
    for (std::size_t c = 0; c < m; ++c) A[i][c] = checked_add(A[i][c], -checked_mul(k, A[j][c]));
    for (std::size_t c = 0; c < n; ++c) T[i][c] = checked_add(T[i][c], -checked_mul(k, T[j][c]));
  };
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    while (true) {
      std::size_t piv = n;
      for (std::size_t i = r; i < n; ++i)
        if (A[i][c] != 0 && (piv == n || std::abs(A[i][c]) < std::abs(A[piv][c]))) piv = i;
      if (piv == n) break;
      std::swap(A[r], A[piv]);
      std::swap(T[r], T[piv]);
      bool done = true;
      for (std::size_t i = r + 1; i < n; ++i) {
        if (A[i][c] == 0) continue;
        row_sub(i, r, detail::floor_div(A[i][c], A[r][c]));
        if (A[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (A[r][c] == 0) continue;
    if (A[r][c] < 0) {
      for (auto& x : A[r]) x = -x;
      for (auto& x : T[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) row_sub(i, r, detail::floor_div(A[i][c], A[r][c]));
    pivot_cols.push_back(c);
    ++r;
  }
  A.resize(r);
  T.resize(r);
  return {A, T};
}

/// Basis (rows) of {x in Z^n : A x = 0}.
inline IntMat integer_kernel(const IntMat& a, std::size_t cols) {
  const auto s = smith_form(a, cols);
  IntMat basis;
  for (std::size_t j = static_cast<std::size_t>(s.rank); j < cols; ++j) {
    IntVec v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.W[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Determinant of a small square integer matrix by fraction-free elimination.
inline std::int64_t int_determinant(IntMat a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return to_int64(Int(sign * m[n - 1][n - 1]));
}

/// Inverse of a unimodular matrix.
inline IntMat unimodular_inverse(const IntMat& a) {
  const auto d = int_determinant(a);
  if (d != 1 && d != -1) throw DomainError("matrix is not unimodular");
  const auto s = smith_form(a);
  // U A W = I  =>  A^{-1} = W U.
  return mat_mul(s.W, s.U);
}

}  // namespace ptorsion
