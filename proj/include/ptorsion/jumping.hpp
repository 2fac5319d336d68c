#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "characters.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "torsion_coset.hpp"

namespace ptorsion {

/// Bounded cochain complex of free modules over the Laurent ring in `vars` variables:
/// D^i : C^i -> C^{i+1}, stored as an n_{i+1} x n_i matrix.
class TwistedComplex {
 public:
  TwistedComplex(std::int64_t vars, IntVec dims, std::vector<Matrix<LaurentPoly>> diffs)
      : vars_(vars), dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (vars_ < 1) throw InputError("complex needs at least one variable");
    if (dims_.empty() || diffs_.size() + 1 != dims_.size())
      throw InputError("need one differential between consecutive terms");
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
      const auto& m = diffs_[i];
      if (static_cast<std::int64_t>(m.size()) != dims_[i + 1]) throw InputError("differential has wrong row count");
      for (const auto& row : m) {
        if (static_cast<std::int64_t>(row.size()) != dims_[i]) throw InputError("differential has wrong column count");
        for (const auto& e : row)
          if (e.nvars() != vars_) throw InputError("entry has wrong number of variables");
      }
    }
    for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
      for (std::int64_t r = 0; r < dims_[i + 2]; ++r)
        for (std::int64_t c = 0; c < dims_[i]; ++c) {
          LaurentPoly s(CyclotomicField::make(1), vars_);
          for (std::int64_t k = 0; k < dims_[i + 1]; ++k)
            s = s + diffs_[i + 1][static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                        diffs_[i][static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
          if (!s.is_zero()) throw InputError("differentials do not compose to zero");
        }
  }

  std::int64_t vars() const { return vars_; }
  const IntVec& dims() const { return dims_; }
  const std::vector<Matrix<LaurentPoly>>& differentials() const { return diffs_; }
  std::int64_t length() const { return static_cast<std::int64_t>(dims_.size()); }

  std::int64_t euler_characteristic() const {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) e += (i % 2 == 0 ? 1 : -1) * dims_[i];
    return e;
  }

 private:
  std::int64_t vars_;
  IntVec dims_;
  std::vector<Matrix<LaurentPoly>> diffs_;
};

namespace builtin {

inline LaurentPoly tm1(std::int64_t vars, std::int64_t i) {
  return LaurentPoly::variable_minus_one(CyclotomicField::make(1), vars, i);
}

/// Wedge of n circles: D^0 = (t_k - 1)_k.
inline TwistedComplex wedge(std::int64_t n) {
  if (n < 1) throw InputError("wedge needs n >= 1");
  Matrix<LaurentPoly> d0;
  for (std::int64_t k = 0; k < n; ++k) d0.push_back({tm1(n, k)});
  return TwistedComplex(n, {1, n}, {d0});
}

inline TwistedComplex circle() { return wedge(1); }

/// Closed orientable surface of genus g with generators a_1, b_1, ..., a_g, b_g;
/// D^1 is the abelianized Fox Jacobian of the product of commutators.
inline TwistedComplex surface(std::int64_t g) {
  if (g < 1) throw InputError("surface needs genus >= 1");
  const std::int64_t n = 2 * g;
  Matrix<LaurentPoly> d0;
  for (std::int64_t k = 0; k < n; ++k) d0.push_back({tm1(n, k)});
  std::vector<LaurentPoly> row;
  for (std::int64_t i = 0; i < g; ++i) {
    row.push_back(-tm1(n, 2 * i + 1));
    row.push_back(tm1(n, 2 * i));
  }
  return TwistedComplex(n, {1, n, 1}, {d0, {row}});
}

inline TwistedComplex torus() { return surface(1); }

}  // namespace builtin

namespace detail {

inline Cyclotomic::FieldPtr specialization_field(const TwistedComplex& c, const std::vector<QZ>& point) {
  std::int64_t m = 1;
  for (const auto& q : point) m = lcm64(m, q.order());
  for (const auto& d : c.differentials())
    for (const auto& row : d)
      for (const auto& e : row) m = lcm64(m, e.field()->order());
  return CyclotomicField::make(m);
}

}  // namespace detail

/// h^i of the complex twisted by the character t_k -> exp(2 pi i q_k).
inline IntVec specialize(const TwistedComplex& c, const std::vector<QZ>& point) {
  if (static_cast<std::int64_t>(point.size()) != c.vars()) throw InputError("character has wrong number of coordinates");
  const auto field = detail::specialization_field(c, point);
  IntVec ranks;
  for (const auto& d : c.differentials()) {
    Matrix<Cyclotomic> m;
    for (const auto& row : d) {
      std::vector<Cyclotomic> r;
      for (const auto& e : row) r.push_back(e.evaluate_at_roots(point, field));
      m.push_back(std::move(r));
    }
    ranks.push_back(rank_fraction_free(m));
  }
  IntVec h;
  for (std::size_t i = 0; i < c.dims().size(); ++i) {
    std::int64_t v = c.dims()[i];
    if (i < ranks.size()) v -= ranks[i];
    if (i > 0) v -= ranks[i - 1];
    h.push_back(v);
  }
  return h;
}

inline IntVec specialize(const TwistedComplex& c, const TorsionCharacter& t) { return specialize(c, t.free); }

struct ScanEntry {
  TorsionPoint character;
  IntVec h;
};

struct JumpingLocusSample {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t order_bound = 1;
  std::int64_t scanned = 0;
  std::vector<TorsionPoint> hits;
  std::vector<ScanEntry> entries;  // every scanned character, lexicographic
  bool euler_invariant = true;
};

/// All characters of order dividing M, in lexicographic order of their values.
inline std::vector<TorsionPoint> torsion_grid(std::int64_t d, std::int64_t m) {
  if (m < 1) throw InputError("order bound must be >= 1");
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < d; ++i) {
    count = checked_mul(count, m);
    if (count > kMaxComponents) throw DomainError("scan too large");
  }
  std::vector<TorsionPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t n = 0; n < count; ++n) {
    TorsionPoint t(static_cast<std::size_t>(d));
    std::int64_t rest = n;
    for (std::int64_t k = d - 1; k >= 0; --k) {
      t[static_cast<std::size_t>(k)] = QZ(rest % m, m);
      rest /= m;
    }
    out.push_back(std::move(t));
  }
  return out;
}

/// Characters of order dividing M with h^i > j. Work is split over `jobs` threads and
/// merged by index, so the result does not depend on the thread count.
inline JumpingLocusSample scan_torsion(const TwistedComplex& c, std::int64_t i, std::int64_t j, std::int64_t m,
                                       std::int64_t jobs = 1) {
  if (i < 0 || i >= c.length()) throw InputError("cohomological degree out of range");
  JumpingLocusSample s{i, j, m, 0, {}, {}, true};
  const auto grid = torsion_grid(c.vars(), m);
  std::vector<IntVec> hs(grid.size());
  const auto workers = static_cast<std::size_t>(std::max<std::int64_t>(1, std::min<std::int64_t>(jobs, 64)));
  if (workers == 1) {
    for (std::size_t k = 0; k < grid.size(); ++k) hs[k] = specialize(c, grid[k]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex mu;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        try {
          for (std::size_t k = next++; k < grid.size(); k = next++) hs[k] = specialize(c, grid[k]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  const auto euler = c.euler_characteristic();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::int64_t e = 0;
    for (std::size_t t = 0; t < hs[k].size(); ++t) e += (t % 2 == 0 ? 1 : -1) * hs[k][t];
    if (e != euler) s.euler_invariant = false;
    if (hs[k][static_cast<std::size_t>(i)] > j) s.hits.push_back(grid[k]);
    s.entries.push_back({grid[k], hs[k]});
  }
  s.scanned = static_cast<std::int64_t>(grid.size());
  return s;
}

inline constexpr std::size_t kMinorSizeCap = 6;

struct FittingResult {
  bool size_limited = false;
  std::string reason;
  std::int64_t minor_size = 0;
  std::vector<LaurentPoly> generators;  // normalized; {} = whole torus, {1} = empty locus
};

namespace detail {

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t s = start; s < n; ++s) {
      cur.push_back(s);
      self(self, s + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Remove repeated candidate factors and redundant multiples; keeps the zero set.
inline std::vector<LaurentPoly> simplify_generators(std::vector<LaurentPoly> gens, const std::vector<LaurentPoly>& candidates) {
  std::vector<LaurentPoly> out;
  for (auto g : gens) {
    if (g.is_zero()) continue;
    g = g.normalized();
    if (g.is_constant()) return {g};
    for (const auto& c : candidates) {
      if (c.is_constant()) continue;
      while (true) {
        const auto q = g.divide_exact(c);
        if (!q) break;
        if (!q->divide_exact(c)) break;
        g = q->normalized();
      }
    }
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  std::vector<LaurentPoly> kept;
  for (std::size_t a = 0; a < out.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < out.size() && !redundant; ++b) {
      if (a == b) continue;
      const auto q = out[a].divide_exact(out[b]);
      if (q && (!q->is_constant() || b < a)) redundant = true;
    }
    if (!redundant) kept.push_back(out[a]);
  }
  std::sort(kept.begin(), kept.end(), [](const LaurentPoly& x, const LaurentPoly& y) { return x.str() < y.str(); });
  return kept;
}

}  // namespace detail

/// Generators of the locus h^i > j: rank D^i + rank D^{i-1} < n_i - j, i.e. the
/// vanishing of the minors of size n_i - j of diag(D^i, D^{i-1}).
inline FittingResult fitting_locus(const TwistedComplex& c, std::int64_t i, std::int64_t j) {
  if (i < 0 || i >= c.length()) throw InputError("cohomological degree out of range");
  const auto& dims = c.dims();
  const auto ii = static_cast<std::size_t>(i);
  const std::size_t rows_a = ii + 1 < dims.size() ? static_cast<std::size_t>(dims[ii + 1]) : 0;
  const std::size_t cols_a = static_cast<std::size_t>(dims[ii]);
  const std::size_t rows_b = static_cast<std::size_t>(dims[ii]);
  const std::size_t cols_b = ii > 0 ? static_cast<std::size_t>(dims[ii - 1]) : 0;
  const std::size_t rows = rows_a + rows_b, cols = cols_a + cols_b;
  FittingResult res;
  const auto field = CyclotomicField::make(1);
  const std::int64_t r = dims[ii] - j;
  res.minor_size = r;
  auto one = LaurentPoly::constant(field, c.vars(), Rat(1));
  if (r <= 0) {
    res.generators = {one};
    return res;
  }
  if (static_cast<std::size_t>(r) > std::min(rows, cols)) return res;
  if (rows > kMinorSizeCap || cols > kMinorSizeCap) {
    res.size_limited = true;
    res.reason = "size limit exceeded: block matrix is " + std::to_string(rows) + "x" + std::to_string(cols);
    return res;
  }
  const LaurentPoly zero(field, c.vars());
  Matrix<LaurentPoly> block(rows, std::vector<LaurentPoly>(cols, zero));
  std::vector<LaurentPoly> candidates;
  auto place = [&](const Matrix<LaurentPoly>& m, std::size_t r0, std::size_t c0) {
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m[a].size(); ++b) {
        block[r0 + a][c0 + b] = m[a][b];
        if (!m[a][b].is_zero() && !m[a][b].is_constant()) candidates.push_back(m[a][b].normalized());
      }
  };
  if (rows_a > 0) place(c.differentials()[ii], 0, 0);
  if (cols_b > 0) place(c.differentials()[ii - 1], rows_a, cols_a);
  std::vector<LaurentPoly> minors;
  const auto k = static_cast<std::size_t>(r);
  for (const auto& rs : detail::combinations(rows, k))
    for (const auto& cs : detail::combinations(cols, k)) {
      Matrix<LaurentPoly> sub;
      for (auto a : rs) {
        std::vector<LaurentPoly> row;
        for (auto b : cs) row.push_back(block[a][b]);
        sub.push_back(std::move(row));
      }
      auto det = determinant(sub, zero, one);
      if (!det.is_zero()) minors.push_back(std::move(det));
    }
  res.generators = detail::simplify_generators(std::move(minors), candidates);
  return res;
}

struct ShapeReport {
  bool confirmed = false;
  std::string verdict;
  std::optional<BinomialSystem> system;
  std::vector<TorsionCoset> cosets;
};

/// Binomial generators c1 t^a + c2 t^b with -c2/c1 a root of unity become t^{a-b} = -c2/c1.
inline ShapeReport shape_check(const std::vector<LaurentPoly>& gens, std::int64_t vars) {
  ShapeReport rep;
  std::vector<BinomialEquation> eqs;
  bool empty_locus = false;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.num_terms() == 1) {
      empty_locus = true;  // a unit of the Laurent ring
      continue;
    }
    if (g.num_terms() != 2) {
      rep.verdict = "shape undetermined: non-binomial generators";
      return rep;
    }
    const auto& [ea, ca] = *g.terms().begin();
    const auto& [eb, cb] = *g.terms().rbegin();
    const auto ratio = (-cb) / ca;
    const auto e = ratio.root_exponent();
    if (!e) {
      rep.verdict = "shape undetermined: non-binomial generators";
      return rep;
    }
    IntVec v(ea.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = ea[k] - eb[k];
    eqs.push_back({v, *e});
  }
  rep.confirmed = true;
  rep.verdict = "shape confirmed";
  if (empty_locus) return rep;
  rep.system = BinomialSystem::make(vars, eqs);
  rep.cosets = solve(*rep.system);
  return rep;
}

}  // namespace ptorsion
