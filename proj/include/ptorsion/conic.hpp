#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "characters.hpp"
#include "cyclotomic.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "series.hpp"

namespace ptorsion {

/// (beta, x) -> (beta^{w_i} x_i) with a fixed non-torsion unit alpha generating the
/// orbit points alpha^n.
template <class S>
struct WeightedAction {
  std::vector<std::int64_t> weights;
  S alpha;

  static WeightedAction make(std::vector<std::int64_t> weights, S alpha) {
    if (weights.empty()) throw InputError("weighted action needs at least one coordinate");
    for (auto w : weights)
      if (w <= 0) throw InputError("weights must be positive");
    check_not_root_of_unity(alpha);
    return WeightedAction{std::move(weights), std::move(alpha)};
  }

  /// Weight 1 on the first d1 coordinates, weight 2 on the last d2.
  static WeightedAction from_split(std::int64_t d1, std::int64_t d2, S alpha) {
    if (d1 < 0 || d2 < 0) throw InputError("negative block size");
    std::vector<std::int64_t> w(static_cast<std::size_t>(d1), 1);
    w.insert(w.end(), static_cast<std::size_t>(d2), 2);
    return make(std::move(w), std::move(alpha));
  }

  std::int64_t dim() const { return static_cast<std::int64_t>(weights.size()); }

  std::vector<S> apply(const S& beta, const std::vector<S>& x) const {
    if (x.size() != weights.size()) throw InputError("point has wrong dimension");
    std::vector<S> r;
    for (std::size_t i = 0; i < x.size(); ++i) r.push_back(beta.pow(weights[i]) * x[i]);
    return r;
  }
};

/// Common zero set of finitely many series on a disc; `exact` keeps the originating
/// polynomials when the locus came from exact data.
template <class S>
struct AnalyticLocus {
  PolyDisc<S> disc;
  std::vector<AnalyticSeries<S>> series;
  std::optional<std::vector<LaurentPoly>> exact;

  bool is_exact() const { return exact.has_value(); }
};

/// Realize polynomials over Q(zeta_m) on a disc of Q_{p^f}.
inline AnalyticLocus<UnramifiedScalar> locus_from_polynomials(PolyDisc<UnramifiedScalar> disc,
                                                              std::vector<LaurentPoly> polys,
                                                              const std::shared_ptr<const UnramifiedField>& field,
                                                              std::int64_t precision) {
  AnalyticLocus<UnramifiedScalar> locus{disc, {}, std::nullopt};
  for (const auto& f : polys) {
    if (f.nvars() != disc.dim) throw InputError("polynomial has wrong number of variables");
    if (!f.is_polynomial()) throw InputError("locus equations must be polynomials");
    std::map<Exponent, UnramifiedScalar> terms;
    for (const auto& [e, c] : f.terms()) terms.emplace(e, embed_cyclotomic(c, field, precision));
    locus.series.push_back(AnalyticSeries<UnramifiedScalar>::polynomial(disc, std::move(terms)));
  }
  locus.exact = std::move(polys);
  return locus;
}

template <class S>
struct ConicCertificate {
  bool certified = false;
  std::int64_t bound = 0;
  std::vector<VanishCertificate<S>> per_series;
  std::optional<std::size_t> failing_series;
  std::string reason;
};

/// Largest Strassmann count among the orbit restrictions that are determined at this
/// precision (0 when every restriction vanishes to precision).
template <class S>
std::int64_t orbit_bound(const AnalyticLocus<S>& locus, const WeightedAction<S>& action, const std::vector<S>& x) {
  std::int64_t k = 0;
  for (const auto& f : locus.series) {
    const auto g = restrict_to_orbit(f, x, action.weights);
    if (!g.indistinguishable_from_zero()) k = std::max(k, strassmann_count(g));
  }
  return k;
}

/// Certify that the orbit closure {beta . x : |beta| <= 1} lies in the locus, by
/// checking K + 1 orbit points of each restricted series.
template <class S>
ConicCertificate<S> conic_certificate(const AnalyticLocus<S>& locus, const WeightedAction<S>& action,
                                      const std::vector<S>& x, std::int64_t bound) {
  if (action.dim() != locus.disc.dim) throw InputError("action and locus have different dimensions");
  ConicCertificate<S> cert;
  cert.bound = bound;
  for (std::size_t i = 0; i < locus.series.size(); ++i) {
    if (!series_eval(locus.series[i], x).value.is_zero())
      throw DomainError("point is not on the locus at this precision");
  }
  for (std::size_t i = 0; i < locus.series.size(); ++i) {
    const auto g = restrict_to_orbit(locus.series[i], x, action.weights);
    auto vc = vanish_certificate(g, action.alpha, bound);
    const bool ok = vc.certified;
    const std::string reason = vc.reason;
    cert.per_series.push_back(std::move(vc));
    if (!ok) {
      cert.failing_series = i;
      cert.reason = "equation " + std::to_string(i) + ": " + reason;
      return cert;
    }
  }
  cert.certified = true;
  cert.reason = "all orbit restrictions vanish";
  return cert;
}

/// Smallest cyclotomic field containing every coefficient.
inline Cyclotomic::FieldPtr coefficient_field(const std::vector<LaurentPoly>& polys) {
  std::int64_t m = 1;
  for (const auto& f : polys) m = lcm64(m, f.field()->order());
  return CyclotomicField::make(m);
}

struct TangentSpace {
  Matrix<Cyclotomic> jacobian;  // one row per equation
  Matrix<Cyclotomic> basis;     // rows spanning the kernel
  std::int64_t jacobian_rank = 0;
  std::int64_t dim = 0;
};

/// Kernel of the Jacobian at the origin of polynomial equations in `nvars` variables.
inline TangentSpace tangent_space_at_zero(const std::vector<LaurentPoly>& polys, std::int64_t nvars) {
  auto field = coefficient_field(polys);
  const Cyclotomic zero(field);
  TangentSpace ts;
  for (const auto& f : polys) {
    if (f.nvars() != nvars) throw InputError("polynomial has wrong number of variables");
    if (!f.is_polynomial()) throw InputError("tangent space needs polynomial equations");
    std::vector<Cyclotomic> row(static_cast<std::size_t>(nvars), zero);
    for (const auto& [e, c] : f.terms()) {
      const auto deg = std::accumulate(e.begin(), e.end(), std::int64_t{0});
      if (deg == 0) throw DomainError("0 is not on the locus");
      if (deg == 1)
        for (std::size_t i = 0; i < e.size(); ++i)
          if (e[i] == 1) row[i] = c.lift(field);
    }
    ts.jacobian.push_back(std::move(row));
  }
  ts.jacobian_rank = rank_fraction_free(ts.jacobian);
  ts.basis = kernel_basis(ts.jacobian, static_cast<std::size_t>(nvars), zero);
  ts.dim = static_cast<std::int64_t>(ts.basis.size());
  return ts;
}

inline bool is_weighted_homogeneous(const LaurentPoly& f, const std::vector<std::int64_t>& weights) {
  std::optional<std::int64_t> deg;
  for (const auto& [e, c] : f.terms()) {
    std::int64_t k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) k += weights[i] * e[i];
    if (deg && *deg != k) return false;
    deg = k;
  }
  return true;
}

inline bool is_linear(const LaurentPoly& f) {
  for (const auto& [e, c] : f.terms())
    if (std::accumulate(e.begin(), e.end(), std::int64_t{0}) > 1) return false;
  return true;
}

struct LinearityOptions {
  std::int64_t samples = 20;
  std::uint64_t seed = 0;
  std::int64_t scale = 1;  // free coordinates are scale * (small integer)
};

struct LinearityReport {
  std::string verdict;  // holds | fails_at_point | undetermined | hypotheses_not_met
  std::string method;   // exact | sampled | none
  bool smooth = false;
  std::int64_t num_equations = 0;
  TangentSpace tangent;
  std::map<std::int64_t, std::int64_t> eigenspace_dims;  // weight -> dim(T0 S meet V_w)
  bool splitting_ok = false;
  std::int64_t image_dim = 0;
  std::int64_t target_dim = 0;
  bool surjective = false;
  bool weighted_homogeneous = false;
  std::optional<bool> sigma_stable;
  std::optional<bool> projection_in_target;
  std::int64_t samples_checked = 0;
  std::optional<std::vector<Cyclotomic>> counterexample;
  std::string note;
};

namespace detail {

inline std::int64_t restricted_rank(const Matrix<Cyclotomic>& rows, const std::vector<std::size_t>& cols) {
  Matrix<Cyclotomic> m;
  for (const auto& r : rows) {
    std::vector<Cyclotomic> v;
    for (auto c : cols) v.push_back(r[c]);
    m.push_back(std::move(v));
  }
  if (cols.empty()) return 0;
  return rank_fraction_free(m);
}

// For each equation a variable occurring only there, in a single term c * x_k.
inline std::optional<std::vector<std::size_t>> designated_variables(const std::vector<LaurentPoly>& polys,
                                                                    std::size_t nvars) {
  std::vector<std::size_t> chosen;
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < nvars && !pick; ++k) {
      if (used.count(k)) continue;
      bool elsewhere = false;
      for (std::size_t j = 0; j < polys.size() && !elsewhere; ++j) {
        if (j == i) continue;
        for (const auto& [e, c] : polys[j].terms())
          if (e[k] != 0) elsewhere = true;
      }
      if (elsewhere) continue;
      std::int64_t hits = 0;
      bool clean = true;
      for (const auto& [e, c] : polys[i].terms()) {
        if (e[k] == 0) continue;
        ++hits;
        for (std::size_t t = 0; t < nvars; ++t)
          if (e[t] != (t == k ? 1 : 0)) clean = false;
      }
      if (hits == 1 && clean) pick = k;
    }
    if (!pick) return std::nullopt;
    used.insert(*pick);
    chosen.push_back(*pick);
  }
  return chosen;
}

}  // namespace detail

/// Test the linearity conclusion S ⊆ T_0 S for an exact σ-stable locus through 0.
/// `target` are the equations of S_2 in the coordinates of weight > 1.
inline LinearityReport linearity_check(const std::vector<LaurentPoly>& polys, const std::vector<std::int64_t>& weights,
                                       const std::vector<LaurentPoly>& target, const LinearityOptions& opts = {}) {
  const auto d = static_cast<std::int64_t>(weights.size());
  LinearityReport rep;
  rep.num_equations = 0;
  std::vector<LaurentPoly> eqs;
  for (const auto& f : polys)
    if (!f.is_zero()) eqs.push_back(f);
  rep.num_equations = static_cast<std::int64_t>(eqs.size());
  rep.tangent = tangent_space_at_zero(eqs, d);
  rep.smooth = rep.tangent.jacobian_rank == rep.num_equations;

  std::vector<std::size_t> upper;
  std::map<std::int64_t, std::vector<std::size_t>> by_weight;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    by_weight[weights[i]].push_back(i);
    if (weights[i] > 1) upper.push_back(i);
  }
  std::int64_t split_total = 0;
  for (const auto& [w, cols] : by_weight) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] != w) rest.push_back(i);
    const auto dim_w = rep.tangent.dim - detail::restricted_rank(rep.tangent.basis, rest);
    rep.eigenspace_dims[w] = dim_w;
    split_total += dim_w;
  }
  rep.splitting_ok = split_total == rep.tangent.dim;
  rep.image_dim = detail::restricted_rank(rep.tangent.basis, upper);
  rep.target_dim = static_cast<std::int64_t>(upper.size());
  if (!target.empty()) rep.target_dim = tangent_space_at_zero(target, static_cast<std::int64_t>(upper.size())).dim;
  rep.surjective = rep.image_dim == rep.target_dim;

  rep.weighted_homogeneous = std::all_of(eqs.begin(), eqs.end(),
                                         [&](const LaurentPoly& f) { return is_weighted_homogeneous(f, weights); });
  if (rep.weighted_homogeneous) rep.sigma_stable = true;

  if (!rep.smooth) {
    rep.verdict = "hypotheses_not_met";
    rep.method = "none";
    rep.note = "Jacobian rank at 0 is below the number of equations";
    return rep;
  }

  // Exact points of S by solving designated linear variables.
  auto field = coefficient_field(eqs.empty() ? std::vector<LaurentPoly>{LaurentPoly(CyclotomicField::make(1), d)} : eqs);
  std::vector<std::vector<Cyclotomic>> points;
  const auto designated = detail::designated_variables(eqs, static_cast<std::size_t>(d));
  if (designated) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> dist(-5, 5);
    std::set<std::size_t> solved(designated->begin(), designated->end());
    for (std::int64_t s = 0; s < opts.samples; ++s) {
      std::vector<Cyclotomic> x(static_cast<std::size_t>(d), Cyclotomic(field));
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!solved.count(i)) x[i] = Cyclotomic::rational(field, Rat(opts.scale * dist(rng)));
      for (std::size_t e = 0; e < eqs.size(); ++e) {
        const auto k = (*designated)[e];
        LaurentPoly rest(eqs[e].field(), d);
        Cyclotomic coeff(field);
        for (const auto& [ex, c] : eqs[e].terms()) {
          if (ex[k] == 1) coeff = c.lift(field);
          else rest.add_term(ex, c);
        }
        x[k] = -(rest.lift(field).evaluate(x) / coeff);
      }
      points.push_back(std::move(x));
    }
  }
  for (const auto& x : points)
    for (const auto& f : eqs)
      if (!f.lift(field).evaluate(x).is_zero()) throw DomainError("internal error: sampled point is not on the locus");

  if (!rep.sigma_stable && !points.empty()) {
    bool ok = true;
    for (const auto& x : points)
      for (std::int64_t beta : {2, 3}) {
        std::vector<Cyclotomic> bx = x;
        for (std::size_t i = 0; i < bx.size(); ++i) {
          Rat b = 1;
          for (std::int64_t t = 0; t < weights[i]; ++t) b *= beta;
          bx[i] = b * bx[i];
        }
        for (const auto& f : eqs)
          if (!f.lift(field).evaluate(bx).is_zero()) ok = false;
      }
    rep.sigma_stable = ok;
  }
  if (!target.empty() && !points.empty()) {
    bool ok = true;
    auto tf = coefficient_field(target);
    auto big = CyclotomicField::make(lcm64(tf->order(), field->order()));
    for (const auto& x : points) {
      std::vector<Cyclotomic> qx;
      for (auto i : upper) qx.push_back(x[i].lift(big));
      for (const auto& g : target)
        if (!g.lift(big).evaluate(qx).is_zero()) ok = false;
    }
    rep.projection_in_target = ok;
  }
  if ((rep.sigma_stable && !*rep.sigma_stable) || (rep.projection_in_target && !*rep.projection_in_target)) {
    rep.verdict = "hypotheses_not_met";
    rep.method = "sampled";
    rep.note = rep.sigma_stable && !*rep.sigma_stable ? "locus is not stable under the weighted action"
                                                       : "projection of the locus leaves the target";
    return rep;
  }

  if (std::all_of(eqs.begin(), eqs.end(), is_linear)) {
    rep.verdict = "holds";
    rep.method = "exact";
    rep.note = "linear equations through 0 define their own tangent space";
    return rep;
  }
  if (points.empty()) {
    rep.verdict = "undetermined";
    rep.method = "none";
    rep.note = "no coordinate of the locus can be solved exactly; supply sample points";
    return rep;
  }
  rep.method = "sampled";
  for (const auto& x : points) {
    ++rep.samples_checked;
    for (const auto& row : rep.tangent.jacobian) {
      Cyclotomic s(field);
      for (std::size_t i = 0; i < x.size(); ++i) s = s + row[i].lift(field) * x[i];
      if (!s.is_zero()) {
        rep.verdict = "fails_at_point";
        rep.counterexample = x;
        rep.note = "sampled point of the locus lies outside the tangent space at 0";
        return rep;
      }
    }
  }
  rep.verdict = "holds";
  rep.note = "every sampled point lies in the tangent space at 0";
  return rep;
}

}  // namespace ptorsion
