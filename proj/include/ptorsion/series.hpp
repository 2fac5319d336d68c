#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exp_log.hpp"
#include "integer.hpp"
#include "scalar.hpp"

namespace ptorsion {

using Exponent = std::vector<std::int64_t>;

/// Tail exponent of a series with no omitted terms.
inline constexpr std::int64_t kNoTail = std::numeric_limits<std::int64_t>::max() / 4;

inline std::int64_t total_degree(const Exponent& j) {
  std::int64_t s = 0;
  for (auto e : j) s += e;
  return s;
}

/// Closed polydisc P^d(p^{-m}; y). An empty center means the origin.
template <class S>
struct PolyDisc {
  std::int64_t dim = 1;
  std::int64_t radius_exp = 0;
  std::vector<S> center;

  bool centered_at_origin() const {
    return std::all_of(center.begin(), center.end(), [](const S& c) { return c.is_zero(); });
  }

  /// |x_i - y_i| <= p^{-m} for every coordinate.
  bool contains(const std::vector<S>& x) const {
    if (static_cast<std::int64_t>(x.size()) != dim) return false;
    for (std::int64_t i = 0; i < dim; ++i) {
      const S diff = center.empty() ? x[i] : x[i] - center[i];
      if (diff.min_valuation() < radius_exp) return false;
    }
    return true;
  }

  /// Whether exp/log are valid isomorphisms on this disc (rho < p^{-1/(p-1)}).
  bool is_exp_disc(std::int64_t p) const { return radius_exp >= exp_disc_valuation(p); }

  friend bool operator==(const PolyDisc& a, const PolyDisc& b) {
    return a.dim == b.dim && a.radius_exp == b.radius_exp && a.center == b.center;
  }
};

/// Truncated power series sum a_J (x - y)^J on a polydisc, together with a tail
/// exponent tau: every omitted term satisfies |a_J| rho^|J| <= p^{-tau}.
template <class S>
class AnalyticSeries {
 public:
  AnalyticSeries(PolyDisc<S> disc, std::map<Exponent, S> terms, std::int64_t tail_exp,
                 std::int64_t max_degree = -1)
      : disc_(std::move(disc)), terms_(std::move(terms)), tail_(tail_exp), max_degree_(max_degree) {
    if (disc_.dim < 1) throw InputError("disc dimension must be >= 1");
    if (disc_.radius_exp < 0) throw InputError("radius exponent must be >= 0");
    if (!disc_.center.empty() && static_cast<std::int64_t>(disc_.center.size()) != disc_.dim)
      throw InputError("disc center has wrong dimension");
    for (const auto& [j, a] : terms_) {
      if (static_cast<std::int64_t>(j.size()) != disc_.dim)
        throw InputError("exponent has wrong dimension");
      for (auto e : j)
        if (e < 0) throw InputError("negative exponent in power series");
    }
  }

  /// A polynomial: no omitted terms.
  static AnalyticSeries polynomial(PolyDisc<S> disc, std::map<Exponent, S> terms) {
    return AnalyticSeries(std::move(disc), std::move(terms), kNoTail);
  }

  const PolyDisc<S>& disc() const { return disc_; }
  const std::map<Exponent, S>& terms() const { return terms_; }
  std::int64_t tail_exp() const { return tail_; }
  std::int64_t max_degree() const { return max_degree_; }

  /// Normalized valuation -log_p(|a| rho^|J|) of a stored term (a lower bound when a is
  /// zero to precision).
  std::int64_t term_valuation(const Exponent& j, const S& a) const {
    return a.min_valuation() + disc_.radius_exp * total_degree(j);
  }

  /// Every unknown contribution to the normalized coefficients is at most p^{-e}:
  /// the tail bound combined with the finite precision of the stored coefficients.
  std::int64_t error_exponent() const {
    std::int64_t e = tail_;
    for (const auto& [j, a] : terms_)
      e = std::min(e, a.abs_precision() + disc_.radius_exp * total_degree(j));
    return e;
  }

  /// -log_p of the Gauss norm when it is determined at this precision.
  std::optional<std::int64_t> gauss_valuation() const {
    const std::int64_t e = error_exponent();
    std::optional<std::int64_t> best;
    for (const auto& [j, a] : terms_) {
      if (a.is_zero()) continue;
      const auto t = term_valuation(j, a);
      if (t < e && (!best || t < *best)) best = t;
    }
    return best;
  }

  /// Lower bound for -log_p of the Gauss norm of the full (untruncated) series.
  std::int64_t gauss_lower_bound() const {
    std::int64_t g = tail_;
    for (const auto& [j, a] : terms_) g = std::min(g, term_valuation(j, a));
    return g;
  }

  bool indistinguishable_from_zero() const { return !gauss_valuation().has_value(); }

  friend AnalyticSeries operator+(const AnalyticSeries& f, const AnalyticSeries& g) {
    check_compatible(f, g);
    auto terms = f.terms_;
    for (const auto& [j, b] : g.terms_) {
      auto it = terms.find(j);
      if (it == terms.end()) terms.emplace(j, b);
      else it->second = it->second + b;
    }
    return AnalyticSeries(f.disc_, std::move(terms), std::min(f.tail_, g.tail_),
                          merged_degree(f, g));
  }

  AnalyticSeries operator-() const {
    auto terms = terms_;
    for (auto& [j, a] : terms) a = -a;
    return AnalyticSeries(disc_, std::move(terms), tail_, max_degree_);
  }
  friend AnalyticSeries operator-(const AnalyticSeries& f, const AnalyticSeries& g) {
    return f + (-g);
  }

  friend AnalyticSeries operator*(const AnalyticSeries& f, const AnalyticSeries& g) {
    check_compatible(f, g);
    const std::int64_t deg = merged_degree(f, g);
    std::int64_t tail = std::min(sat_add(f.tail_, g.gauss_lower_bound()),
                                 sat_add(g.tail_, f.gauss_lower_bound()));
    std::map<Exponent, S> terms;
    for (const auto& [ja, a] : f.terms_) {
      for (const auto& [jb, b] : g.terms_) {
        Exponent j(ja.size());
        for (std::size_t i = 0; i < j.size(); ++i) j[i] = ja[i] + jb[i];
        const S c = a * b;
        if (deg >= 0 && total_degree(j) > deg) {
          tail = std::min(tail, f.term_valuation(j, c));
          continue;
        }
        auto it = terms.find(j);
        if (it == terms.end()) terms.emplace(std::move(j), c);
        else it->second = it->second + c;
      }
    }
    return AnalyticSeries(f.disc_, std::move(terms), tail, deg);
  }

  friend AnalyticSeries operator*(const S& c, const AnalyticSeries& f) {
    auto terms = f.terms_;
    for (auto& [j, a] : terms) a = c * a;
    std::int64_t tail = f.tail_;
    if (tail != kNoTail) tail = sat_add(tail, c.min_valuation());
    return AnalyticSeries(f.disc_, std::move(terms), tail, f.max_degree_);
  }

 private:
  static std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= kNoTail || b >= kNoTail) return kNoTail;
    return a + b;
  }
  static std::int64_t merged_degree(const AnalyticSeries& f, const AnalyticSeries& g) {
    if (f.max_degree_ < 0) return g.max_degree_;
    if (g.max_degree_ < 0) return f.max_degree_;
    return std::min(f.max_degree_, g.max_degree_);
  }
  static void check_compatible(const AnalyticSeries& f, const AnalyticSeries& g) {
    if (!(f.disc_ == g.disc_)) throw InputError("series live on different discs");
  }

  PolyDisc<S> disc_;
  std::map<Exponent, S> terms_;
  std::int64_t tail_;
  std::int64_t max_degree_;
};

template <class S>
struct SeriesValue {
  S value;                 // known modulo p^{error_exp}
  std::int64_t error_exp;  // |f(x) - value| <= p^{-error_exp}
};

template <class S>
SeriesValue<S> series_eval(const AnalyticSeries<S>& f, const std::vector<S>& x) {
  const auto& disc = f.disc();
  if (!disc.contains(x)) throw DomainError("point outside disc");
  const std::int64_t err = f.error_exponent();
  std::vector<S> shifted;
  for (std::int64_t i = 0; i < disc.dim; ++i)
    shifted.push_back(disc.center.empty() ? x[i] : x[i] - disc.center[i]);
  const std::int64_t cap = std::min(err, kNoTail / 2);
  S value = x.front().make_zero(cap);
  bool first = true;
  for (const auto& [j, a] : f.terms()) {
    S term = a;
    for (std::size_t i = 0; i < j.size(); ++i)
      if (j[i] > 0) term = term * shifted[i].pow(j[i]);
    value = first ? term : value + term;
    first = false;
  }
  return {value.with_abs_precision(cap), err};
}

/// g(beta) = f(beta . x) with (beta . x)_i = beta^{w_i} x_i, as a series on the unit
/// disc in beta. The coefficient of beta^k is sum_{<w,J> = k} a_J x^J.
template <class S>
AnalyticSeries<S> restrict_to_orbit(const AnalyticSeries<S>& f, const std::vector<S>& x,
                                    const std::vector<std::int64_t>& weights) {
  const auto& disc = f.disc();
  if (!disc.centered_at_origin()) throw InputError("weighted action requires a disc centered at 0");
  if (static_cast<std::int64_t>(weights.size()) != disc.dim) throw InputError("weight vector has wrong length");
  for (auto w : weights)
    if (w <= 0) throw InputError("weights must be positive");
  if (!disc.contains(x)) throw DomainError("point outside disc");
  std::map<Exponent, S> terms;
  for (const auto& [j, a] : f.terms()) {
    S c = a;
    std::int64_t k = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i] > 0) c = c * x[i].pow(j[i]);
      k += weights[i] * j[i];
    }
    Exponent e{k};
    auto it = terms.find(e);
    if (it == terms.end()) terms.emplace(std::move(e), c);
    else it->second = it->second + c;
  }
  PolyDisc<S> unit{1, 0, {}};
  return AnalyticSeries<S>(std::move(unit), std::move(terms), f.tail_exp());
}

/// Strassmann bound of a univariate series: the largest index n maximizing |a_n| rho^n,
/// which equals the number of zeros in the closed disc counted with multiplicity.
template <class S>
std::int64_t strassmann_count(const AnalyticSeries<S>& g) {
  if (g.disc().dim != 1) throw InputError("Strassmann count needs a univariate series");
  const auto gauss = g.gauss_valuation();
  if (!gauss) throw PrecisionError("series indistinguishable from zero at this precision");
  std::int64_t n = 0;
  for (const auto& [j, a] : g.terms())
    if (!a.is_zero() && g.term_valuation(j, a) == *gauss) n = std::max(n, j[0]);
  return n;
}

struct NewtonSegment {
  Rat slope;            // rise over run; roots on this segment have valuation -slope
  std::int64_t length;  // horizontal length = number of such roots
};

struct NewtonPolygon {
  std::int64_t zero_order = 0;  // order of vanishing at 0
  std::vector<NewtonSegment> segments;

  /// Roots (with multiplicity, in an algebraic closure) of valuation >= m, including
  /// the roots at 0. For m = 0 this is the unit-disc root count.
  std::int64_t roots_with_valuation_at_least(std::int64_t m) const {
    std::int64_t n = zero_order;
    for (const auto& s : segments)
      if (-s.slope >= m) n += s.length;
    return n;
  }

  std::int64_t degree() const {
    std::int64_t n = zero_order;
    for (const auto& s : segments) n += s.length;
    return n;
  }
};

/// Lower convex hull of (i, v(a_i)). Coefficients that are zero to precision are
/// treated as exact zeros, so the input should be an exact polynomial.
template <class S>
NewtonPolygon newton_polygon(const std::vector<S>& coeffs) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) pts.emplace_back(static_cast<std::int64_t>(i), coeffs[i].valuation());
  if (pts.empty()) throw DomainError("Newton polygon of the zero polynomial");
  std::vector<std::pair<std::int64_t, std::int64_t>> hull;
  for (const auto& c : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b unless it lies strictly below the segment a-c.
      const __int128 cross = static_cast<__int128>(b.first - a.first) * (c.second - a.second) -
                             static_cast<__int128>(b.second - a.second) * (c.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(c);
  }
  NewtonPolygon np;
  np.zero_order = hull.front().first;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const auto run = hull[k].first - hull[k - 1].first;
    Rat slope(Int(hull[k].second - hull[k - 1].second), Int(run));
    slope.canonicalize();
    np.segments.push_back({slope, run});
  }
  return np;
}

/// Decidable stand-in for "alpha is not a root of unity": alpha = 1 mod p (mod 4 when
/// p = 2) and alpha != 1 at working precision. 1 + p^k Z_p is torsion free there.
template <class S>
void check_not_root_of_unity(const S& alpha) {
  if (alpha.is_zero() || alpha.valuation() != 0) throw DomainError("alpha must be a unit");
  const S d = alpha - alpha.one(alpha.abs_precision());
  if (d.min_valuation() < exp_disc_valuation(alpha.prime()))
    throw DomainError("alpha must be congruent to 1 mod p (mod 4 for p = 2)");
  if (d.is_zero()) throw DomainError("alpha equals 1 at working precision");
}

template <class S>
struct VanishCertificate {
  bool certified = false;
  std::int64_t bound = 0;             // K: number of orbit points is K + 1
  std::int64_t precision = 0;         // conclusions hold modulo p^precision
  std::vector<S> points;              // alpha^n * anchor
  std::vector<S> values;              // g at those points
  std::optional<std::int64_t> failing_index;
  std::optional<std::int64_t> strassmann_bound;
  std::string reason;
};

/// Certify g == 0 on its disc from its values on the orbit alpha^n * anchor, n = 0..K.
/// Evaluations that vanish at K + 1 distinct points, combined with a Strassmann bound
/// <= K, force g to vanish identically. At finite precision the certificate is issued
/// only when the series is also indistinguishable from zero; otherwise the first
/// orbit point with a non-zero value is reported.
template <class S>
VanishCertificate<S> vanish_certificate(const AnalyticSeries<S>& g, const S& alpha,
                                        std::int64_t bound, std::optional<S> anchor = {}) {
  if (g.disc().dim != 1) throw InputError("vanishing certificate needs a univariate series");
  if (bound < 0) throw InputError("bound K must be >= 0");
  check_not_root_of_unity(alpha);
  VanishCertificate<S> cert;
  cert.bound = bound;
  cert.precision = std::min(g.error_exponent(), alpha.abs_precision());
  S point = anchor ? *anchor : alpha.one(alpha.abs_precision());
  for (std::int64_t n = 0; n <= bound; ++n) {
    cert.points.push_back(point);
    point = point * alpha;
  }
  for (std::size_t a = 0; a < cert.points.size(); ++a)
    for (std::size_t b = a + 1; b < cert.points.size(); ++b)
      if ((cert.points[a] - cert.points[b]).is_zero()) {
        cert.reason = "orbit points not distinguishable at this precision";
        return cert;
      }
  for (std::size_t n = 0; n < cert.points.size(); ++n) {
    const auto val = series_eval(g, {cert.points[n]});
    cert.values.push_back(val.value);
    if (!val.value.is_zero()) {
      cert.failing_index = static_cast<std::int64_t>(n);
      cert.reason = "non-zero value at orbit point " + std::to_string(n);
      return cert;
    }
  }
  if (g.indistinguishable_from_zero()) {
    cert.certified = true;
    cert.reason = "vanishes at all orbit points; identically zero at this precision";
    return cert;
  }
  const auto n = strassmann_count(g);
  cert.strassmann_bound = n;
  cert.reason = n <= bound
                    ? "series is non-zero at this precision yet vanishes at more orbit points "
                      "than its Strassmann bound allows: precision insufficient"
                    : "K is below the Strassmann bound";
  return cert;
}

}  // namespace ptorsion
