#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "characters.hpp"
#include "conic.hpp"
#include "errors.hpp"
#include "lattice.hpp"
#include "qz.hpp"
#include "series.hpp"

namespace ptorsion {

using TorsionPoint = std::vector<QZ>;

inline QZ pairing(const IntVec& v, const TorsionPoint& t) {
  if (v.size() != t.size()) throw InputError("exponent vector and point have different lengths");
  QZ s;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * t[i];
  return s;
}

/// x^v = exp(2 pi i e).
struct BinomialEquation {
  IntVec exponents;
  QZ rhs;
};

struct BinomialSystem {
  std::int64_t dim = 0;
  std::vector<BinomialEquation> equations;

  static BinomialSystem make(std::int64_t dim, std::vector<BinomialEquation> eqs) {
    if (dim < 1) throw InputError("torus dimension must be >= 1");
    for (const auto& e : eqs) {
      if (static_cast<std::int64_t>(e.exponents.size()) != dim) throw InputError("exponent vector has wrong length");
      if (std::all_of(e.exponents.begin(), e.exponents.end(), [](std::int64_t x) { return x == 0; }))
        throw InputError("exponent vector must be non-zero");
    }
    return BinomialSystem{dim, std::move(eqs)};
  }

  bool satisfied_by(const TorsionPoint& t) const {
    for (const auto& e : equations)
      if (pairing(e.exponents, t) != e.rhs) return false;
    return true;
  }
};

/// {t : <v, t> = zeta(v) for v in L}, L saturated, stored by a Hermite basis.
struct TorsionCoset {
  std::int64_t ambient = 0;
  IntMat basis;
  std::vector<QZ> translate;

  std::int64_t dim() const { return ambient - static_cast<std::int64_t>(basis.size()); }

  /// Rewrite an independent generating set of L in Hermite form, transporting zeta.
  static TorsionCoset normalized(std::int64_t ambient, const IntMat& rows, const std::vector<QZ>& zeta) {
    const auto h = hermite_form(rows, static_cast<std::size_t>(ambient));
    if (h.H.size() != rows.size()) throw InputError("coset lattice generators are dependent");
    TorsionCoset c{ambient, h.H, {}};
    for (const auto& trow : h.T) {
      QZ z;
      for (std::size_t j = 0; j < trow.size(); ++j) z += trow[j] * zeta[j];
      c.translate.push_back(z);
    }
    return c;
  }

  friend bool operator==(const TorsionCoset&, const TorsionCoset&) = default;
};

/// Canonical output order: dimension, then Hermite basis, then translate values.
inline bool coset_order(const TorsionCoset& a, const TorsionCoset& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.basis != b.basis) return a.basis < b.basis;
  return a.translate < b.translate;
}

inline constexpr std::int64_t kMaxComponents = 1000000;

/// Decompose a binomial system into disjoint torsion cosets.
inline std::vector<TorsionCoset> solve(const BinomialSystem& sys) {
  const auto d = static_cast<std::size_t>(sys.dim);
  if (sys.equations.empty()) return {TorsionCoset{sys.dim, {}, {}}};
  IntMat v;
  for (const auto& e : sys.equations) v.push_back(e.exponents);
  const auto s = smith_form(v, d);
  std::vector<QZ> rhs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    QZ z;
    for (std::size_t j = 0; j < v.size(); ++j) z += s.U[i][j] * sys.equations[j].rhs;
    rhs.push_back(z);
  }
  const auto r = static_cast<std::size_t>(s.rank);
  for (std::size_t i = r; i < rhs.size(); ++i)
    if (!rhs[i].is_zero()) return {};
  IntMat rows(s.W_inv.begin(), s.W_inv.begin() + static_cast<std::ptrdiff_t>(r));
  std::int64_t count = 1;
  for (std::size_t i = 0; i < r; ++i) {
    count = checked_mul(count, s.diagonal[i]);
    if (count > kMaxComponents) throw DomainError("too many components");
  }
  std::vector<TorsionCoset> out;
  std::vector<std::int64_t> j(r, 0);
  for (std::int64_t n = 0; n < count; ++n) {
    std::vector<QZ> y;
    for (std::size_t i = 0; i < r; ++i) {
      const auto sk = s.diagonal[i];
      y.emplace_back(checked_add(rhs[i].num(), checked_mul(j[i], rhs[i].den())), checked_mul(rhs[i].den(), sk));
    }
    out.push_back(TorsionCoset::normalized(sys.dim, rows, y));
    for (std::size_t i = 0; i < r; ++i) {
      if (++j[i] < s.diagonal[i]) break;
      j[i] = 0;
    }
  }
  std::sort(out.begin(), out.end(), coset_order);
  return out;
}

inline bool contains(const TorsionCoset& c, const TorsionPoint& t) {
  for (std::size_t i = 0; i < c.basis.size(); ++i)
    if (pairing(c.basis[i], t) != c.translate[i]) return false;
  return true;
}

namespace detail {

// U B W = [I 0] for a saturated basis; returns the Smith data and U zeta.
inline std::pair<SmithForm, std::vector<QZ>> coset_coordinates(const TorsionCoset& c) {
  auto s = smith_form(c.basis, static_cast<std::size_t>(c.ambient));
  for (std::size_t i = 0; i < c.basis.size(); ++i)
    if (s.diagonal[i] != 1) throw InputError("coset lattice is not saturated");
  std::vector<QZ> z;
  for (std::size_t i = 0; i < c.basis.size(); ++i) {
    QZ q;
    for (std::size_t j = 0; j < c.basis.size(); ++j) q += s.U[i][j] * c.translate[j];
    z.push_back(q);
  }
  return {std::move(s), std::move(z)};
}

inline TorsionPoint apply_w(const IntMat& w, const std::vector<QZ>& y) {
  TorsionPoint t(w.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    for (std::size_t i = 0; i < y.size(); ++i) t[k] += w[k][i] * y[i];
  return t;
}

}  // namespace detail

/// A point of the coset of smallest possible order (the order of its translate).
inline TorsionPoint torsion_translate(const TorsionCoset& c) {
  auto [s, z] = detail::coset_coordinates(c);
  std::vector<QZ> y(static_cast<std::size_t>(c.ambient));
  for (std::size_t i = 0; i < z.size(); ++i) y[i] = z[i];
  return detail::apply_w(s.W, y);
}

inline std::int64_t point_order(const TorsionPoint& t) {
  std::int64_t n = 1;
  for (const auto& q : t) n = lcm64(n, q.order());
  return n;
}

/// All points of the coset with M t = 0, sorted.
inline std::vector<TorsionPoint> enumerate_torsion(const TorsionCoset& c, std::int64_t m) {
  if (m < 1) throw InputError("M must be >= 1");
  auto [s, z] = detail::coset_coordinates(c);
  for (const auto& q : z)
    if (m % q.order() != 0) return {};
  const auto r = z.size();
  const auto free = static_cast<std::size_t>(c.ambient) - r;
  std::int64_t count = 1;
  for (std::size_t i = 0; i < free; ++i) {
    count = checked_mul(count, m);
    if (count > kMaxComponents) throw DomainError("too many torsion points");
  }
  std::vector<TorsionPoint> out;
  std::vector<std::int64_t> j(free, 0);
  for (std::int64_t n = 0; n < count; ++n) {
    std::vector<QZ> y = z;
    for (std::size_t i = 0; i < free; ++i) y.emplace_back(j[i], m);
    out.push_back(detail::apply_w(s.W, y));
    for (std::size_t i = 0; i < free; ++i) {
      if (++j[i] < m) break;
      j[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Image of the coset under t -> A t.
inline TorsionCoset image_coset(const TorsionCoset& c, const IntMat& a) {
  if (a.size() != static_cast<std::size_t>(c.ambient)) throw InputError("automorphism has wrong size");
  const auto inv = unimodular_inverse(a);
  if (c.basis.empty()) return c;
  return TorsionCoset::normalized(c.ambient, mat_mul(c.basis, inv), c.translate);
}

inline bool sigma_stable(const TorsionCoset& c, const IntMat& a) { return image_coset(c, a) == c; }

inline IntMat mat_power(const IntMat& a, std::int64_t n) {
  IntMat r = identity_matrix(a.size());
  for (std::int64_t i = 0; i < n; ++i) r = mat_mul(r, a);
  return r;
}

/// p-adic half of a torsion-point certificate.
struct PadicWitness {
  std::int64_t p = 0;
  std::int64_t precision = 0;
  std::vector<ResidueElement> residue;  // xi: residue character of the translate
  ContinuousCharacter teichmuller_part;  // [xi]
  ContinuousCharacter sample;            // psi = [xi] * psi_0, a point of the component
  ContinuousCharacter pro_p;             // psi_0 = psi * [xi]^{-1}, on the subtorus
  IntMat kernel;                         // exponents of psi_0 in the sample units
  std::vector<UnramifiedScalar> sample_units;
  std::int64_t contraction_exponent = 0;  // n with [p^n] psi_0 in H(rho')
  std::int64_t contraction_valuation = 0;  // rho' = p^{-m'}
  std::vector<UnramifiedScalar> log_point;
  std::int64_t series_degree = 0;
  ConicCertificate<UnramifiedScalar> conic;
};

struct TorsionPointCertificate {
  std::size_t component = 0;
  TorsionCoset coset;
  TorsionPoint torsion_point;
  std::int64_t order = 1;
  std::int64_t sigma_power = 1;
  std::string status;  // certified | unavailable | refused
  std::string detail;
  std::optional<PadicWitness> padic;
};

struct PipelineOptions {
  std::int64_t p = 3;
  std::int64_t precision = 8;
  IntMat automorphism;               // empty: identity
  std::vector<std::int64_t> weights;  // empty: all 1
  std::int64_t alpha = 0;            // 0: 1 + p (5 for p = 2)
  std::uint64_t seed = 0;
};

inline std::int64_t contraction_target(std::int64_t p) { return p == 2 ? 2 : 1; }

/// exp(<v, l>) - 1 on P^d(p^{-m}), truncated at the smallest degree whose tail bound
/// reaches the working precision.
inline AnalyticSeries<UnramifiedScalar> exp_binomial_series(const IntVec& v, std::int64_t m,
                                                             const std::shared_ptr<const UnramifiedField>& field,
                                                             std::int64_t precision, std::int64_t* degree_out = nullptr) {
  const std::int64_t p = field->prime();
  const auto d = static_cast<std::int64_t>(v.size());
  PolyDisc<UnramifiedScalar> disc{d, m, {}};
  // Omitted terms k > D satisfy v(l^k / k!) >= k m - (k - 1)/(p - 1).
  auto tail_for = [&](std::int64_t deg) {
    const std::int64_t k = deg + 1;
    const std::int64_t num = k * m * (p - 1) - (k - 1);
    return (num + (p - 2)) / (p - 1);
  };
  std::int64_t deg = 1;
  while (tail_for(deg) < precision) ++deg;
  if (degree_out) *degree_out = deg;
  const std::int64_t work = precision + factorial_valuation(deg, p) + 1;
  std::map<Exponent, UnramifiedScalar> lin;
  for (std::int64_t i = 0; i < d; ++i) {
    if (v[static_cast<std::size_t>(i)] == 0) continue;
    Exponent e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = 1;
    lin.emplace(e, UnramifiedScalar::from_integer(field, Int(v[static_cast<std::size_t>(i)]), work));
  }
  const auto y = AnalyticSeries<UnramifiedScalar>::polynomial(disc, lin);
  auto power = y;
  std::map<Exponent, UnramifiedScalar> terms;
  Int fact = 1;
  for (std::int64_t k = 1; k <= deg; ++k) {
    if (k > 1) power = power * y;
    fact *= k;
    const auto inv = UnramifiedScalar::from_rational(field, Rat(Int(1), fact), work);
    for (const auto& [e, c] : power.terms()) {
      auto it = terms.find(e);
      const auto term = inv * c;
      if (it == terms.end()) terms.emplace(e, term);
      else it->second = it->second + term;
    }
  }
  return AnalyticSeries<UnramifiedScalar>(disc, std::move(terms), tail_for(deg));
}

namespace detail {

inline std::vector<UnramifiedScalar> orbit_point(const std::vector<std::int64_t>& weights, const UnramifiedScalar& beta,
                                                 const std::vector<UnramifiedScalar>& x) {
  std::vector<UnramifiedScalar> r;
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(beta.pow(weights[i]) * x[i]);
  return r;
}

inline ContinuousCharacter pro_p_sample(const std::shared_ptr<const UnramifiedField>& field, std::int64_t precision,
                                        const IntMat& kernel, const std::vector<UnramifiedScalar>& units,
                                        std::int64_t d) {
  auto chi = ContinuousCharacter::trivial(field, precision, d);
  for (std::size_t k = 0; k < kernel.size(); ++k)
    for (std::int64_t i = 0; i < d; ++i) {
      const auto e = kernel[k][static_cast<std::size_t>(i)];
      if (e != 0) chi.free[static_cast<std::size_t>(i)] = chi.free[static_cast<std::size_t>(i)] * units[k].pow(e);
    }
  return chi;
}

inline bool character_is_one(const ContinuousCharacter& chi) {
  for (const auto* vals : {&chi.free, &chi.torsion})
    for (const auto& x : *vals)
      if (!(x - x.one(x.abs_precision())).is_zero()) return false;
  return true;
}

inline UnramifiedScalar character_monomial(const ContinuousCharacter& chi, const IntVec& v) {
  auto r = UnramifiedScalar::from_integer(chi.field, Int(1), chi.precision);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) r = r * chi.free[i].pow(v[i]);
  return r;
}

inline std::int64_t contraction_exponent(const ContinuousCharacter& chi, std::int64_t target) {
  auto cur = chi;
  for (std::int64_t n = 0; n <= chi.precision; ++n) {
    bool inside = true;
    for (const auto& x : cur.free)
      if ((x - x.one(x.abs_precision())).min_valuation() < target) inside = false;
    if (inside) return n;
    cur = cur.pow(chi.prime());
  }
  throw PrecisionError("contraction did not reach the target disc at this precision");
}

inline AnalyticLocus<UnramifiedScalar> log_locus(const TorsionCoset& c, std::int64_t m,
                                                 const std::shared_ptr<const UnramifiedField>& field,
                                                 std::int64_t precision, std::int64_t* degree) {
  AnalyticLocus<UnramifiedScalar> locus{PolyDisc<UnramifiedScalar>{c.ambient, m, {}}, {}, std::nullopt};
  for (const auto& v : c.basis) locus.series.push_back(exp_binomial_series(v, m, field, precision, degree));
  return locus;
}

}  // namespace detail

/// Permutation of the cosets induced by A; throws when the solution set is not stable.
inline std::int64_t sigma_period(const std::vector<TorsionCoset>& cosets, const IntMat& a) {
  std::vector<std::size_t> perm;
  for (const auto& c : cosets) {
    const auto img = image_coset(c, a);
    const auto it = std::find(cosets.begin(), cosets.end(), img);
    if (it == cosets.end()) throw HypothesisViolation("hypothesis violation: the automorphism does not stabilize the solution set");
    perm.push_back(static_cast<std::size_t>(it - cosets.begin()));
  }
  std::int64_t m = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    m = lcm64(m, len);
  }
  return m;
}

inline TorsionPointCertificate certify_component(const TorsionCoset& c, std::size_t index, std::int64_t sigma_power,
                                                 const PipelineOptions& opt) {
  const std::int64_t p = opt.p;
  const std::int64_t d = c.ambient;
  TorsionPointCertificate cert;
  cert.component = index;
  cert.coset = c;
  cert.torsion_point = torsion_translate(c);
  cert.order = point_order(cert.torsion_point);
  cert.sigma_power = sigma_power;
  if (cert.order % p == 0) {
    cert.status = "unavailable";
    cert.detail = "certificate unavailable at p: translate order divisible by p";
    return cert;
  }
  PadicWitness w;
  w.p = p;
  w.precision = opt.precision;
  w.teichmuller_part = embed_torsion(TorsionCharacter{cert.torsion_point, {}, {}}, p, opt.precision);
  const auto field = w.teichmuller_part.field;
  w.residue = w.teichmuller_part.residue_values();

  w.kernel = integer_kernel(c.basis, static_cast<std::size_t>(d));
  std::mt19937_64 rng(opt.seed + 0x9e3779b97f4a7c15ULL * (index + 1));
  for (std::size_t k = 0; k < w.kernel.size(); ++k) {
    const auto u = static_cast<std::int64_t>(rng() % 1000);
    const std::int64_t z = p == 2 ? 1 + 2 * (2 * u + 1) : 1 + p * (1 + u);
    w.sample_units.push_back(UnramifiedScalar::from_integer(field, Int(z), opt.precision));
  }
  w.pro_p = detail::pro_p_sample(field, opt.precision, w.kernel, w.sample_units, d);
  w.sample = w.teichmuller_part * w.pro_p;

  w.contraction_valuation = contraction_target(p);
  w.contraction_exponent = detail::contraction_exponent(w.pro_p, w.contraction_valuation);
  const auto contracted = w.pro_p.pow(static_cast<std::int64_t>(to_int64(int_pow(p, w.contraction_exponent))));
  w.log_point = char_log(contracted);

  std::vector<std::int64_t> weights = opt.weights.empty() ? std::vector<std::int64_t>(static_cast<std::size_t>(d), 1)
                                                          : opt.weights;
  const std::int64_t alpha = opt.alpha != 0 ? opt.alpha : (p == 2 ? 5 : 1 + p);
  const auto action = WeightedAction<UnramifiedScalar>::make(
      weights, UnramifiedScalar::from_integer(field, Int(alpha), opt.precision));
  const auto locus = detail::log_locus(c, w.contraction_valuation, field, opt.precision, &w.series_degree);
  const auto bound = std::max<std::int64_t>(1, orbit_bound(locus, action, w.log_point));
  w.conic = conic_certificate(locus, action, w.log_point, bound);
  cert.status = w.conic.certified ? "certified" : "refused";
  cert.detail = w.conic.reason;
  cert.padic = std::move(w);
  return cert;
}

/// Certificates for every component of a σ-stable binomial system.
inline std::vector<TorsionPointCertificate> torsion_certificate_pipeline(const BinomialSystem& sys,
                                                                         const PipelineOptions& opt) {
  if (!is_prime(opt.p)) throw InputError("p must be prime");
  if (opt.precision < 2) throw InputError("precision must be >= 2");
  if (!opt.weights.empty() && static_cast<std::int64_t>(opt.weights.size()) != sys.dim)
    throw InputError("weight vector has wrong length");
  const auto cosets = solve(sys);
  if (cosets.empty()) throw DomainError("system has no solutions");
  const IntMat a = opt.automorphism.empty() ? identity_matrix(static_cast<std::size_t>(sys.dim)) : opt.automorphism;
  const auto m = sigma_period(cosets, a);
  std::vector<TorsionPointCertificate> out;
  for (std::size_t i = 0; i < cosets.size(); ++i) out.push_back(certify_component(cosets[i], i, m, opt));
  return out;
}

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> passed;
  std::vector<std::string> failed;

  void check(bool cond, const std::string& what) {
    (cond ? passed : failed).push_back(what);
    if (!cond) ok = false;
  }
};

/// Re-derive every field of a certificate from the system and options alone.
inline VerificationReport verify_certificate(const TorsionPointCertificate& cert, const BinomialSystem& sys,
                                             const PipelineOptions& opt) {
  VerificationReport rep;
  const IntMat a = opt.automorphism.empty() ? identity_matrix(static_cast<std::size_t>(sys.dim)) : opt.automorphism;
  rep.check(sys.satisfied_by(cert.torsion_point), "torsion point satisfies every equation");
  rep.check(contains(cert.coset, cert.torsion_point), "torsion point lies on its component");
  const auto cosets = solve(sys);
  rep.check(cert.component < cosets.size() && cosets[cert.component] == cert.coset, "component matches the solver");
  rep.check(point_order(cert.torsion_point) == cert.order, "recorded order");
  rep.check(sigma_stable(cert.coset, mat_power(a, cert.sigma_power)), "component stable under the recorded power");
  if (cert.order % opt.p == 0) {
    rep.check(cert.status == "unavailable" && !cert.padic, "p-adic part withheld when p divides the order");
    return rep;
  }
  if (!cert.padic) {
    rep.check(false, "p-adic witness present");
    return rep;
  }
  const auto& w = *cert.padic;
  const auto p = opt.p;
  const auto prec = w.precision;
  const auto field = w.teichmuller_part.field;
  const auto one = UnramifiedScalar::from_integer(field, Int(1), prec);
  bool roots_ok = true;
  for (const auto& x : w.teichmuller_part.free) roots_ok = roots_ok && x.pow(cert.order) == one;
  rep.check(roots_ok, "Teichmüller values are roots of unity of the component order");
  bool residue_ok = w.residue.size() == w.teichmuller_part.free.size();
  for (std::size_t i = 0; residue_ok && i < w.residue.size(); ++i) {
    residue_ok = w.teichmuller_part.free[i].residue() == w.residue[i] &&
                 w.teichmuller_part.free[i] == teichmuller(field, w.residue[i], prec);
  }
  rep.check(residue_ok, "Teichmüller values lift the residue character");
  bool on_coset = true;
  for (std::size_t i = 0; i < cert.coset.basis.size(); ++i) {
    const auto lhs = detail::character_monomial(w.teichmuller_part, cert.coset.basis[i]);
    const auto n = cert.order;
    const auto q1 = field->residue_field()->unit_group_order();
    const auto g = residue_generator(field->residue_field());
    const auto rhs = teichmuller(field, g.pow(Int(cert.coset.translate[i].numerator_over(n)) * (q1 / n)), prec);
    on_coset = on_coset && lhs == rhs;
  }
  rep.check(on_coset, "Teichmüller translate satisfies the component equations p-adically");
  rep.check(w.pro_p.residue_trivial(), "translation witness has trivial residue character");
  bool on_subtorus = true;
  for (const auto& v : cert.coset.basis) {
    const auto x = detail::character_monomial(w.pro_p, v);
    on_subtorus = on_subtorus && (x - one).is_zero();
  }
  rep.check(on_subtorus, "translation witness lies on the subtorus");
  rep.check(detail::pro_p_sample(field, prec, w.kernel, w.sample_units, cert.coset.ambient).free == w.pro_p.free,
            "translation witness is the product of its sample units");
  bool kernel_ok = true;
  for (const auto& v : cert.coset.basis)
    for (const auto& b : w.kernel) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * b[i];
      kernel_ok = kernel_ok && s == 0;
    }
  rep.check(kernel_ok, "sample exponents are orthogonal to the component lattice");
  rep.check((w.teichmuller_part * w.pro_p).free == w.sample.free, "sample equals Teichmüller part times witness");
  const auto [lift, pro] = decompose_teichmuller(w.sample);
  rep.check(lift.free == w.teichmuller_part.free && pro.free == w.pro_p.free, "Teichmüller decomposition of the sample");
  rep.check(w.contraction_valuation == contraction_target(p) &&
                detail::contraction_exponent(w.pro_p, w.contraction_valuation) == w.contraction_exponent,
            "contraction exponent is minimal");
  const auto contracted = w.pro_p.pow(to_int64(int_pow(p, w.contraction_exponent)));
  const auto ell = char_log(contracted);
  bool log_ok = ell.size() == w.log_point.size();
  for (std::size_t i = 0; log_ok && i < ell.size(); ++i) log_ok = ell[i] == w.log_point[i];
  rep.check(log_ok, "log coordinates of the contracted witness");

  PipelineOptions o = opt;
  const auto re = certify_component(cert.coset, cert.component, cert.sigma_power, o);
  rep.check(re.status == cert.status && re.padic && re.padic->conic.certified == w.conic.certified,
            "conic certificate reproduces");
  if (w.conic.certified) {
    std::int64_t deg = 0;
    const auto locus = detail::log_locus(cert.coset, w.contraction_valuation, field, prec, &deg);
    const std::vector<std::int64_t> weights =
        opt.weights.empty() ? std::vector<std::int64_t>(static_cast<std::size_t>(cert.coset.ambient), 1) : opt.weights;
    std::mt19937_64 rng(opt.seed ^ 0x5bd1e995ULL);
    bool orbit_ok = true;
    for (int trial = 0; trial < 100 && orbit_ok; ++trial) {
      const auto beta = UnramifiedScalar::from_integer(field, Int(static_cast<long>(rng() % 1000000)), prec);
      const auto x = detail::orbit_point(weights, beta, w.log_point);
      for (const auto& f : locus.series) orbit_ok = orbit_ok && series_eval(f, x).value.is_zero();
    }
    rep.check(orbit_ok, "orbit closure vanishes at 100 random scalars");
  }
  return rep;
}

}  // namespace ptorsion
