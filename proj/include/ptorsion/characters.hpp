#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "exp_log.hpp"
#include "lattice.hpp"
#include "qz.hpp"
#include "scalar.hpp"

namespace ptorsion {

/// Z^rank + Z/m_1 + ... + Z/m_s with m_1 | m_2 | ... and every m_j >= 2.
struct FgAbGroup {
  std::int64_t rank = 0;
  IntVec invariant_factors;
  std::optional<IntMat> relations;
  std::optional<SmithForm> witnesses;

  std::int64_t num_generators() const {
    return rank + static_cast<std::int64_t>(invariant_factors.size());
  }
  static FgAbGroup free(std::int64_t d) { return FgAbGroup{d, {}, std::nullopt, std::nullopt}; }
};

/// Group presented as Z^n modulo the row span of R.
inline FgAbGroup smith_decompose(const IntMat& relations, std::size_t generators) {
  for (const auto& row : relations)
    if (row.size() != generators) throw InputError("relation has wrong length");
  auto s = smith_form(relations, generators);
  FgAbGroup g;
  for (auto d : s.diagonal)
    if (d > 1) g.invariant_factors.push_back(d);
  g.rank = static_cast<std::int64_t>(generators) - s.rank;
  g.relations = relations;
  g.witnesses = std::move(s);
  return g;
}

inline FgAbGroup smith_decompose(const IntMat& relations) {
  if (relations.empty()) throw InputError("empty relation matrix needs an explicit generator count");
  return smith_decompose(relations, relations[0].size());
}

/// A character of finite order, valued in Q/Z.
struct TorsionCharacter {
  std::vector<QZ> free;
  std::vector<QZ> torsion;
  IntVec invariant_factors;

  static TorsionCharacter make(std::vector<QZ> free, std::vector<QZ> torsion, IntVec factors) {
    if (torsion.size() != factors.size()) throw InputError("one torsion value per invariant factor");
    for (std::size_t j = 0; j < torsion.size(); ++j)
      if (factors[j] % torsion[j].order() != 0)
        throw InputError("torsion value order does not divide its invariant factor");
    return TorsionCharacter{std::move(free), std::move(torsion), std::move(factors)};
  }

  std::int64_t order() const {
    std::int64_t n = 1;
    for (const auto& q : free) n = lcm64(n, q.order());
    for (const auto& q : torsion) n = lcm64(n, q.order());
    return n;
  }

  friend TorsionCharacter operator*(const TorsionCharacter& a, const TorsionCharacter& b) {
    if (a.free.size() != b.free.size() || a.invariant_factors != b.invariant_factors)
      throw InputError("characters of different groups");
    TorsionCharacter r = a;
    for (std::size_t i = 0; i < r.free.size(); ++i) r.free[i] += b.free[i];
    for (std::size_t i = 0; i < r.torsion.size(); ++i) r.torsion[i] += b.torsion[i];
    return r;
  }
  TorsionCharacter pow(std::int64_t n) const {
    TorsionCharacter r = *this;
    for (auto& q : r.free) q = n * q;
    for (auto& q : r.torsion) q = n * q;
    return r;
  }
  friend bool operator==(const TorsionCharacter&, const TorsionCharacter&) = default;
};

/// A point of the character variety with coordinates in a ring with multiplication.
template <class S>
struct CharPoint {
  std::vector<S> coords;

  friend CharPoint operator*(const CharPoint& a, const CharPoint& b) {
    if (a.coords.size() != b.coords.size()) throw InputError("character points of different dimension");
    CharPoint r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = a.coords[i] * b.coords[i];
    return r;
  }
  CharPoint inverse() const {
    CharPoint r = *this;
    for (auto& c : r.coords) c = c.inverse();
    return r;
  }
  friend bool operator==(const CharPoint&, const CharPoint&) = default;
};

/// Exact image of a torsion character in the cyclotomic field of its order.
inline CharPoint<Cyclotomic> exact_point(const TorsionCharacter& t) {
  auto f = CyclotomicField::make(t.order());
  CharPoint<Cyclotomic> pt;
  for (const auto& q : t.free) pt.coords.push_back(Cyclotomic::root(f, q));
  for (const auto& q : t.torsion) pt.coords.push_back(Cyclotomic::root(f, q));
  return pt;
}

/// Continuous character with values in the units of an unramified extension of Q_p.
struct ContinuousCharacter {
  std::shared_ptr<const UnramifiedField> field;
  std::int64_t precision = 0;
  std::vector<UnramifiedScalar> free;
  std::vector<UnramifiedScalar> torsion;
  IntVec invariant_factors;

  std::int64_t prime() const { return field->prime(); }

  static ContinuousCharacter trivial(std::shared_ptr<const UnramifiedField> field, std::int64_t precision,
                                     std::int64_t rank, IntVec factors = {}) {
    ContinuousCharacter c;
    const auto one = UnramifiedScalar::from_integer(field, Int(1), precision);
    c.field = std::move(field);
    c.precision = precision;
    c.free.assign(static_cast<std::size_t>(rank), one);
    c.torsion.assign(factors.size(), one);
    c.invariant_factors = std::move(factors);
    return c;
  }

  static ContinuousCharacter make(std::shared_ptr<const UnramifiedField> field, std::int64_t precision,
                                  std::vector<UnramifiedScalar> free, std::vector<UnramifiedScalar> torsion = {},
                                  IntVec factors = {}) {
    if (torsion.size() != factors.size()) throw InputError("one torsion value per invariant factor");
    for (const auto* vals : {&free, &torsion})
      for (const auto& x : *vals)
        if (!x.is_unit()) throw DomainError("character values must be units");
    ContinuousCharacter c{std::move(field), precision, std::move(free), std::move(torsion), std::move(factors)};
    return c;
  }

  std::vector<ResidueElement> residue_values() const {
    std::vector<ResidueElement> r;
    for (const auto& x : free) r.push_back(x.residue());
    for (const auto& x : torsion) r.push_back(x.residue());
    return r;
  }
  bool residue_trivial() const {
    for (const auto& r : residue_values())
      if (!r.is_one()) return false;
    return true;
  }
  CharPoint<UnramifiedScalar> point() const {
    CharPoint<UnramifiedScalar> pt;
    pt.coords = free;
    pt.coords.insert(pt.coords.end(), torsion.begin(), torsion.end());
    return pt;
  }

  friend ContinuousCharacter operator*(const ContinuousCharacter& a, const ContinuousCharacter& b) {
    if (a.free.size() != b.free.size() || a.invariant_factors != b.invariant_factors)
      throw InputError("characters of different groups");
    ContinuousCharacter r = a;
    r.precision = std::min(a.precision, b.precision);
    for (std::size_t i = 0; i < r.free.size(); ++i) r.free[i] = a.free[i] * b.free[i];
    for (std::size_t i = 0; i < r.torsion.size(); ++i) r.torsion[i] = a.torsion[i] * b.torsion[i];
    return r;
  }
  ContinuousCharacter inverse() const { return pow(-1); }
  ContinuousCharacter pow(std::int64_t n) const {
    ContinuousCharacter r = *this;
    for (auto& x : r.free) x = x.pow(n);
    for (auto& x : r.torsion) x = x.pow(n);
    return r;
  }
};

inline ContinuousCharacter char_pow(const ContinuousCharacter& chi, std::int64_t n) { return chi.pow(n); }
inline TorsionCharacter char_pow(const TorsionCharacter& t, std::int64_t n) { return t.pow(n); }

/// Coordinates (chi(gamma_i) - 1) on the free generators, for a character with
/// trivial residue character whose coordinates have valuation >= m.
inline std::vector<UnramifiedScalar> phi_coordinates(const ContinuousCharacter& chi, std::int64_t m) {
  if (!chi.residue_trivial()) throw DomainError("Teichmüller part nontrivial");
  for (const auto& x : chi.torsion) {
    const auto d = x - x.one(x.abs_precision());
    if (!d.is_zero()) throw DomainError("Teichmüller part nontrivial");
  }
  std::vector<UnramifiedScalar> out;
  for (const auto& x : chi.free) {
    auto d = x - x.one(x.abs_precision());
    if (d.min_valuation() < m) throw DomainError("coordinate outside disc");
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<UnramifiedScalar> char_log(const ContinuousCharacter& chi) {
  phi_coordinates(chi, exp_disc_valuation(chi.prime()));
  std::vector<UnramifiedScalar> out;
  for (const auto& x : chi.free) out.push_back(padic_log(x, chi.precision));
  return out;
}

inline ContinuousCharacter char_exp(const std::vector<UnramifiedScalar>& ell, std::int64_t precision,
                                    IntVec factors = {}) {
  if (ell.empty()) throw InputError("char_exp needs at least one coordinate");
  auto chi = ContinuousCharacter::trivial(ell[0].field(), precision, 0, std::move(factors));
  for (const auto& x : ell) chi.free.push_back(padic_exp(x, precision));
  return chi;
}

/// chi = [chi_bar] * chi_1 with [chi_bar] the Teichmüller lift of the residue
/// character and chi_1 congruent to 1 modulo p.
inline std::pair<ContinuousCharacter, ContinuousCharacter> decompose_teichmuller(
    const ContinuousCharacter& chi) {
  ContinuousCharacter lift = chi;
  auto lift_value = [&](const UnramifiedScalar& x) {
    return teichmuller(chi.field, x.residue(), chi.precision);
  };
  for (auto& x : lift.free) x = lift_value(x);
  for (auto& x : lift.torsion) x = lift_value(x);
  return {lift, chi * lift.inverse()};
}

/// Smallest f with n | p^f - 1.
inline std::int64_t splitting_degree(std::int64_t p, std::int64_t n) {
  if (std::gcd(p, n) != 1) throw DomainError("p-power torsion requires ramified coefficients: unsupported");
  return multiplicative_order_mod(p, n);
}

/// Realize a prime-to-p torsion character over Q_{p^f}: the value k/n goes to the
/// Teichmüller lift of g^{k (p^f - 1)/n}, g the canonical residue generator.
inline ContinuousCharacter embed_torsion(const TorsionCharacter& t, std::int64_t p, std::int64_t precision,
                                         std::int64_t min_degree = 1) {
  const std::int64_t n = t.order();
  const std::int64_t f = lcm64(splitting_degree(p, n), min_degree);
  auto field = UnramifiedField::make(p, f);
  const auto g = residue_generator(field->residue_field());
  const Int q1 = field->residue_field()->unit_group_order();
  auto value = [&](const QZ& e) {
    const Int k = Int(e.numerator_over(n)) * (q1 / n);
    return teichmuller(field, g.pow(k), precision);
  };
  ContinuousCharacter chi;
  chi.field = field;
  chi.precision = precision;
  for (const auto& e : t.free) chi.free.push_back(value(e));
  for (const auto& e : t.torsion) chi.torsion.push_back(value(e));
  chi.invariant_factors = t.invariant_factors;
  return chi;
}

/// Image of an element of Q(zeta_m) in Q_{p^f}, sending zeta_m to the Teichmüller lift
/// of g^{(p^f - 1)/m}; requires m | p^f - 1.
inline UnramifiedScalar embed_cyclotomic(const Cyclotomic& c, const std::shared_ptr<const UnramifiedField>& field,
                                         std::int64_t precision) {
  const std::int64_t m = c.field()->order();
  const Int q1 = field->residue_field()->unit_group_order();
  if (q1 % m != 0) throw DomainError("cyclotomic coefficients need a larger residue field");
  const auto g = residue_generator(field->residue_field());
  const auto zeta = teichmuller(field, g.pow(q1 / m), precision);
  auto sum = UnramifiedScalar::zero(field, precision);
  auto power = UnramifiedScalar::from_integer(field, Int(1), precision);
  for (const auto& coeff : c.coeffs()) {
    if (coeff != 0) sum = sum + UnramifiedScalar::from_rational(field, coeff, precision) * power;
    power = power * zeta;
  }
  return sum.with_abs_precision(precision);
}

/// Smallest unramified degree over which every root of unity of order m embeds.
inline std::int64_t embedding_degree(std::int64_t p, std::int64_t m) { return splitting_degree(p, m); }

}  // namespace ptorsion
