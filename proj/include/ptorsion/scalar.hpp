#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "integer.hpp"
#include "residue.hpp"

namespace ptorsion {

/// A finite-precision element of a p-adic field.
///
/// Non-zero values represent the coset p^v (u + p^M O) where u is a unit and M the
/// relative precision; multiplication never loses relative precision and |x| = p^{-v}
/// is always exact. Zero is a separate state "zero to absolute precision N".
template <class F>
class LocalScalar {
 public:
  using Field = F;
  using Value = typename F::Value;
  using FieldPtr = std::shared_ptr<const F>;

  static LocalScalar zero(FieldPtr field, std::int64_t abs_prec) {
    LocalScalar x(std::move(field));
    x.zero_ = true;
    x.prec_ = abs_prec;
    return x;
  }

  /// p^{v0} * a, known modulo p^{abs_prec}.
  static LocalScalar from_value(FieldPtr field, std::int64_t v0, const Value& a,
                                std::int64_t abs_prec) {
    if (abs_prec <= v0) return zero(std::move(field), abs_prec);
    const Int m = int_pow(field->prime(), abs_prec - v0);
    Value r = field->reduce(a, m);
    if (field->is_zero(r)) return zero(std::move(field), abs_prec);
    const std::int64_t k = field->valuation(r);
    LocalScalar x(field);
    x.zero_ = false;
    x.v_ = v0 + k;
    x.prec_ = abs_prec - x.v_;
    x.unit_ = field->reduce(field->divide_p_power(r, k), int_pow(field->prime(), x.prec_));
    return x;
  }

  static LocalScalar from_integer(FieldPtr field, const Int& n, std::int64_t rel_prec) {
    if (n == 0) return zero(std::move(field), rel_prec);
    const std::int64_t v = ptorsion::valuation(n, field->prime());
    return from_value(field, 0, field->embed(n), v + rel_prec);
  }

  /// Exact rational truncated to absolute precision abs_prec.
  static LocalScalar from_rational(FieldPtr field, const Rat& q, std::int64_t abs_prec) {
    if (q == 0) return zero(std::move(field), abs_prec);
    const std::int64_t p = field->prime();
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    const std::int64_t vn = ptorsion::valuation(num, p);
    const std::int64_t vd = ptorsion::valuation(den, p);
    const std::int64_t v = vn - vd;
    if (v >= abs_prec) return zero(std::move(field), abs_prec);
    const Int m = int_pow(p, abs_prec - v);
    Int un;
    Int ud;
    mpz_divexact(un.get_mpz_t(), num.get_mpz_t(), int_pow(p, vn).get_mpz_t());
    mpz_divexact(ud.get_mpz_t(), den.get_mpz_t(), int_pow(p, vd).get_mpz_t());
    const Int u = mod(un * inverse_mod(ud, m), m);
    return from_value(field, v, field->embed(u), abs_prec);
  }

  /// Build from an explicit unit; throws if the unit is divisible by p.
  static LocalScalar from_parts(FieldPtr field, std::int64_t v, const Value& unit,
                                std::int64_t rel_prec) {
    if (rel_prec < 1) throw InputError("relative precision must be >= 1");
    LocalScalar x = from_value(field, v, unit, v + rel_prec);
    if (x.zero_ || x.v_ != v) throw InputError("unit part is divisible by p");
    return x;
  }

  // Same-field constructors, used by generic algorithms.
  LocalScalar make(const Int& n, std::int64_t rel_prec) const {
    return from_integer(field_, n, rel_prec);
  }
  LocalScalar make_zero(std::int64_t abs_prec) const { return zero(field_, abs_prec); }
  LocalScalar one(std::int64_t rel_prec) const { return make(Int(1), rel_prec); }

  const FieldPtr& field() const { return field_; }
  std::int64_t prime() const { return field_->prime(); }
  std::int64_t degree() const { return field_->degree(); }
  bool is_zero() const { return zero_; }

  std::int64_t valuation() const {
    if (zero_) throw PrecisionError("valuation of a value indistinguishable from zero");
    return v_;
  }
  /// Known lower bound of the valuation (the absolute precision for zero).
  std::int64_t min_valuation() const { return zero_ ? prec_ : v_; }
  std::int64_t abs_precision() const { return zero_ ? prec_ : v_ + prec_; }
  std::int64_t rel_precision() const { return zero_ ? 0 : prec_; }
  const Value& unit() const { return unit_; }

  bool is_unit() const { return !zero_ && v_ == 0; }

  /// Representative p^v * u as a value with non-negative valuation.
  Value representative() const {
    if (zero_) return field_->embed(Int(0));
    if (v_ < 0) throw DomainError("representative of a non-integral element");
    return field_->scale(unit_, int_pow(prime(), v_));
  }

  /// Truncate to absolute precision min(current, n).
  LocalScalar with_abs_precision(std::int64_t n) const {
    if (n >= abs_precision()) return *this;
    if (zero_) return zero(field_, n);
    return from_value(field_, v_, unit_, n);
  }

  /// Reinterpret the stored representative as exact and re-truncate it at absolute
  /// precision n (pads with zero digits when n exceeds the current precision).
  LocalScalar as_exact(std::int64_t n) const {
    if (zero_) return zero(field_, n);
    return from_value(field_, v_, unit_, n);
  }

  LocalScalar operator-() const {
    if (zero_) return *this;
    LocalScalar r = *this;
    r.unit_ = field_->reduce(field_->sub(field_->embed(Int(0)), unit_), int_pow(prime(), prec_));
    return r;
  }

  friend LocalScalar operator+(const LocalScalar& x, const LocalScalar& y) {
    check_same(x, y);
    const std::int64_t n = std::min(x.abs_precision(), y.abs_precision());
    if (x.zero_ && y.zero_) return zero(x.field_, n);
    if (x.zero_) return y.with_abs_precision(n);
    if (y.zero_) return x.with_abs_precision(n);
    const std::int64_t m = std::min(x.v_, y.v_);
    if (m >= n) return zero(x.field_, n);
    const auto& f = *x.field_;
    const Value a = f.add(f.scale(x.unit_, int_pow(f.prime(), x.v_ - m)),
                          f.scale(y.unit_, int_pow(f.prime(), y.v_ - m)));
    return from_value(x.field_, m, a, n);
  }
  friend LocalScalar operator-(const LocalScalar& x, const LocalScalar& y) { return x + (-y); }

  friend LocalScalar operator*(const LocalScalar& x, const LocalScalar& y) {
    check_same(x, y);
    if (x.zero_ && y.zero_) return zero(x.field_, x.prec_ + y.prec_);
    if (x.zero_) return zero(x.field_, x.prec_ + y.v_);
    if (y.zero_) return zero(x.field_, y.prec_ + x.v_);
    LocalScalar r(x.field_);
    r.zero_ = false;
    r.v_ = x.v_ + y.v_;
    r.prec_ = std::min(x.prec_, y.prec_);
    r.unit_ = x.field_->mul(x.unit_, y.unit_, int_pow(x.prime(), r.prec_));
    return r;
  }

  LocalScalar inverse() const {
    if (zero_) throw PrecisionError("not invertible at this precision");
    LocalScalar r(field_);
    r.zero_ = false;
    r.v_ = -v_;
    r.prec_ = prec_;
    r.unit_ = field_->inverse(unit_, int_pow(prime(), prec_));
    return r;
  }

  friend LocalScalar operator/(const LocalScalar& x, const LocalScalar& y) {
    return x * y.inverse();
  }

  LocalScalar pow(const Int& e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return one(std::max<std::int64_t>(rel_precision(), abs_precision()));
    if (zero_) return zero(field_, to_int64(Int(prec_ * e)));
    LocalScalar r(field_);
    r.zero_ = false;
    r.v_ = to_int64(Int(v_ * e));
    r.prec_ = prec_;
    const Int m = int_pow(prime(), prec_);
    Value base = unit_;
    Value acc = field_->reduce(field_->embed(Int(1)), m);
    Int k = e;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) acc = field_->mul(acc, base, m);
      k >>= 1;
      if (k > 0) base = field_->mul(base, base, m);
    }
    r.unit_ = std::move(acc);
    return r;
  }
  LocalScalar pow(std::int64_t e) const { return pow(Int(e)); }

  /// Reduction modulo the maximal ideal; requires non-negative valuation.
  ResidueElement residue() const {
    if (!zero_ && v_ < 0) throw DomainError("residue of a non-integral element");
    if (zero_ && prec_ < 1) throw PrecisionError("residue unknown at this precision");
    if (zero_ || v_ > 0) return ResidueElement(field_->residue_field(), {});
    return field_->residue(unit_);
  }

  /// Base-p digits (little-endian) of each coefficient of the unit part.
  std::vector<std::vector<std::int64_t>> unit_digits() const {
    std::vector<std::vector<std::int64_t>> out;
    if (zero_) return out;
    for (Int c : field_->coefficients(unit_)) {
      std::vector<std::int64_t> d;
      for (std::int64_t i = 0; i < prec_; ++i) {
        d.push_back(to_int64(Int(c % prime())));
        c /= prime();
      }
      out.push_back(std::move(d));
    }
    return out;
  }

  /// Exact structural equality (same coset and same precision).
  friend bool operator==(const LocalScalar& a, const LocalScalar& b) {
    if (!a.field_->same(*b.field_) || a.zero_ != b.zero_ || a.prec_ != b.prec_) return false;
    return a.zero_ || (a.v_ == b.v_ && a.unit_ == b.unit_);
  }

 private:
  explicit LocalScalar(FieldPtr field) : field_(std::move(field)) {}

  static void check_same(const LocalScalar& x, const LocalScalar& y) {
    if (!x.field_->same(*y.field_)) throw InputError("operands live in different fields");
  }

  FieldPtr field_;
  bool zero_ = true;
  std::int64_t v_ = 0;
  Value unit_{};
  std::int64_t prec_ = 0;  // relative precision, or absolute precision when zero_
};

using PadicScalar = LocalScalar<PrimeField>;
using UnramifiedScalar = LocalScalar<UnramifiedField>;

/// True when both values are known modulo p^n and agree there.
template <class F>
bool equal_at(const LocalScalar<F>& a, const LocalScalar<F>& b, std::int64_t n) {
  if (a.abs_precision() < n || b.abs_precision() < n) return false;
  return (a - b).min_valuation() >= n;
}

// Convenience constructors for Q_p.
inline PadicScalar padic_integer(std::int64_t p, const Int& n, std::int64_t rel_prec) {
  return PadicScalar::from_integer(PrimeField::make(p), n, rel_prec);
}
inline PadicScalar padic_rational(std::int64_t p, const Rat& q, std::int64_t abs_prec) {
  return PadicScalar::from_rational(PrimeField::make(p), q, abs_prec);
}

/// Q_p -> Q_{p^f}.
inline UnramifiedScalar embed(const PadicScalar& x, std::shared_ptr<const UnramifiedField> field) {
  if (x.prime() != field->prime()) throw InputError("prime mismatch");
  if (x.is_zero()) return UnramifiedScalar::zero(std::move(field), x.abs_precision());
  auto u = field->embed(x.unit());
  return UnramifiedScalar::from_value(std::move(field), x.valuation(), u, x.abs_precision());
}

/// Q_{p^f} -> Q_p for elements that lie in Q_p at their precision.
inline PadicScalar to_padic(const UnramifiedScalar& x) {
  auto base = PrimeField::make(x.prime());
  if (x.is_zero()) return PadicScalar::zero(base, x.abs_precision());
  const auto& u = x.unit();
  for (std::size_t i = 1; i < u.size(); ++i)
    if (u[i] != 0) throw DomainError("element does not lie in Q_p");
  return PadicScalar::from_value(base, x.valuation(), u[0], x.abs_precision());
}

}  // namespace ptorsion
