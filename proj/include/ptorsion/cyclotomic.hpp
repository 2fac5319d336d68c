#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "qz.hpp"

namespace ptorsion {

namespace qpoly {

// Dense polynomials over Q, little-endian, trimmed.
using Poly = std::vector<Rat>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// a = q*b + r.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  Poly quot;
  if (a.size() >= b.size()) quot.assign(a.size() - b.size() + 1, Rat(0));
  while (a.size() >= b.size()) {
    const Rat c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

/// s with s*a = gcd(a, m) mod m; returns (gcd, s).
inline std::pair<Poly, Poly> xgcd(Poly a, Poly m) {
  Poly s0{Rat(1)}, s1{};
  while (!m.empty()) {
    auto [q, r] = divmod(a, m);
    Poly s2 = sub(s0, mul(q, s1));
    a = std::move(m);
    m = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {a, s0};
}

}  // namespace qpoly

/// Q(zeta_m) = Q[x]/(Phi_m), with Phi_m computed by exact division of x^m - 1 by the
/// cyclotomic polynomials of the proper divisors of m.
class CyclotomicField {
 public:
  explicit CyclotomicField(std::int64_t m) : m_(m) {
    if (m < 1) throw InputError("cyclotomic order must be >= 1");
    if (m > 100000) throw InputError("cyclotomic order too large");
    phi_ = cyclotomic_polynomial(m);
    const auto deg = phi_.size() - 1;
    powers_.reserve(static_cast<std::size_t>(m));
    std::vector<Rat> cur(deg, Rat(0));
    cur[0] = 1;
    for (std::int64_t k = 0; k < m; ++k) {
      powers_.push_back(cur);
      // cur <- cur * x mod Phi_m (Phi_m is monic).
      const Rat top = cur[deg - 1];
      for (std::size_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1] - top * phi_[i];
      cur[0] = -top * phi_[0];
    }
  }

  /// Shared instance; fields are immutable so one per order is cached.
  static std::shared_ptr<const CyclotomicField> make(std::int64_t m) {
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const CyclotomicField>> cache;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(m);
      if (it != cache.end()) return it->second;
    }
    auto f = std::make_shared<const CyclotomicField>(m);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(m, f).first->second;
  }

  static qpoly::Poly cyclotomic_polynomial(std::int64_t m) {
    std::map<std::int64_t, qpoly::Poly> phi;
    for (std::int64_t d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      qpoly::Poly num(static_cast<std::size_t>(d) + 1, Rat(0));
      num[0] = -1;
      num[static_cast<std::size_t>(d)] = 1;
      for (const auto& [e, q] : phi)
        if (d % e == 0) num = qpoly::divmod(num, q).first;
      phi.emplace(d, std::move(num));
    }
    return phi.at(m);
  }

  std::int64_t order() const { return m_; }
  std::int64_t degree() const { return static_cast<std::int64_t>(phi_.size()) - 1; }
  const qpoly::Poly& modulus() const { return phi_; }
  /// zeta^k in the power basis, for 0 <= k < m.
  const std::vector<Rat>& power(std::int64_t k) const {
    return powers_[static_cast<std::size_t>(floor_mod(k, m_))];
  }
  bool operator==(const CyclotomicField& o) const { return m_ == o.m_; }

 private:
  std::int64_t m_;
  qpoly::Poly phi_;
  std::vector<std::vector<Rat>> powers_;
};

/// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
class Cyclotomic {
 public:
  using FieldPtr = std::shared_ptr<const CyclotomicField>;

  explicit Cyclotomic(FieldPtr field)
      : field_(std::move(field)), c_(static_cast<std::size_t>(field_->degree()), Rat(0)) {}

  Cyclotomic(FieldPtr field, std::vector<Rat> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(field_->degree()), Rat(0));
  }

  static Cyclotomic rational(FieldPtr field, const Rat& q) {
    Cyclotomic x(std::move(field));
    x.c_[0] = q;
    return x;
  }
  static Cyclotomic root(FieldPtr field, std::int64_t k) {
    auto coeffs = field->power(k);
    return Cyclotomic(std::move(field), std::move(coeffs));
  }
  /// The root of unity exp(2 pi i e); requires order(e) | m.
  static Cyclotomic root(FieldPtr field, const QZ& e) {
    const auto k = e.numerator_over(field->order());
    return root(std::move(field), k);
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }

  Cyclotomic zero_like() const { return Cyclotomic(field_); }
  Cyclotomic one_like() const { return rational(field_, Rat(1)); }

  /// Image under Q(zeta_m) -> Q(zeta_n), zeta_m -> zeta_n^{n/m}; requires m | n.
  Cyclotomic lift(const FieldPtr& target) const {
    const auto m = field_->order();
    const auto n = target->order();
    if (n % m != 0) throw InputError("cyclotomic lift needs m | n");
    if (n == m) return *this;
    Cyclotomic r(target);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      const auto& pw = target->power(static_cast<std::int64_t>(i) * (n / m));
      for (std::size_t k = 0; k < pw.size(); ++k) r.c_[k] += c_[i] * pw[k];
    }
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    check(a, b);
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    check(a, b);
    const auto deg = a.c_.size();
    Cyclotomic r(a.field_);
    std::vector<Rat> prod(2 * deg, Rat(0));
    for (std::size_t i = 0; i < deg; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < deg; ++j)
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    for (std::size_t k = 0; k < prod.size(); ++k) {
      if (prod[k] == 0) continue;
      if (k < deg) {
        r.c_[k] += prod[k];
        continue;
      }
      const auto& pw = a.field_->power(static_cast<std::int64_t>(k));
      for (std::size_t t = 0; t < deg; ++t) r.c_[t] += prod[k] * pw[t];
    }
    return r;
  }

  friend Cyclotomic operator*(const Rat& q, const Cyclotomic& a) {
    Cyclotomic r = a;
    for (auto& c : r.c_) c *= q;
    return r;
  }

  /// Multiply by zeta^k.
  Cyclotomic times_root(std::int64_t k) const { return *this * root(field_, k); }

  Cyclotomic inverse() const {
    if (is_zero()) throw DomainError("division by zero in cyclotomic field");
    qpoly::Poly a(c_.begin(), c_.end());
    qpoly::trim(a);
    auto [g, s] = qpoly::xgcd(a, field_->modulus());
    if (g.size() != 1) throw DomainError("non-invertible cyclotomic element");
    const Rat inv = 1 / g[0];
    for (auto& c : s) c *= inv;
    s = qpoly::divmod(s, field_->modulus()).second;
    return Cyclotomic(field_, std::move(s));
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  /// If this is a root of unity, its exponent in Q/Z. Roots of unity in Q(zeta_m)
  /// are +-zeta_m^k.
  std::optional<QZ> root_exponent() const {
    const auto m = field_->order();
    for (std::int64_t k = 0; k < m; ++k) {
      const auto& pw = field_->power(k);
      if (pw == c_) return QZ(k, m);
      bool neg = true;
      for (std::size_t i = 0; i < c_.size() && neg; ++i) neg = (c_[i] == -pw[i]);
      if (neg) return QZ(k, m) + QZ(1, 2);
    }
    return std::nullopt;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return *a.field_ == *b.field_ && a.c_ == b.c_;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].get_str() + ")";
      if (i > 0) out += "*z" + std::to_string(field_->order()) + "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static void check(const Cyclotomic& a, const Cyclotomic& b) {
    if (!(*a.field_ == *b.field_)) throw InputError("cyclotomic fields differ");
  }

  FieldPtr field_;
  std::vector<Rat> c_;
};

/// Bring two elements into the smallest common cyclotomic field.
inline std::pair<Cyclotomic, Cyclotomic> common_field(const Cyclotomic& a, const Cyclotomic& b) {
  const auto ma = a.field()->order();
  const auto mb = b.field()->order();
  if (ma == mb) return {a, b};
  auto f = CyclotomicField::make(lcm64(ma, mb));
  return {a.lift(f), b.lift(f)};
}

}  // namespace ptorsion
