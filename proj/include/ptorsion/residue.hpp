#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace ptorsion {

namespace fp {

// Dense polynomials over Z/p, little-endian, trimmed (empty = zero).
using Poly = std::vector<std::int64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

inline std::int64_t inv(std::int64_t a, std::int64_t p) {
  return to_int64(inverse_mod(Int(a), Int(p)));
}

inline Poly sub(Poly a, const Poly& b, std::int64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = floor_mod(a[i] - b[i], p);
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(r);
  return r;
}

/// Remainder of a modulo b (b non-zero).
inline Poly rem(Poly a, const Poly& b, std::int64_t p) {
  const std::int64_t lead_inv = inv(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = floor_mod(a[i + shift] - mulmod(c, b[i], p), p);
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b, std::int64_t p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// base^e mod m.
inline Poly powmod(Poly base, Int e, const Poly& m, std::int64_t p) {
  Poly r{1};
  base = rem(base, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base, p), m, p);
    base = rem(mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

/// Rabin's test for a monic polynomial g of degree f >= 1.
inline bool is_irreducible(const Poly& g, std::int64_t p) {
  const auto f = static_cast<std::int64_t>(g.size()) - 1;
  if (f == 1) return true;
  const Poly x{0, 1};
  if (powmod(x, int_pow(p, f), g, p) != rem(x, g, p)) return false;
  for (std::int64_t q : prime_factors(f)) {
    const Poly h = sub(powmod(x, int_pow(p, f / q), g, p), x, p);
    if (gcd(g, h, p).size() != 1) return false;
  }
  return true;
}

}  // namespace fp

/// The finite field F_{p^f} = F_p[x]/(g). The modulus g is the monic irreducible of
/// degree f whose coefficient string (c_{f-1}, ..., c_0) is lexicographically smallest,
/// so the same field always gets the same basis.
class ResidueField {
 public:
  ResidueField(std::int64_t p, std::int64_t f) : p_(p), f_(f) {
    if (!is_prime(p)) throw InputError("p must be prime");
    if (f < 1) throw InputError("degree must be >= 1");
    if (f > 64) throw InputError("residue degree too large");
    size_ = int_pow(p, f);
    const Int limit = size_;
    for (Int n = 0; n < limit; ++n) {
      fp::Poly g = digits_of(n);
      g.resize(static_cast<std::size_t>(f), 0);
      g.push_back(1);
      if (fp::is_irreducible(g, p)) {
        modulus_ = std::move(g);
        break;
      }
    }
  }

  /// Shared instance per (p, f).
  static std::shared_ptr<const ResidueField> make(std::int64_t p, std::int64_t f) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const ResidueField>> cache;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find({p, f});
      if (it != cache.end()) return it->second;
    }
    auto field = std::make_shared<const ResidueField>(p, f);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(p, f), field).first->second;
  }

  std::int64_t prime() const { return p_; }
  std::int64_t degree() const { return f_; }
  /// Monic modulus, little-endian with the leading 1 included.
  const fp::Poly& modulus() const { return modulus_; }
  const Int& size() const { return size_; }
  Int unit_group_order() const { return size_ - 1; }

  /// Base-p digits of n as a residue representative.
  fp::Poly digits_of(Int n) const {
    fp::Poly d;
    while (n > 0) {
      d.push_back(to_int64(Int(n % p_)));
      n /= p_;
    }
    return d;
  }

  bool operator==(const ResidueField& o) const { return p_ == o.p_ && f_ == o.f_; }

 private:
  std::int64_t p_;
  std::int64_t f_;
  Int size_;
  fp::Poly modulus_;
};

/// Element of F_{p^f}, represented by a polynomial of degree < f.
class ResidueElement {
 public:
  ResidueElement(std::shared_ptr<const ResidueField> field, fp::Poly coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c = floor_mod(c, field_->prime());
    fp::trim(coeffs_);
    coeffs_ = fp::rem(coeffs_, field_->modulus(), field_->prime());
  }

  /// The element with index n = sum c_i p^i.
  static ResidueElement from_index(std::shared_ptr<const ResidueField> field, const Int& n) {
    auto d = field->digits_of(n);
    return ResidueElement(std::move(field), std::move(d));
  }

  const std::shared_ptr<const ResidueField>& field() const { return field_; }
  const fp::Poly& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  Int index() const {
    Int n = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) n = n * field_->prime() + *it;
    return n;
  }

  friend ResidueElement operator*(const ResidueElement& a, const ResidueElement& b) {
    check_same(a, b);
    const auto p = a.field_->prime();
    return ResidueElement(a.field_, fp::rem(fp::mul(a.coeffs_, b.coeffs_, p), a.field_->modulus(), p));
  }

  ResidueElement pow(Int e) const {
    if (e < 0) return inverse().pow(-e);
    return ResidueElement(field_, fp::powmod(coeffs_, e, field_->modulus(), field_->prime()));
  }

  ResidueElement inverse() const {
    if (is_zero()) throw DomainError("zero residue is not invertible");
    return pow(field_->unit_group_order() - 1);
  }

  /// Multiplicative order; divides p^f - 1.
  Int order() const {
    if (is_zero()) throw DomainError("zero residue has no multiplicative order");
    Int n = field_->unit_group_order();
    for (std::int64_t q : prime_factors_big(n)) {
      while (n % q == 0 && pow(n / q).is_one()) n /= q;
    }
    return n;
  }

  friend bool operator==(const ResidueElement& a, const ResidueElement& b) {
    return *a.field_ == *b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static void check_same(const ResidueElement& a, const ResidueElement& b) {
    if (!(*a.field_ == *b.field_)) throw InputError("residue fields differ");
  }

  static std::vector<std::int64_t> prime_factors_big(const Int& n) {
    return prime_factors(to_int64(n));
  }

  std::shared_ptr<const ResidueField> field_;
  fp::Poly coeffs_;
};

/// Deterministic generator of F_{p^f}^x: the primitive element of smallest index.
inline ResidueElement residue_generator(const std::shared_ptr<const ResidueField>& field) {
  const Int order = field->unit_group_order();
  for (Int n = 1; n < field->size(); ++n) {
    auto e = ResidueElement::from_index(field, n);
    if (e.order() == order) return e;
  }
  throw DomainError("no generator found");  // unreachable for a field
}

}  // namespace ptorsion
