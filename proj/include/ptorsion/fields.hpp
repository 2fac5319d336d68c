#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "residue.hpp"

namespace ptorsion {

/// Field policy for Q_p: values are plain integers.
class PrimeField {
 public:
  using Value = Int;

  explicit PrimeField(std::int64_t p) : p_(p), residue_(ResidueField::make(p, 1)) {}
  static std::shared_ptr<const PrimeField> make(std::int64_t p) {
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const PrimeField>> cache;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(p);
      if (it != cache.end()) return it->second;
    }
    auto field = std::make_shared<const PrimeField>(p);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(p, field).first->second;
  }

  std::int64_t prime() const { return p_; }
  std::int64_t degree() const { return 1; }
  const std::shared_ptr<const ResidueField>& residue_field() const { return residue_; }
  bool same(const PrimeField& o) const { return p_ == o.p_; }

  Value embed(const Int& n) const { return n; }
  bool is_zero(const Value& a) const { return a == 0; }
  std::int64_t valuation(const Value& a) const { return ptorsion::valuation(a, p_); }
  Value reduce(const Value& a, const Int& m) const { return mod(a, m); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value scale(const Value& a, const Int& k) const { return a * k; }
  Value mul(const Value& a, const Value& b, const Int& m) const { return mod(a * b, m); }
  Value divide_p_power(const Value& a, std::int64_t k) const {
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), int_pow(p_, k).get_mpz_t());
    return r;
  }
  Value inverse(const Value& a, const Int& m) const { return inverse_mod(a, m); }
  ResidueElement residue(const Value& a) const {
    return ResidueElement(residue_, {to_int64(mod(a, Int(p_)))});
  }
  Value lift(const ResidueElement& r) const {
    return r.coeffs().empty() ? Int(0) : Int(r.coeffs()[0]);
  }
  std::vector<Int> coefficients(const Value& a) const { return {a}; }

 private:
  std::int64_t p_;
  std::shared_ptr<const ResidueField> residue_;
};

/// Field policy for the unramified extension Q_{p^f} = Q_p[x]/(g), with g the lift of
/// the residue field modulus. Values are coefficient vectors of length f.
class UnramifiedField {
 public:
  using Value = std::vector<Int>;

  UnramifiedField(std::int64_t p, std::int64_t f) : residue_(ResidueField::make(p, f)) {
    for (std::int64_t c : residue_->modulus()) modulus_.emplace_back(c);
  }
  static std::shared_ptr<const UnramifiedField> make(std::int64_t p, std::int64_t f) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const UnramifiedField>> cache;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find({p, f});
      if (it != cache.end()) return it->second;
    }
    auto field = std::make_shared<const UnramifiedField>(p, f);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(p, f), field).first->second;
  }

  std::int64_t prime() const { return residue_->prime(); }
  std::int64_t degree() const { return residue_->degree(); }
  const std::shared_ptr<const ResidueField>& residue_field() const { return residue_; }
  /// Monic modulus, little-endian including the leading 1.
  const std::vector<Int>& modulus() const { return modulus_; }
  bool same(const UnramifiedField& o) const { return *residue_ == *o.residue_; }

  Value embed(const Int& n) const {
    Value v(static_cast<std::size_t>(degree()), Int(0));
    v[0] = n;
    return v;
  }

  bool is_zero(const Value& a) const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }

  std::int64_t valuation(const Value& a) const {
    std::int64_t v = -1;
    for (const auto& c : a) {
      if (c == 0) continue;
      const auto vc = ptorsion::valuation(c, prime());
      if (v < 0 || vc < v) v = vc;
    }
    if (v < 0) throw DomainError("valuation of zero");
    return v;
  }

  Value reduce(Value a, const Int& m) const {
    for (auto& c : a) c = mod(c, m);
    return a;
  }
  Value add(Value a, const Value& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }
  Value sub(Value a, const Value& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }
  Value scale(Value a, const Int& k) const {
    for (auto& c : a) c *= k;
    return a;
  }

  Value mul(const Value& a, const Value& b, const Int& m) const {
    const auto f = static_cast<std::size_t>(degree());
    std::vector<Int> prod(2 * f - 1, Int(0));
    for (std::size_t i = 0; i < f; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
    }
    // Reduce by the monic modulus from the top down.
    for (std::size_t k = prod.size(); k-- > f;) {
      if (prod[k] == 0) continue;
      const Int c = prod[k];
      for (std::size_t i = 0; i <= f; ++i) prod[k - f + i] -= c * modulus_[i];
    }
    prod.resize(f);
    return reduce(std::move(prod), m);
  }

  Value divide_p_power(Value a, std::int64_t k) const {
    const Int pk = int_pow(prime(), k);
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
    return a;
  }

  /// Inverse of a unit modulo p^M: invert the residue, then Newton-lift.
  Value inverse(const Value& a, const Int& m) const {
    Value y = lift(residue(a).inverse());
    const Int two = 2;
    Int cur = prime();
    while (cur < m) {
      cur = cur * cur;
      if (cur > m) cur = m;
      Value ay = mul(a, y, cur);
      Value t = sub(embed(two), ay);
      y = mul(y, reduce(t, cur), cur);
    }
    return reduce(y, m);
  }

  ResidueElement residue(const Value& a) const {
    fp::Poly r;
    for (const auto& c : a) r.push_back(to_int64(mod(c, Int(prime()))));
    return ResidueElement(residue_, std::move(r));
  }

  Value lift(const ResidueElement& r) const {
    Value v(static_cast<std::size_t>(degree()), Int(0));
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) v[i] = r.coeffs()[i];
    return v;
  }

  std::vector<Int> coefficients(const Value& a) const { return a; }

 private:
  std::shared_ptr<const ResidueField> residue_;
  std::vector<Int> modulus_;
};

}  // namespace ptorsion
