#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "qz.hpp"

namespace ptorsion {

using LaurentExponent = std::vector<std::int64_t>;

/// Laurent polynomial in t_1..t_n over Q(zeta_m). Zero coefficients are never stored.
class LaurentPoly {
 public:
  using FieldPtr = Cyclotomic::FieldPtr;

  LaurentPoly(FieldPtr field, std::int64_t nvars) : field_(std::move(field)), nvars_(nvars) {}

  static LaurentPoly constant(FieldPtr field, std::int64_t nvars, const Cyclotomic& c) {
    LaurentPoly f(std::move(field), nvars);
    f.add_term(LaurentExponent(static_cast<std::size_t>(nvars), 0), c);
    return f;
  }
  static LaurentPoly constant(FieldPtr field, std::int64_t nvars, const Rat& c) {
    auto k = Cyclotomic::rational(field, c);
    return constant(std::move(field), nvars, k);
  }
  static LaurentPoly monomial(FieldPtr field, LaurentExponent e, const Cyclotomic& c) {
    LaurentPoly f(std::move(field), static_cast<std::int64_t>(e.size()));
    f.add_term(std::move(e), c);
    return f;
  }
  /// t_i - 1.
  static LaurentPoly variable_minus_one(FieldPtr field, std::int64_t nvars, std::int64_t i) {
    LaurentExponent e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 1;
    auto f = monomial(field, e, Cyclotomic::rational(field, Rat(1)));
    return f - constant(field, nvars, Rat(1));
  }

  const FieldPtr& field() const { return field_; }
  std::int64_t nvars() const { return nvars_; }
  const std::map<LaurentExponent, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                              terms_.begin()->first.end(),
                                              [](std::int64_t e) { return e == 0; }));
  }
  bool is_polynomial() const {
    for (const auto& [e, c] : terms_)
      for (auto x : e)
        if (x < 0) return false;
    return true;
  }

  void add_term(LaurentExponent e, const Cyclotomic& c) {
    if (static_cast<std::int64_t>(e.size()) != nvars_) throw InputError("exponent length mismatch");
    Cyclotomic k = c.field()->order() == field_->order() ? c : c.lift(field_);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!k.is_zero()) terms_.emplace(std::move(e), std::move(k));
      return;
    }
    it->second = it->second + k;
    if (it->second.is_zero()) terms_.erase(it);
  }

  LaurentPoly lift(const FieldPtr& target) const {
    LaurentPoly r(target, nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.lift(target));
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    auto [x, y] = unify(a, b);
    for (const auto& [e, c] : y.terms_) x.add_term(e, c);
    return x;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    auto [x, y] = unify(a, b);
    LaurentPoly r(x.field_, x.nvars_);
    for (const auto& [ea, ca] : x.terms_)
      for (const auto& [eb, cb] : y.terms_) {
        LaurentExponent e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_) return false;
    auto [x, y] = unify(a, b);
    return x.terms_ == y.terms_;
  }

  /// Substitute t_i -> exp(2 pi i q_i). The result lives in Q(zeta_n) with n the lcm of
  /// m and the orders of the q_i.
  Cyclotomic evaluate_at_roots(const std::vector<QZ>& point) const {
    if (static_cast<std::int64_t>(point.size()) != nvars_) throw InputError("point has wrong dimension");
    std::int64_t n = field_->order();
    for (const auto& q : point) n = lcm64(n, q.order());
    auto target = n == field_->order() ? field_ : CyclotomicField::make(n);
    return evaluate_at_roots(point, target);
  }

  Cyclotomic evaluate_at_roots(const std::vector<QZ>& point, const FieldPtr& target) const {
    const std::int64_t n = target->order();
    Cyclotomic sum(target);
    for (const auto& [e, c] : terms_) {
      std::int64_t k = 0;
      for (std::size_t i = 0; i < e.size(); ++i)
        k = floor_mod(k + floor_mod(e[i], n) * point[i].numerator_over(n) % n, n);
      sum = sum + c.lift(target).times_root(k);
    }
    return sum;
  }

  /// Evaluate at an arbitrary point of the field (negative exponents need units).
  Cyclotomic evaluate(const std::vector<Cyclotomic>& x) const {
    if (static_cast<std::int64_t>(x.size()) != nvars_) throw InputError("point has wrong dimension");
    Cyclotomic sum(field_);
    for (const auto& [e, c] : terms_) {
      Cyclotomic term = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        const Cyclotomic base = e[i] > 0 ? x[i] : x[i].inverse();
        for (std::int64_t k = 0; k < (e[i] > 0 ? e[i] : -e[i]); ++k) term = term * base;
      }
      sum = sum + term;
    }
    return sum;
  }

  /// Divide by the monomial that makes every exponent >= 0 with each variable's
  /// minimum exponent 0, then scale so the lexicographically largest term has
  /// coefficient 1. Two polynomials with the same zero set in the torus that differ
  /// by a unit of the Laurent ring normalize identically.
  LaurentPoly normalized() const {
    if (is_zero()) return *this;
    LaurentExponent shift(static_cast<std::size_t>(nvars_), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) shift[i] = first ? e[i] : std::min(shift[i], e[i]);
      first = false;
    }
    const Cyclotomic lead_inv = terms_.rbegin()->second.inverse();
    LaurentPoly r(field_, nvars_);
    for (const auto& [e, c] : terms_) {
      LaurentExponent ne(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] - shift[i];
      r.terms_.emplace(std::move(ne), c * lead_inv);
    }
    return r;
  }

  /// Exact quotient a / d for polynomials (non-negative exponents) when d divides a,
  /// via multivariate division with respect to the lexicographic order.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw DomainError("division by zero polynomial");
    auto [rem, div] = unify(*this, d);
    if (!rem.is_polynomial() || !div.is_polynomial()) throw InputError("exact division needs polynomials");
    LaurentPoly quot(rem.field_, nvars_);
    const auto& [lead_e, lead_c] = *div.terms_.rbegin();
    const Cyclotomic lead_inv = lead_c.inverse();
    while (!rem.is_zero()) {
      const auto& [re, rc] = *rem.terms_.rbegin();
      LaurentExponent qe(re.size());
      for (std::size_t i = 0; i < qe.size(); ++i) {
        qe[i] = re[i] - lead_e[i];
        if (qe[i] < 0) return std::nullopt;
      }
      auto q = monomial(rem.field_, qe, rc * lead_inv);
      quot = quot + q;
      rem = rem - q * div;
    }
    return quot;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "[" + it->second.str() + "]";
      for (std::size_t i = 0; i < it->first.size(); ++i)
        if (it->first[i] != 0) out += "*t" + std::to_string(i + 1) + "^" + std::to_string(it->first[i]);
    }
    return out;
  }

 private:
  static std::pair<LaurentPoly, LaurentPoly> unify(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_) throw InputError("Laurent polynomials in different numbers of variables");
    const auto ma = a.field_->order();
    const auto mb = b.field_->order();
    if (ma == mb) return {a, b};
    auto f = CyclotomicField::make(lcm64(ma, mb));
    return {a.lift(f), b.lift(f)};
  }

  FieldPtr field_;
  std::int64_t nvars_;
  std::map<LaurentExponent, Cyclotomic> terms_;
};

}  // namespace ptorsion
