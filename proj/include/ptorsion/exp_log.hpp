#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>

#include "errors.hpp"
#include "scalar.hpp"

namespace ptorsion {

/// Smallest valuation on which exp and log are mutually inverse isometries:
/// v > 1/(p-1), i.e. 1 for odd p and 2 for p = 2.
inline std::int64_t exp_disc_valuation(std::int64_t p) { return p == 2 ? 2 : 1; }

/// Teichmueller lift of a non-zero residue: the unique (p^f - 1)-th root of unity
/// congruent to xi, obtained as the fixed point of t -> t^{p^f} modulo p^M.
template <class F>
LocalScalar<F> teichmuller(const std::shared_ptr<const F>& field, const ResidueElement& xi,
                           std::int64_t precision) {
  if (xi.is_zero()) throw DomainError("Teichmueller lift of zero residue");
  if (!(*xi.field() == *field->residue_field())) throw InputError("residue field mismatch");
  if (precision < 1) throw InputError("precision must be >= 1");
  const Int q = xi.field()->size();
  auto t = LocalScalar<F>::from_value(field, 0, field->lift(xi), precision);
  // Each step gains at least one digit, so M + 1 steps always suffice.
  for (std::int64_t i = 0; i <= precision; ++i) {
    auto next = t.pow(q);
    if (next == t) return t;
    t = std::move(next);
  }
  throw PrecisionError("Teichmueller iteration failed to stabilise");
}

inline UnramifiedScalar teichmuller(const ResidueElement& xi, std::int64_t precision) {
  return teichmuller(UnramifiedField::make(xi.field()->prime(), xi.field()->degree()), xi,
                     precision);
}

/// exp(x) = sum x^j / j!, for v(x) > 1/(p-1), returned to absolute precision
/// min(n, abs precision of x).
template <class F>
LocalScalar<F> padic_exp(const LocalScalar<F>& x, std::int64_t n) {
  const std::int64_t p = x.prime();
  const std::int64_t target = std::min(n, x.abs_precision());
  if (x.min_valuation() >= target) return x.one(target).with_abs_precision(target);
  if (x.valuation() < exp_disc_valuation(p)) throw DomainError("outside exp disc");
  const std::int64_t v = x.valuation();
  const auto xe = x.as_exact(target);

  // Terms with j*v - (j-1)/(p-1) >= target have valuation >= target and are dropped;
  // the bound is increasing in j, so the loop can stop at the first such j.
  auto sum = x.one(target);
  auto term = x.one(target);
  for (std::int64_t j = 1; j * v * (p - 1) - (j - 1) < target * (p - 1); ++j) {
    term = term * xe / x.make(Int(j), target);
    sum = sum + term;
  }
  return sum.with_abs_precision(target);
}

/// log(x) = sum (-1)^{k+1} (x-1)^k / k, for v(x - 1) > 1/(p-1).
template <class F>
LocalScalar<F> padic_log(const LocalScalar<F>& x, std::int64_t n) {
  const std::int64_t p = x.prime();
  if (x.is_zero() || x.valuation() != 0) throw DomainError("outside log disc");
  const std::int64_t target = std::min(n, x.abs_precision());
  const auto y = x - x.one(x.abs_precision());
  if (y.min_valuation() >= target) return x.make_zero(target);
  if (y.valuation() < exp_disc_valuation(p)) throw DomainError("outside log disc");
  const std::int64_t v = y.valuation();
  const auto ye = y.as_exact(target);

  auto floor_log = [p](std::int64_t k) {
    std::int64_t e = 0;
    for (std::int64_t q = p; q <= k; q *= p) ++e;
    return e;
  };
  auto sum = x.make_zero(target);
  auto power = x.one(target);
  for (std::int64_t k = 1; k * v - floor_log(k) < target; ++k) {
    power = power * ye;
    auto term = power / x.make(Int(k), target);
    sum = (k % 2 == 1) ? sum + term : sum - term;
  }
  return sum.with_abs_precision(target);
}

}  // namespace ptorsion
