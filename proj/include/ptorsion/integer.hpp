#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ptorsion {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(std::int64_t base, std::int64_t exp) {
  if (exp < 0) throw DomainError("negative exponent in int_pow");
  Int r;
  if (base >= 0) {
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exp));
  } else {
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(-base),
                  static_cast<unsigned long>(exp));
    if (exp % 2 == 1) r = -r;
  }
  return r;
}

inline Int int_pow(const Int& base, std::int64_t exp) {
  if (exp < 0) throw DomainError("negative exponent in int_pow");
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

/// Non-negative remainder.
inline Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("not invertible at this precision");
  }
  return r;
}

inline Int pow_mod(const Int& base, const Int& exp, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// p-adic valuation of a non-zero integer.
inline std::int64_t valuation(const Int& n, std::int64_t p) {
  if (n == 0) throw DomainError("valuation of zero");
  Int q = n;
  std::int64_t v = 0;
  const Int pp = p;
  while (mpz_divisible_p(q.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), pp.get_mpz_t());
    ++v;
  }
  return v;
}

inline std::int64_t valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw DomainError("valuation of zero");
  std::int64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Sum of base-p digits of n >= 0.
inline std::int64_t digit_sum(std::int64_t n, std::int64_t p) {
  std::int64_t s = 0;
  for (; n > 0; n /= p) s += n % p;
  return s;
}

/// v_p(n!) = (n - s_p(n)) / (p - 1).
inline std::int64_t factorial_valuation(std::int64_t n, std::int64_t p) {
  return (n - digit_sum(n, p)) / (p - 1);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow");
  return r;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

/// Smallest f >= 1 with n | p^f - 1; requires gcd(n, p) = 1.
inline std::int64_t multiplicative_order_mod(std::int64_t p, std::int64_t n) {
  if (n == 1) return 1;
  if (std::gcd(p, n) != 1) throw DomainError("order undefined: p divides modulus");
  std::int64_t x = floor_mod(p, n);
  std::int64_t f = 1;
  while (x != 1) {
    x = static_cast<std::int64_t>((static_cast<__int128>(x) * p) % n);
    ++f;
  }
  return f;
}

/// Parse "a/b", "a" into a rational.
inline Rat parse_rational(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw InputError("zero denominator: " + s);
  return q;
}

inline std::int64_t to_int64(const Int& n) {
  if (!n.fits_slong_p()) throw DomainError("integer does not fit in 64 bits");
  return n.get_si();
}

}  // namespace ptorsion
