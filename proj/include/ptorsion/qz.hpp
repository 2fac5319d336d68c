#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"
#include "integer.hpp"

namespace ptorsion {

/// An element of Q/Z, stored as a reduced fraction num/den with 0 <= num < den.
/// Stands for the root of unity exp(2 pi i num/den) without ever evaluating it.
class QZ {
 public:
  QZ() = default;
  QZ(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw InputError("Q/Z denominator must be positive");
    num = floor_mod(num, den);
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static QZ parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return QZ(0, 1);  // integers are 0 in Q/Z
      return QZ(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw InputError("malformed Q/Z value: " + s);
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  /// Order of the corresponding root of unity.
  std::int64_t order() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  /// Numerator over a multiple M of the denominator.
  std::int64_t numerator_over(std::int64_t m) const {
    if (m % den_ != 0) throw DomainError("denominator does not divide target order");
    return num_ * (m / den_);
  }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend QZ operator+(const QZ& a, const QZ& b) {
    const std::int64_t l = lcm64(a.den_, b.den_);
    return QZ(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
  }
  friend QZ operator-(const QZ& a) { return QZ(-a.num_, a.den_); }
  friend QZ operator-(const QZ& a, const QZ& b) { return a + (-b); }
  friend QZ operator*(std::int64_t k, const QZ& a) {
    return QZ(static_cast<std::int64_t>(
                  (static_cast<__int128>(floor_mod(k, a.den_)) * a.num_) % a.den_),
              a.den_);
  }
  QZ& operator+=(const QZ& b) { return *this = *this + b; }

  friend bool operator==(const QZ&, const QZ&) = default;
  friend auto operator<=>(const QZ& a, const QZ& b) {
    // Order by value in [0, 1).
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l != r) return l < r ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ptorsion
