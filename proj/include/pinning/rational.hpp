#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pinning {

/// Exact rational number on 64-bit numerator/denominator.
///
/// Always stored in lowest terms with a positive denominator. All arithmetic
/// runs through 128-bit intermediates and throws std::overflow_error if a
/// reduced result no longer fits in 64 bits; results are never silently
/// wrapped or rounded. The magnitudes appearing in the perturbation series
/// (denominators up to ~3e13) stay far inside that range.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}

  Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::domain_error("Rational: zero denominator");
    __int128 n = numerator;
    __int128 d = denominator;
    assign_reduced(n, d);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return make_reduced(n, d);
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return make_reduced(n, d);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.num_;
    __int128 d = i128(a.den_) * b.den_;
    return make_reduced(n, d);
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    __int128 n = i128(a.num_) * b.den_;
    __int128 d = i128(a.den_) * b.num_;
    return make_reduced(n, d);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;  // int64 min cannot appear: reduced values keep |num| <= max
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Nonnegative integer power, exact.
  Rational pow(unsigned exponent) const {
    Rational result(1);
    Rational base = *this;
    while (exponent > 0) {
      if (exponent & 1u) result *= base;
      base = (exponent > 1) ? base * base : base;
      exponent >>= 1u;
    }
    return result;
  }

  /// Nearest double. Both components fit a double exactly for the
  /// magnitudes used here, so this is a single rounding.
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

  static unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign_reduced(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n)
                                 : static_cast<unsigned __int128>(n);
    unsigned __int128 ud = static_cast<unsigned __int128>(d);
    unsigned __int128 g = gcd_u128(un, ud);
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
    constexpr __int128 kMax = INT64_MAX;
    constexpr __int128 kMin = INT64_MIN;
    if (n > kMax || n < kMin || d > kMax) {
      throw std::overflow_error("Rational: value does not fit in 64 bits");
    }
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  static Rational make_reduced(__int128 n, __int128 d) {
    Rational r;
    r.assign_reduced(n, d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace pinning
