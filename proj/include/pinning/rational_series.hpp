#pragma once

#include <array>
#include <stdexcept>

#include "pinning/rational.hpp"

namespace pinning {

/// Truncated power series in a small parameter delta with exact rational
/// coefficients. Only even powers up to delta^8 can be nonzero; that is the
/// structure the weak-coupling expansion of the occupation spectrum actually
/// has (the coupling enters through delta^2), so odd terms are excluded by
/// the type rather than checked at runtime.
class RationalSeries {
public:
  static constexpr int kMaxExponent = 8;

  RationalSeries() = default;

  static RationalSeries constant(const Rational& c0) {
    RationalSeries s;
    s.coeff_[0] = c0;
    return s;
  }

  /// Coefficient of delta^exponent. Exponent must be even and <= 8.
  const Rational& coefficient(int exponent) const {
    return coeff_[slot(exponent)];
  }

  void set_coefficient(int exponent, const Rational& value) {
    coeff_[slot(exponent)] = value;
  }

  friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
    RationalSeries r;
    for (int k = 0; k < 5; ++k) r.coeff_[k] = a.coeff_[k] + b.coeff_[k];
    return r;
  }

  friend RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) {
    RationalSeries r;
    for (int k = 0; k < 5; ++k) r.coeff_[k] = a.coeff_[k] - b.coeff_[k];
    return r;
  }

  friend RationalSeries operator*(const Rational& scale, const RationalSeries& s) {
    RationalSeries r;
    for (int k = 0; k < 5; ++k) r.coeff_[k] = scale * s.coeff_[k];
    return r;
  }

  RationalSeries& operator+=(const RationalSeries& o) { return *this = *this + o; }

  bool operator==(const RationalSeries& o) const { return coeff_ == o.coeff_; }

  /// Exact evaluation at a rational delta. Horner scheme in delta^2; every
  /// intermediate stays rational, conversion to double happens only in the
  /// caller if at all.
  Rational evaluate_exact(const Rational& delta) const {
    Rational d2 = delta * delta;
    Rational acc = coeff_[4];
    for (int k = 3; k >= 0; --k) acc = acc * d2 + coeff_[k];
    return acc;
  }

  /// Floating-point evaluation, for plots and loose comparisons. Each
  /// coefficient is rounded once and the Horner recursion runs in doubles.
  double evaluate(double delta) const {
    double d2 = delta * delta;
    double acc = coeff_[4].to_double();
    for (int k = 3; k >= 0; --k) acc = acc * d2 + coeff_[k].to_double();
    return acc;
  }

  /// Smallest exponent with a nonzero coefficient, or -1 for the zero series.
  int leading_exponent() const {
    for (int k = 0; k < 5; ++k) {
      if (!coeff_[k].is_zero()) return 2 * k;
    }
    return -1;
  }

private:
  static int slot(int exponent) {
    if (exponent < 0 || exponent > kMaxExponent || exponent % 2 != 0) {
      throw std::out_of_range("RationalSeries: exponent must be even and in [0, 8]");
    }
    return exponent / 2;
  }

  // coeff_[k] multiplies delta^(2k).
  std::array<Rational, 5> coeff_{};
};

}  // namespace pinning
