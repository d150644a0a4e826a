#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "pinning/rational.hpp"
#include "pinning/rational_series.hpp"

using pinning::Rational;
using pinning::RationalSeries;

TEST_CASE("rational construction normalizes") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).den() == 1);
  CHECK(Rational(6, 3).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 6);
  Rational b(1, 10);
  CHECK(a + b == Rational(4, 15));
  CHECK(a - b == Rational(1, 15));
  CHECK(a * b == Rational(1, 60));
  CHECK(a / b == Rational(5, 3));
  CHECK(-a == Rational(-1, 6));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);

  Rational acc(0);
  for (int i = 0; i < 100; ++i) acc += Rational(1, 100);
  CHECK(acc == Rational(1));
}

TEST_CASE("rational comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(7, 2) > Rational(3));
  CHECK(Rational(1, 3) != Rational(1, 4));
}

TEST_CASE("rational power and conversion") {
  CHECK(Rational(2, 3).pow(4) == Rational(16, 81));
  CHECK(Rational(2, 3).pow(0) == Rational(1));
  CHECK(Rational(-1, 2).pow(3) == Rational(-1, 8));
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(Rational(-7, 2).to_string() == "-7/2");
  CHECK(Rational(5).to_string() == "5");
}

TEST_CASE("rational overflow is detected, not wrapped") {
  Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big + big, std::overflow_error);
  CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
  // Reduction can rescue large intermediates.
  Rational half_big(INT64_MAX - 1, 2);
  CHECK_NOTHROW(half_big * Rational(2, INT64_MAX - 1));
}

TEST_CASE("series exponent discipline") {
  RationalSeries s;
  s.set_coefficient(4, Rational(2, 9));
  CHECK(s.coefficient(4) == Rational(2, 9));
  CHECK(s.coefficient(6) == Rational(0));
  CHECK_THROWS_AS(s.coefficient(3), std::out_of_range);
  CHECK_THROWS_AS(s.coefficient(10), std::out_of_range);
  CHECK_THROWS_AS(s.set_coefficient(5, Rational(1)), std::out_of_range);
  CHECK(s.leading_exponent() == 4);
  CHECK(RationalSeries().leading_exponent() == -1);
  CHECK(RationalSeries::constant(Rational(1)).leading_exponent() == 0);
}

TEST_CASE("series arithmetic and evaluation") {
  RationalSeries s = RationalSeries::constant(Rational(1));
  s.set_coefficient(2, Rational(-1, 2));
  s.set_coefficient(8, Rational(3, 7));

  SUBCASE("exact evaluation matches term-by-term sum") {
    Rational delta(1, 5);
    Rational expected = Rational(1) + Rational(-1, 2) * delta.pow(2) +
                        Rational(3, 7) * delta.pow(8);
    CHECK(s.evaluate_exact(delta) == expected);
  }

  SUBCASE("double evaluation tracks the exact one") {
    double exact = s.evaluate_exact(Rational(3, 10)).to_double();
    CHECK(s.evaluate(0.3) == doctest::Approx(exact).epsilon(1e-15));
  }

  SUBCASE("evaluation is even in delta") {
    CHECK(s.evaluate_exact(Rational(2, 7)) == s.evaluate_exact(Rational(-2, 7)));
  }

  SUBCASE("linear operations") {
    RationalSeries t = RationalSeries::constant(Rational(-1));
    t.set_coefficient(2, Rational(1, 2));
    RationalSeries sum = s + t;
    CHECK(sum.coefficient(0) == Rational(0));
    CHECK(sum.coefficient(2) == Rational(0));
    CHECK(sum.coefficient(8) == Rational(3, 7));
    RationalSeries scaled = Rational(7, 3) * s;
    CHECK(scaled.coefficient(8) == Rational(1));
    CHECK((s - s).leading_exponent() == -1);
  }
}
