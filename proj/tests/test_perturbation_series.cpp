#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pinning/perturbation_series.hpp"

using namespace pinning;
using namespace pinning::series;

namespace {

const polytope::LinearConstraint& find(const polytope::ConstraintSet& set,
                                       const std::string& label) {
  for (const auto& c : set.constraints) {
    if (c.label == label) return c;
  }
  throw std::runtime_error("missing constraint " + label);
}

RationalSeries pure_eighth(std::int64_t num, std::int64_t den) {
  RationalSeries s;
  s.set_coefficient(8, Rational(num, den));
  return s;
}

}  // namespace

TEST_CASE("series table spot values") {
  const auto& t = spectrum_series_table();

  CHECK(t[0].coefficient(0) == Rational(1));
  CHECK(t[0].coefficient(2) == Rational(0));
  CHECK(t[0].coefficient(4) == Rational(0));
  CHECK(t[0].coefficient(6) == Rational(-40, 729));
  CHECK(t[0].coefficient(8) == Rational(1390, 59049));

  CHECK(t[1].coefficient(4) == Rational(-2, 9));
  CHECK(t[1].coefficient(6) == Rational(232, 729));
  CHECK(t[1].coefficient(8) == Rational(-3926, 10935));

  CHECK(t[2].coefficient(6) == Rational(64, 243));
  CHECK(t[2].coefficient(8) == Rational(-81902, 295245));

  CHECK(t[3].coefficient(0) == Rational(0));
  CHECK(t[3].coefficient(4) == Rational(2, 9));
  CHECK(t[3].coefficient(6) == Rational(-64, 243));
  CHECK(t[3].coefficient(8) == Rational(73802, 295245));

  CHECK(t[4].coefficient(8) == Rational(3976, 10935));
  CHECK(t[5].coefficient(6) == Rational(40, 729));
  CHECK(t[5].coefficient(8) == Rational(-2200, 59049));
  CHECK(t[6].coefficient(8) == Rational(80, 2187));

  // No delta^2 term anywhere, and the eighth occupation is flat at this order.
  for (const auto& s : t) CHECK(s.coefficient(2) == Rational(0));
  CHECK(t[7].leading_exponent() == -1);
}

TEST_CASE("exact structural identities") {
  const auto& t = spectrum_series_table();

  SUBCASE("the eight series sum to the particle count exactly") {
    RationalSeries total;
    for (const auto& s : t) total += s;
    CHECK(total == RationalSeries::constant(Rational(3)));
  }

  SUBCASE("pair sums hold through sixth order, break at eighth") {
    // lambda_k + lambda_{7-k} - 1 leaves a pure delta^8 residue whose three
    // values are balanced by lambda_7 within the exact trace.
    CHECK(t[0] + t[5] - RationalSeries::constant(Rational(1)) ==
          pure_eighth(-10, 729));
    CHECK(t[1] + t[4] - RationalSeries::constant(Rational(1)) ==
          pure_eighth(10, 2187));
    CHECK(t[2] + t[3] - RationalSeries::constant(Rational(1)) ==
          pure_eighth(-20, 729));
  }

  SUBCASE("decay hierarchy matches the table's leading exponents") {
    CHECK(hierarchy_exponent(4) == 4);
    CHECK(hierarchy_exponent(5) == 4);
    CHECK(hierarchy_exponent(6) == 6);
    CHECK(hierarchy_exponent(7) == 8);
    CHECK(hierarchy_exponent(8) == 10);
    for (int k = 4; k <= 7; ++k) {
      CHECK(t[k - 1].leading_exponent() == hierarchy_exponent(k));
    }
    // lambda_8 starts beyond the truncation order, so the table holds zero.
    CHECK(hierarchy_exponent(8) > RationalSeries::kMaxExponent);
    CHECK_THROWS_AS(hierarchy_exponent(3), std::out_of_range);
    CHECK_THROWS_AS(hierarchy_exponent(9), std::out_of_range);
  }
}

TEST_CASE("constraint series") {
  const auto& bd = polytope::borland_dennis_set();
  const auto& ts = polytope::three_seven_set();

  SUBCASE("six-orbital facet distance is a pure eighth-order term") {
    RationalSeries d6 = constraint_series(find(bd, "D6"));
    CHECK(d6 == pure_eighth(4510, 59049));
    CHECK(d6.leading_exponent() == 8);
  }

  SUBCASE("the equality-pair constraints also leave eighth-order residues") {
    CHECK(constraint_series(find(bd, "BD1")) == pure_eighth(10, 729));
    // The middle pair overshoots: lambda_2 + lambda_5 exceeds 1 at this
    // order, so the inequality direction carried in the set goes negative.
    CHECK(constraint_series(find(bd, "BD2")) == pure_eighth(-10, 2187));
    CHECK(constraint_series(find(bd, "BD3")) == pure_eighth(20, 729));
  }

  SUBCASE("seven-orbital facets") {
    CHECK(constraint_series(find(ts, "D7_1")) == pure_eighth(20, 2187));
    CHECK(constraint_series(find(ts, "D7_2")) == pure_eighth(10, 243));
    CHECK(constraint_series(find(ts, "D7_3")) == pure_eighth(50, 2187));
    CHECK(constraint_series(find(ts, "D7_4")) == pure_eighth(2890, 59049));
  }

  SUBCASE("sum form of the six-orbital facet differs at eighth order") {
    // On the exact spectrum the two forms differ by the pair-sum residues,
    // so their leading coefficients disagree. Distance reports must use the
    // difference form.
    RationalSeries sum_form = constraint_series(polytope::d6_sum_form());
    CHECK(sum_form == pure_eighth(5050, 59049));
  }

  SUBCASE("occupations beyond the eighth contribute nothing") {
    RationalSeries prefix = constraint_series(polytope::harmonic_family_prefix(16));
    CHECK(prefix == constraint_series(find(ts, "D7_4")));
  }
}

TEST_CASE("series evaluation") {
  const auto& t = spectrum_series_table();

  SUBCASE("exact depletion of the top occupation at delta = 1/10") {
    Rational depletion = Rational(1) - t[0].evaluate_exact(Rational(1, 10));
    CHECK(depletion == Rational(322610, 5904900000000));
    CHECK(std::abs(depletion.to_double() - 5.46343e-8) < 1e-13);
  }

  SUBCASE("exact evaluation matches the table termwise") {
    Rational delta(1, 5);
    SeriesEvaluation ev = eval_spectrum_series(delta);
    REQUIRE(ev.spectrum.values.size() == 8);
    CHECK(ev.spectrum.particle_count == 3);
    for (int k = 0; k < 8; ++k) {
      CHECK(ev.spectrum.values[k] == t[k].evaluate_exact(delta).to_double());
    }
    double sum = 0.0;
    for (double v : ev.spectrum.values) sum += v;
    CHECK(std::abs(sum - 3.0) <= 1e-14);
  }

  SUBCASE("series values are even in delta") {
    SeriesEvaluation plus = eval_spectrum_series(Rational(3, 10));
    SeriesEvaluation minus = eval_spectrum_series(Rational(-3, 10));
    for (int k = 0; k < 8; ++k) {
      CHECK(plus.spectrum.values[k] == minus.spectrum.values[k]);
    }
  }

  SUBCASE("floating path tracks the exact path") {
    // 3/16 is exactly representable, so both paths see the same input.
    SeriesEvaluation exact = eval_spectrum_series(Rational(3, 16));
    SeriesEvaluation fast = eval_spectrum_series(0.1875);
    for (int k = 0; k < 8; ++k) {
      CHECK(std::abs(fast.spectrum.values[k] - exact.spectrum.values[k]) <=
            1e-15);
    }
  }

  SUBCASE("regime flag") {
    CHECK_FALSE(eval_spectrum_series(0.5).outside_regime);
    CHECK(eval_spectrum_series(0.51).outside_regime);
    CHECK(eval_spectrum_series(-0.6).outside_regime);
    CHECK_FALSE(eval_spectrum_series(Rational(1, 2)).outside_regime);
    CHECK(eval_spectrum_series(Rational(-3, 5)).outside_regime);
    CHECK_THROWS_AS(eval_spectrum_series(std::nan("")), std::domain_error);
  }
}

TEST_CASE("series table JSON export") {
  nlohmann::json j = series_table_to_json();
  REQUIRE(j.size() == 8);
  CHECK(j[3]["occupation"] == 4);
  const auto& coeffs = j[3]["coefficients"];
  REQUIRE(coeffs.size() == 5);
  CHECK(coeffs[2]["exponent"] == 4);
  CHECK(coeffs[2]["num"] == 2);
  CHECK(coeffs[2]["den"] == 9);
  CHECK(coeffs[2]["num"].is_number_integer());
  CHECK(j[6]["coefficients"][4]["num"] == 80);
  CHECK(j[6]["coefficients"][4]["den"] == 2187);
}
