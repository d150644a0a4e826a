#include "pinning/perturbation_series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace pinning::series {

namespace {

RationalSeries make_series(Rational c0, Rational c4, Rational c6, Rational c8) {
  RationalSeries s = RationalSeries::constant(c0);
  s.set_coefficient(4, c4);
  s.set_coefficient(6, c6);
  s.set_coefficient(8, c8);
  return s;
}

std::array<RationalSeries, 8> build_table() {
  // Occupation expansions of the three-fermion harmonic ground state.
  // The three occupations near 1 and the three leading small ones pair up
  // under k <-> 7-k (their sum is 1 exactly at every order except the
  // eighth, where the pairing leaves the small residues that build the
  // polytope distances). No delta^2 term appears anywhere: the lowest
  // correction to the Slater limit enters at fourth order.
  std::array<RationalSeries, 8> t;
  t[0] = make_series(1, {0}, {-40, 729}, {1390, 59049});          // lambda_1
  t[1] = make_series(1, {-2, 9}, {232, 729}, {-3926, 10935});     // lambda_2
  t[2] = make_series(1, {-2, 9}, {64, 243}, {-81902, 295245});    // lambda_3
  t[3] = make_series(0, {2, 9}, {-64, 243}, {73802, 295245});     // lambda_4
  t[4] = make_series(0, {2, 9}, {-232, 729}, {3976, 10935});      // lambda_5
  t[5] = make_series(0, {0}, {40, 729}, {-2200, 59049});          // lambda_6
  t[6] = make_series(0, {0}, {0}, {80, 2187});                    // lambda_7
  t[7] = RationalSeries::constant(0);                              // lambda_8
  return t;
}

}  // namespace

const std::array<RationalSeries, 8>& spectrum_series_table() {
  static const std::array<RationalSeries, 8> table = build_table();
  return table;
}

SeriesEvaluation eval_spectrum_series(const Rational& delta) {
  SeriesEvaluation out;
  out.spectrum.particle_count = 3;
  out.spectrum.values.reserve(8);
  for (const auto& s : spectrum_series_table()) {
    out.spectrum.values.push_back(s.evaluate_exact(delta).to_double());
  }
  Rational half(1, 2);
  out.outside_regime = delta > half || delta < -half;
  return out;
}

SeriesEvaluation eval_spectrum_series(double delta) {
  if (!std::isfinite(delta)) {
    throw std::domain_error("eval_spectrum_series: delta must be finite");
  }
  SeriesEvaluation out;
  out.spectrum.particle_count = 3;
  out.spectrum.values.reserve(8);
  for (const auto& s : spectrum_series_table()) {
    out.spectrum.values.push_back(s.evaluate(delta));
  }
  out.outside_regime = std::abs(delta) > 0.5;
  return out;
}

RationalSeries constraint_series(const polytope::LinearConstraint& constraint) {
  const auto& table = spectrum_series_table();
  RationalSeries acc = RationalSeries::constant(constraint.kappa0);
  for (int k = 0; k < constraint.dimension(); ++k) {
    if (constraint.kappa[k] == 0) continue;
    if (k >= 8) continue;  // lambda_9 onward starts at delta^12
    acc += Rational(constraint.kappa[k]) * table[k];
  }
  return acc;
}

int hierarchy_exponent(int k) {
  if (k < 4 || k > 8) {
    throw std::out_of_range("hierarchy_exponent: k must be in [4, 8], got " +
                            std::to_string(k));
  }
  return std::max(4, 2 * k - 6);
}

nlohmann::json series_table_to_json() {
  nlohmann::json j = nlohmann::json::array();
  const auto& table = spectrum_series_table();
  for (int k = 0; k < 8; ++k) {
    nlohmann::json entry;
    entry["occupation"] = k + 1;
    entry["coefficients"] = nlohmann::json::array();
    for (int e = 0; e <= RationalSeries::kMaxExponent; e += 2) {
      const Rational& c = table[k].coefficient(e);
      entry["coefficients"].push_back({
          {"exponent", e},
          {"num", c.num()},
          {"den", c.den()},
      });
    }
    j.push_back(std::move(entry));
  }
  return j;
}

}  // namespace pinning::series
