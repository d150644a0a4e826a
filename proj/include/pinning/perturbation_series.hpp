#pragma once

#include <array>

#include <nlohmann/json_fwd.hpp>

#include "pinning/pauli_polytope.hpp"
#include "pinning/rational_series.hpp"
#include "pinning/spectrum.hpp"

namespace pinning::series {

/// Weak-coupling expansions of the eight leading natural occupation numbers
/// for three harmonically coupled fermions, as exact rational series in the
/// coupling parameter delta through order delta^8. Entry k-1 holds the
/// series of lambda_k. The degenerate perturbation theory behind these
/// produces only even powers. Entry 7 (lambda_8) is identically zero at this
/// order; its true leading term is of order delta^10.
const std::array<RationalSeries, 8>& spectrum_series_table();

/// Result of evaluating the table at one coupling value. `outside_regime`
/// flags |delta| > 1/2, where the truncated series stops being trustworthy;
/// the values are still returned. The eight series sum to the particle count
/// exactly, order by order, so the evaluated values always carry trace 3
/// regardless of delta.
struct SeriesEvaluation {
  Spectrum spectrum;
  bool outside_regime = false;
};

/// Exact path: every intermediate is rational, each value rounds to double
/// exactly once at the end.
SeriesEvaluation eval_spectrum_series(const Rational& delta);

/// Floating-point convenience path for plots and sweeps; coefficients are
/// rounded once and a Horner recursion runs in doubles.
SeriesEvaluation eval_spectrum_series(double delta);

/// Substitutes the spectrum series into a linear constraint, exactly:
/// kappa0 + sum_k kappa_k * (series of lambda_k). Occupations beyond the
/// eighth contribute nothing at this order (their leading terms start at
/// delta^12), so constraints of any dimension are accepted.
RationalSeries constraint_series(const polytope::LinearConstraint& constraint);

/// Leading power of delta in lambda_k for k in [4, 8]: max(4, 2k - 6).
/// This is the decay hierarchy the solver must reproduce.
int hierarchy_exponent(int k);

/// The full table as JSON, one object per occupation, coefficients as exact
/// numerator/denominator integer pairs keyed by exponent.
nlohmann::json series_table_to_json();

}  // namespace pinning::series
