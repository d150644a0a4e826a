#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pinning/spectrum.hpp"

namespace pinning::polytope {

/// One generalized Pauli constraint kappa0 + sum_k kappa_k * lambda_k >= 0
/// with integer coefficients. Construction canonicalizes: coefficients are
/// divided by their common gcd (the constraint is only defined up to a
/// positive factor) and an all-zero row is rejected.
struct LinearConstraint {
  std::string label;
  std::int64_t kappa0 = 0;
  std::vector<std::int64_t> kappa;

  LinearConstraint() = default;
  LinearConstraint(std::string label, std::int64_t kappa0,
                   std::vector<std::int64_t> kappa);

  int dimension() const { return static_cast<int>(kappa.size()); }

  /// kappa0 + sum kappa_k lambda_k on exactly dimension() occupations.
  double evaluate(std::span<const double> lambda) const;

  /// Euclidean norm of the kappa vector (kappa0 excluded); dividing the raw
  /// value by this gives the geometric distance to the hyperplane.
  double kappa_norm() const;
};

/// All constraints of one (N, d) setting, each of length d.
struct ConstraintSet {
  int particle_count = 0;
  int dimension = 0;
  std::vector<LinearConstraint> constraints;

  ConstraintSet() = default;
  ConstraintSet(int particle_count, int dimension,
                std::vector<LinearConstraint> constraints);
};

/// Borland-Dennis setting, three fermions in six orbitals. The three
/// equalities lambda_k + lambda_{7-k} = 1 are carried as inequality pairs
/// collapsed to their binding direction (1 - lambda_k - lambda_{7-k} >= 0;
/// spectra that sum to N saturate them automatically), plus the single
/// proper facet lambda_5 + lambda_6 - lambda_4 >= 0.
const ConstraintSet& borland_dennis_set();

/// Three fermions in seven orbitals: the four facet constraints
///   2 - (l1 + l2 + l5 + l6), 2 - (l1 + l3 + l4 + l6),
///   2 - (l2 + l3 + l4 + l5), 2 - (l1 + l2 + l4 + l7), each >= 0.
const ConstraintSet& three_seven_set();

/// The six-orbital facet in its sum form 2 - (lambda_1 + lambda_2 +
/// lambda_4) >= 0, equivalent to the difference form on the Borland-Dennis
/// plane. Useful for restriction checks.
LinearConstraint d6_sum_form();

/// Leading terms of the infinite-family constraint
/// 2 - (l1 + l2 + l4 + l7 + l11 + l16 + ...) truncated to dimension d.
LinearConstraint harmonic_family_prefix(int d);

/// Report-style validity check: descending order, entries in [0, 1],
/// sum equal to the particle count, all within tol.
struct ValidityReport {
  bool ordered = false;
  bool in_range = false;
  bool normalized = false;
  double max_order_violation = 0.0;
  double max_range_violation = 0.0;
  double trace_error = 0.0;

  bool valid() const { return ordered && in_range && normalized; }
};

ValidityReport validate_spectrum(const Spectrum& spectrum, int dimension,
                                 double tol = 1e-10);

/// Constraint values on a spectrum truncated or zero-padded to the set's
/// dimension. `value` is the raw kappa0 + kappa . lambda, `euclidean` the
/// same divided by |kappa|.
struct FacetDistance {
  std::string label;
  double value = 0.0;
  double euclidean = 0.0;
};

std::vector<FacetDistance> evaluate_distances(const Spectrum& spectrum,
                                              const ConstraintSet& set);

/// Coordinates of a Borland-Dennis spectrum in the three-dimensional
/// polytope slice (lambda_4, lambda_5, lambda_6), with the worst residual of
/// the three sum rules lambda_k + lambda_{7-k} = 1. Residuals above 0.01
/// mean the spectrum is not Borland-Dennis-like at all and are rejected.
struct PolytopeCoords {
  std::array<double, 3> coords{};
  double residual = 0.0;
};

PolytopeCoords reduce_to_polytope_coords(const Spectrum& spectrum);

/// Vertices of the (lambda_4, lambda_5, lambda_6) slice: the Slater point,
/// and the three extremal correlated points.
const std::array<std::array<double, 3>, 4>& borland_dennis_vertices();

/// Pads a spectrum with zeros up to target_dimension (no-op if already that
/// long; rejects targets shorter than the spectrum).
Spectrum embed_with_zeros(const Spectrum& spectrum, int target_dimension);

/// Restriction of a constraint to the first d coefficients, with the
/// dropped tail reported. The restriction is taken verbatim (no rescaling),
/// so coefficient-level comparisons against lower-dimensional forms are
/// meaningful.
struct RestrictedConstraint {
  LinearConstraint constraint;
  std::vector<std::int64_t> dropped_tail;
};

RestrictedConstraint restrict_constraint(const LinearConstraint& constraint,
                                         int dimension);

/// JSON round-trip with exact integer coefficients:
/// { "N": .., "d": .., "constraints": [ {"label", "kappa0", "kappa"} ] }.
nlohmann::json to_json(const ConstraintSet& set);
ConstraintSet constraint_set_from_json(const nlohmann::json& j);

}  // namespace pinning::polytope
