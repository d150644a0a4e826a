#pragma once

#include <span>

namespace pinning::model {

/// Parameters of N identical fermions in a one-dimensional harmonic trap of
/// frequency omega, coupled pairwise by a harmonic interaction of strength D
/// (D > 0 attractive spring between pairs, D < 0 repulsive). Units use
/// hbar = 1 throughout.
struct ModelParams {
  int particle_count = 3;
  double mass = 1.0;
  double trap_frequency = 1.0;
  double pair_coupling = 0.0;

  /// Throws std::domain_error unless N is 2 or 3, mass and frequency are
  /// positive, and the coupling keeps the relative modes bound,
  /// i.e. 1 + N*D/(m*omega^2) > 0.
  void validate() const;
};

/// The two Gaussian length scales of the exact ground state and the coupling
/// parameter derived from their ratio. The center-of-mass mode lives on the
/// bare trap scale l, the relative modes on the dressed scale l_tilde, and
/// delta = ln(l / l_tilde) is the single number the occupation spectrum
/// depends on.
struct LengthScales {
  double l = 0.0;
  double l_tilde = 0.0;
  double delta = 0.0;
};

/// Computes l, l_tilde and delta = (1/4) ln(1 + N*D/(m*omega^2)).
/// Rejects invalid parameters via ModelParams::validate.
LengthScales delta_from_params(const ModelParams& params);

/// Inverse map: chooses the pair coupling D that realizes a requested delta
/// for the given trap, D = m*omega^2*(exp(4*delta) - 1)/N. Round-trips with
/// delta_from_params to relative 1e-12 or better.
ModelParams params_for_delta(double delta, int particle_count = 3,
                             double mass = 1.0, double trap_frequency = 1.0);

/// Unnormalized ground-state wave function at configuration x (one
/// coordinate per particle): the Vandermonde factor prod_{i<j}(x_i - x_j)
/// times a Gaussian whose center-of-mass width is l and relative width is
/// l_tilde. Antisymmetric under any exchange of coordinates by construction.
/// Rejects invalid params, wrong arity, and non-finite coordinates.
double ground_state_amplitude(const ModelParams& params,
                              std::span<const double> x);

}  // namespace pinning::model
