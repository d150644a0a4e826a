#include "pinning/harmonic_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pinning::model {

void ModelParams::validate() const {
  if (particle_count != 2 && particle_count != 3) {
    throw std::domain_error("ModelParams: particle count must be 2 or 3, got " +
                            std::to_string(particle_count));
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::domain_error("ModelParams: mass must be positive and finite");
  }
  if (!(trap_frequency > 0.0) || !std::isfinite(trap_frequency)) {
    throw std::domain_error("ModelParams: trap frequency must be positive and finite");
  }
  if (!std::isfinite(pair_coupling)) {
    throw std::domain_error("ModelParams: pair coupling must be finite");
  }
  double stiffness = 1.0 + particle_count * pair_coupling /
                               (mass * trap_frequency * trap_frequency);
  if (!(stiffness > 0.0)) {
    throw std::domain_error(
        "ModelParams: coupling too attractive, relative modes unbound "
        "(1 + N*D/(m*omega^2) must stay positive)");
  }
}

LengthScales delta_from_params(const ModelParams& params) {
  params.validate();
  double stiffness = 1.0 + params.particle_count * params.pair_coupling /
                               (params.mass * params.trap_frequency *
                                params.trap_frequency);
  LengthScales s;
  s.l = 1.0 / std::sqrt(params.mass * params.trap_frequency);
  // The relative-motion frequency is omega * sqrt(stiffness); its length
  // scale shrinks (grows) by the fourth root for repulsive (attractive)
  // effective pair springs.
  s.l_tilde = s.l * std::pow(stiffness, -0.25);
  s.delta = 0.25 * std::log(stiffness);
  return s;
}

ModelParams params_for_delta(double delta, int particle_count, double mass,
                             double trap_frequency) {
  if (!std::isfinite(delta)) {
    throw std::domain_error("params_for_delta: delta must be finite");
  }
  ModelParams p;
  p.particle_count = particle_count;
  p.mass = mass;
  p.trap_frequency = trap_frequency;
  p.pair_coupling = mass * trap_frequency * trap_frequency *
                    std::expm1(4.0 * delta) / particle_count;
  p.validate();
  return p;
}

double ground_state_amplitude(const ModelParams& params,
                              std::span<const double> x) {
  LengthScales s = delta_from_params(params);
  const int n = params.particle_count;
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("ground_state_amplitude: expected " +
                                std::to_string(n) + " coordinates, got " +
                                std::to_string(x.size()));
  }
  for (double xi : x) {
    if (!std::isfinite(xi)) {
      throw std::invalid_argument("ground_state_amplitude: non-finite coordinate");
    }
  }

  double vandermonde = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) vandermonde *= x[i] - x[j];
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (double xi : x) {
    sum += xi;
    sum_sq += xi * xi;
  }
  double inv_l2 = 1.0 / (s.l * s.l);
  double inv_lt2 = 1.0 / (s.l_tilde * s.l_tilde);
  // Quadratic form with the center of mass on scale l and the relative
  // modes on scale l_tilde; for l = l_tilde it collapses to the isotropic
  // oscillator Gaussian.
  double exponent =
      -0.5 / n * (inv_l2 - inv_lt2) * sum * sum - 0.5 * inv_lt2 * sum_sq;
  return vandermonde * std::exp(exponent);
}

}  // namespace pinning::model
