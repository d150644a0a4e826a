#include "pinning/rdm_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pinning::solver {

namespace {

// Ground-state amplitude with the length scales and quadratic-form
// coefficients precomputed once per Gram build; the validated public
// entry point in harmonic_model re-derives them on every call, which is
// too slow for Q^3 evaluations.
struct AmplitudeEval {
  double sum_coeff;    // multiplies (sum x_i)^2 in the exponent
  double sq_coeff;     // multiplies sum x_i^2 in the exponent

  explicit AmplitudeEval(const model::LengthScales& s, int n) {
    double inv_l2 = 1.0 / (s.l * s.l);
    double inv_lt2 = 1.0 / (s.l_tilde * s.l_tilde);
    sum_coeff = -0.5 / n * (inv_l2 - inv_lt2);
    sq_coeff = -0.5 * inv_lt2;
  }

  double pair(double x, double y) const {
    double sum = x + y;
    return (x - y) * std::exp(sum_coeff * sum * sum + sq_coeff * (x * x + y * y));
  }

  double triple(double x, double y, double z) const {
    double sum = x + y + z;
    double vdm = (x - y) * (x - z) * (y - z);
    return vdm * std::exp(sum_coeff * sum * sum +
                          sq_coeff * (x * x + y * y + z * z));
  }
};

// Single-order Gram assembly; the caller handles symmetrization and the
// convergence probe.
Eigen::MatrixXd gram_at_order(const model::ModelParams& params,
                              const model::LengthScales& scales, int basis_size,
                              double length_scale, int quad_order) {
  const int m = basis_size;
  const int q = quad_order;
  const int n = params.particle_count;

  GaussHermiteRule rule = gauss_hermite(q);
  // Physical nodes and weights at the basis length scale. The total weights
  // absorb both the rule's Gaussian and the substitution Jacobian.
  Eigen::VectorXd x = length_scale * rule.nodes;
  Eigen::VectorXd w = length_scale * rule.total_weights;

  HermiteBasis basis(m, length_scale);
  Eigen::MatrixXd bw = basis.values_at(x) * w.asDiagonal();  // m x q

  AmplitudeEval amp(scales, n);

  if (n == 2) {
    Eigen::MatrixXd psi(q, q);
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) psi(a, b) = amp.pair(x[a], x[b]);
    }
    Eigen::MatrixXd g = bw * psi;  // m x q, g_i(y) with first particle traced
    return double(n) * (g * w.asDiagonal() * g.transpose());
  }

  // n == 3: flatten the last two coordinates into one index of size q^2.
  // Column-major fill, innermost loop over the traced coordinate.
  Eigen::MatrixXd psi(q, q * q);
  for (int b = 0; b < q; ++b) {
    double xb = x[b];
    for (int c = 0; c < q; ++c) {
      double xc = x[c];
      double* col = &psi(0, b * q + c);
      for (int a = 0; a < q; ++a) col[a] = amp.triple(x[a], xb, xc);
    }
  }
  Eigen::MatrixXd g = bw * psi;  // m x q^2

  Eigen::VectorXd w2(q * q);
  for (int b = 0; b < q; ++b) {
    for (int c = 0; c < q; ++c) w2[b * q + c] = w[b] * w[c];
  }
  return double(n) * (g * w2.asDiagonal() * g.transpose());
}

}  // namespace

void SolverConfig::validate() const {
  if (basis_size < 1) {
    throw std::domain_error("SolverConfig: basis size must be >= 1");
  }
  if (quadrature_order < 2 * basis_size) {
    throw std::domain_error(
        "SolverConfig: quadrature order must be at least twice the basis size "
        "(got order " + std::to_string(quadrature_order) + " for size " +
        std::to_string(basis_size) + ")");
  }
  if (basis_length_scale && (!(*basis_length_scale > 0.0) ||
                             !std::isfinite(*basis_length_scale))) {
    throw std::domain_error("SolverConfig: basis length scale must be positive");
  }
  if (!(trace_tolerance > 0.0)) {
    throw std::domain_error("SolverConfig: trace tolerance must be positive");
  }
}

double SolverConfig::resolved_length_scale(const model::ModelParams& params) const {
  if (basis_length_scale) return *basis_length_scale;
  model::LengthScales s = model::delta_from_params(params);
  return std::sqrt(s.l * s.l_tilde);
}

RdmGram rdm_gram(const model::ModelParams& params, const SolverConfig& config) {
  params.validate();
  config.validate();
  model::LengthScales scales = model::delta_from_params(params);
  double b = config.resolved_length_scale(params);

  RdmGram out;
  out.params = params;
  out.config = config;

  Eigen::MatrixXd g = gram_at_order(params, scales, config.basis_size, b,
                                    config.quadrature_order);
  out.matrix = 0.5 * (g + g.transpose());
  out.trace_raw = out.matrix.trace();
  if (!(out.trace_raw > 0.0) || !std::isfinite(out.trace_raw)) {
    throw std::runtime_error("rdm_gram: assembled trace is not positive");
  }

  if (config.probe_convergence) {
    Eigen::MatrixXd probe = gram_at_order(params, scales, config.basis_size, b,
                                          config.quadrature_order + 16);
    double probe_trace = probe.trace();
    out.trace_drift = std::abs(probe_trace / out.trace_raw - 1.0);
    out.converged = out.trace_drift <= config.trace_tolerance;
  }
  return out;
}

Spectrum natural_occupations(const RdmGram& gram) {
  if (gram.matrix.rows() != gram.matrix.cols() || gram.matrix.rows() == 0) {
    throw std::invalid_argument("natural_occupations: Gram matrix must be square");
  }
  const int n = gram.params.particle_count;
  double trace = gram.matrix.trace();
  if (!(trace > 0.0)) {
    throw std::domain_error("natural_occupations: Gram trace must be positive");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.matrix,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("natural_occupations: eigensolver failed");
  }

  const double clip_window = 1e-10 * trace;
  Spectrum spec;
  spec.particle_count = n;
  spec.values.resize(gram.matrix.rows());
  // Eigen returns ascending eigenvalues; store descending.
  for (Eigen::Index i = 0; i < gram.matrix.rows(); ++i) {
    double v = es.eigenvalues()[gram.matrix.rows() - 1 - i];
    if (v < -clip_window) {
      throw std::domain_error(
          "natural_occupations: eigenvalue " + std::to_string(v) +
          " below the numerical-noise window, discretization is unreliable");
    }
    spec.values[i] = v < 0.0 ? 0.0 : v;
  }

  double sum = spec.sum();
  if (!(sum > 0.0)) {
    throw std::domain_error("natural_occupations: eigenvalue sum must be positive");
  }
  double scale = double(n) / sum;
  for (double& v : spec.values) v *= scale;
  return spec;
}

Spectrum natural_occupations(const model::ModelParams& params,
                             const SolverConfig& config) {
  return natural_occupations(rdm_gram(params, config));
}

}  // namespace pinning::solver
