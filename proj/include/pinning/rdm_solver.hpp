#pragma once

#include <optional>

#include <Eigen/Dense>

#include "pinning/harmonic_model.hpp"
#include "pinning/hermite_basis.hpp"
#include "pinning/spectrum.hpp"

namespace pinning::solver {

/// Discretization knobs for the one-particle reduced density matrix build.
/// basis_size is the number of Hermite modes kept, quadrature_order the
/// number of Gauss-Hermite nodes per spatial dimension. The quadrature must
/// oversample the basis (order >= 2 * size) or the discrete Gram loses
/// orthonormality. When basis_length_scale is unset the geometric mean
/// sqrt(l * l_tilde) of the two model scales is used, which treats the two
/// coupling signs symmetrically.
struct SolverConfig {
  int basis_size = 24;
  int quadrature_order = 96;
  std::optional<double> basis_length_scale;
  double trace_tolerance = 1e-8;
  bool probe_convergence = true;

  void validate() const;
  double resolved_length_scale(const model::ModelParams& params) const;
};

/// Gram matrix of the one-particle reduced density operator in the Hermite
/// basis, G[i][j] = <phi_i| rho_1 |phi_j>, together with the inputs that
/// produced it and the quadrature-convergence diagnostics. The matrix is
/// exactly symmetric (symmetrized after assembly) and its trace carries the
/// wave-function normalization, so eigenvalues are rescaled downstream
/// rather than here.
struct RdmGram {
  Eigen::MatrixXd matrix;
  model::ModelParams params;
  SolverConfig config;
  double trace_raw = 0.0;
  double trace_drift = 0.0;
  bool converged = true;
};

/// Assembles the Gram matrix by tensor-product Gauss-Hermite quadrature.
/// The integrand factorizes: with one fixed particle integrated against the
/// basis, g_i(rest) = sum_q W_q phi_i(X_q) Psi(X_q, rest), and
/// G = N * sum_rest W(rest) g(rest) g(rest)^T. That brings the cost to
/// O(M Q^N + M^2 Q^(N-1)) instead of the naive O(M^2 Q^N). Summation order
/// is fixed, so results are bit-stable across runs and thread counts.
/// When probe_convergence is set, the trace is recomputed at
/// quadrature_order + 16 and the relative drift is compared against
/// trace_tolerance to set `converged`.
RdmGram rdm_gram(const model::ModelParams& params, const SolverConfig& config);

/// Natural occupation numbers of a Gram matrix: eigenvalues sorted in
/// descending order, tiny negative values (within -1e-10 * trace) clipped to
/// zero, then rescaled so the sum equals the particle count. Eigenvalues
/// more negative than the clip window mean the discretization failed and are
/// rejected with std::domain_error.
Spectrum natural_occupations(const RdmGram& gram);

/// Convenience wrapper: build the Gram matrix and diagonalize in one call.
Spectrum natural_occupations(const model::ModelParams& params,
                             const SolverConfig& config);

}  // namespace pinning::solver
