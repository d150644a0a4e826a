#pragma once

#include <Eigen/Dense>

namespace pinning::solver {

/// Gauss-Hermite quadrature rule of a given order on the standard weight
/// exp(-u^2). `nodes` are ascending and symmetric about zero; `weights` are
/// the classical weights for integrands with the weight factored out, and
/// `total_weights` fold the weight back in (w * exp(u^2)), which is the
/// convenient form when the integrand carries its own Gaussian decay. The
/// total weights are O(1) across the whole node range, so products of a few
/// of them never overflow.
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Eigen::VectorXd total_weights;
};

/// Computes the rule by Newton iteration on the orthonormal Hermite
/// recurrence. Nodes converge to machine precision; exact symmetry is
/// enforced by construction (each iteration solves for a positive node and
/// mirrors it). Throws std::invalid_argument for order < 1.
GaussHermiteRule gauss_hermite(int order);

/// The first `size` orthonormal Hermite functions phi_k at length scale b:
///   phi_k(x) = (pi b^2)^(-1/4) / sqrt(2^k k!) H_k(x/b) exp(-x^2/(2 b^2)),
/// evaluated through the normalized three-term recurrence with the Gaussian
/// folded in, so no factorials or large intermediates ever appear. These are
/// L2-orthonormal on the real line.
class HermiteBasis {
public:
  HermiteBasis(int size, double length_scale);

  int size() const { return size_; }
  double length_scale() const { return length_scale_; }

  /// phi_k(x) for a single point, 0 <= k < size().
  double value(int k, double x) const;

  /// Matrix of phi_k(x_j), shape size() x x.size().
  Eigen::MatrixXd values_at(const Eigen::VectorXd& x) const;

private:
  int size_;
  double length_scale_;
};

}  // namespace pinning::solver
