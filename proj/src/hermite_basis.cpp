#include "pinning/hermite_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pinning::solver {

namespace {

constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^(-1/4)

// Orthonormal Hermite polynomial value and derivative data at z for degree n:
// returns p_n(z) and p_{n-1}(z) through the stable normalized recurrence
//   p_{j+1} = z sqrt(2/(j+1)) p_j - sqrt(j/(j+1)) p_{j-1},  p_0 = pi^(-1/4).
struct RecurrencePair {
  double p;       // p_n(z)
  double p_prev;  // p_{n-1}(z)
};

RecurrencePair orthonormal_hermite(int n, double z) {
  double p1 = kPiQuarterInv;
  double p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    double p3 = p2;
    p2 = p1;
    p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
  }
  return {p1, p2};
}

}  // namespace

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1) {
    throw std::invalid_argument("gauss_hermite: order must be >= 1, got " +
                                std::to_string(order));
  }
  const int n = order;
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.total_weights.resize(n);

  const int half = (n + 1) / 2;
  const int max_iter = 64;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses: asymptotic for the two outermost roots, then a
    // stepping formula marching inward (standard for this rule family).
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[n - 1];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[n - 2];
    } else {
      z = 2.0 * z - rule.nodes[n - i + 1];
    }

    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
      auto [p1, p2] = orthonormal_hermite(n, z);
      // Derivative of the orthonormal polynomial: p_n' = sqrt(2n) p_{n-1}.
      pp = std::sqrt(2.0 * n) * p2;
      double z_old = z;
      z = z_old - p1 / pp;
      if (std::abs(z - z_old) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw std::runtime_error("gauss_hermite: Newton iteration stalled at order " +
                               std::to_string(order));
    }
    // One polishing step after convergence tightens the last bit.
    auto [p1, p2] = orthonormal_hermite(n, z);
    pp = std::sqrt(2.0 * n) * p2;
    z -= p1 / pp;
    pp = std::sqrt(2.0 * n) * orthonormal_hermite(n, z).p_prev;

    double w = 2.0 / (pp * pp);
    rule.nodes[n - 1 - i] = z;
    rule.nodes[i] = -z;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[half - 1] = 0.0;  // exact center for odd orders

  for (int q = 0; q < n; ++q) {
    double u = rule.nodes[q];
    rule.total_weights[q] = rule.weights[q] * std::exp(u * u);
  }
  return rule;
}

HermiteBasis::HermiteBasis(int size, double length_scale)
    : size_(size), length_scale_(length_scale) {
  if (size < 1) {
    throw std::invalid_argument("HermiteBasis: size must be >= 1");
  }
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw std::invalid_argument("HermiteBasis: length scale must be positive");
  }
}

double HermiteBasis::value(int k, double x) const {
  if (k < 0 || k >= size_) {
    throw std::out_of_range("HermiteBasis::value: index out of range");
  }
  double u = x / length_scale_;
  // Gaussian folded into phi_0 keeps every intermediate bounded by the
  // function values themselves; extreme |u| underflows gracefully to zero.
  double phi0 = kPiQuarterInv / std::sqrt(length_scale_) * std::exp(-0.5 * u * u);
  if (k == 0) return phi0;
  double pm1 = phi0;
  double pm2 = 0.0;
  double p = phi0;
  for (int j = 1; j <= k; ++j) {
    p = u * std::sqrt(2.0 / j) * pm1 - std::sqrt(double(j - 1) / j) * pm2;
    pm2 = pm1;
    pm1 = p;
  }
  return p;
}

Eigen::MatrixXd HermiteBasis::values_at(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out(size_, x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    double u = x[c] / length_scale_;
    double phi0 = kPiQuarterInv / std::sqrt(length_scale_) * std::exp(-0.5 * u * u);
    out(0, c) = phi0;
    if (size_ == 1) continue;
    double pm2 = 0.0;
    double pm1 = phi0;
    for (int j = 1; j < size_; ++j) {
      double p = u * std::sqrt(2.0 / j) * pm1 - std::sqrt(double(j - 1) / j) * pm2;
      out(j, c) = p;
      pm2 = pm1;
      pm1 = p;
    }
  }
  return out;
}

}  // namespace pinning::solver
