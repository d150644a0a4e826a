#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pinning/hermite_basis.hpp"

using namespace pinning::solver;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("quadrature rule basics") {
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);

  SUBCASE("order one is the midpoint rule") {
    GaussHermiteRule r = gauss_hermite(1);
    CHECK(r.nodes[0] == 0.0);
    CHECK(r.weights[0] == doctest::Approx(kSqrtPi).epsilon(1e-15));
  }

  SUBCASE("nodes are ascending and exactly mirror-symmetric") {
    for (int order : {7, 24, 96}) {
      GaussHermiteRule r = gauss_hermite(order);
      for (int i = 0; i + 1 < order; ++i) CHECK(r.nodes[i] < r.nodes[i + 1]);
      for (int i = 0; i < order; ++i) {
        CHECK(r.nodes[i] == -r.nodes[order - 1 - i]);
        CHECK(r.weights[i] == r.weights[order - 1 - i]);
      }
    }
  }

  SUBCASE("Gaussian moments are reproduced") {
    // integral of u^k exp(-u^2): sqrt(pi) * (k-1)!! / 2^(k/2) for even k.
    GaussHermiteRule r = gauss_hermite(12);
    double m0 = 0, m2 = 0, m4 = 0, m6 = 0;
    for (int i = 0; i < 12; ++i) {
      double u = r.nodes[i];
      double w = r.weights[i];
      m0 += w;
      m2 += w * u * u;
      m4 += w * u * u * u * u;
      m6 += w * u * u * u * u * u * u;
    }
    CHECK(m0 == doctest::Approx(kSqrtPi).epsilon(1e-14));
    CHECK(m2 == doctest::Approx(kSqrtPi / 2.0).epsilon(1e-14));
    CHECK(m4 == doctest::Approx(kSqrtPi * 3.0 / 4.0).epsilon(1e-14));
    CHECK(m6 == doctest::Approx(kSqrtPi * 15.0 / 8.0).epsilon(1e-14));
  }

  SUBCASE("total weights stay order one across the node range") {
    GaussHermiteRule r = gauss_hermite(128);
    for (int i = 0; i < 128; ++i) {
      CHECK(r.total_weights[i] > 0.0);
      CHECK(r.total_weights[i] < 1.0);
    }
  }
}

TEST_CASE("basis construction guards") {
  CHECK_THROWS_AS(HermiteBasis(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(HermiteBasis(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(HermiteBasis(4, -2.0), std::invalid_argument);
}

TEST_CASE("basis values") {
  SUBCASE("ground mode at the origin") {
    for (double b : {0.5, 1.0, 2.0}) {
      HermiteBasis basis(1, b);
      CHECK(basis.value(0, 0.0) ==
            doctest::Approx(std::pow(M_PI * b * b, -0.25)).epsilon(1e-15));
    }
  }

  SUBCASE("parity is exact in floating point") {
    HermiteBasis basis(12, 0.8);
    for (int k = 0; k < 12; ++k) {
      for (double x : {0.1, 0.73, 1.9, 3.4}) {
        double plus = basis.value(k, x);
        double minus = basis.value(k, -x);
        CHECK(minus == (k % 2 == 0 ? plus : -plus));
      }
    }
  }

  SUBCASE("matrix evaluation matches pointwise evaluation") {
    HermiteBasis basis(8, 1.3);
    Eigen::VectorXd x(5);
    x << -2.0, -0.4, 0.0, 0.9, 2.7;
    Eigen::MatrixXd vals = basis.values_at(x);
    REQUIRE(vals.rows() == 8);
    REQUIRE(vals.cols() == 5);
    for (int k = 0; k < 8; ++k) {
      for (int c = 0; c < 5; ++c) CHECK(vals(k, c) == basis.value(k, x[c]));
    }
  }

  SUBCASE("index range is enforced") {
    HermiteBasis basis(4, 1.0);
    CHECK_THROWS_AS(basis.value(4, 0.0), std::out_of_range);
    CHECK_THROWS_AS(basis.value(-1, 0.0), std::out_of_range);
  }
}

TEST_CASE("discrete orthonormality under the paired quadrature") {
  // The basis functions carry their own Gaussian; integrating phi_i phi_j
  // with the total weights at the basis scale must give the identity. This
  // is the property the density-matrix assembly leans on.
  const int m = 24;
  const int q = 96;
  const double b = 0.85;
  GaussHermiteRule rule = gauss_hermite(q);
  HermiteBasis basis(m, b);
  Eigen::VectorXd x = b * rule.nodes;
  Eigen::VectorXd w = b * rule.total_weights;
  Eigen::MatrixXd vals = basis.values_at(x);
  Eigen::MatrixXd gram = vals * w.asDiagonal() * vals.transpose();
  double worst = (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  CHECK(worst <= 1e-12);
}
