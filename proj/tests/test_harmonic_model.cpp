#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pinning/harmonic_model.hpp"
#include "pinning/rng.hpp"

using namespace pinning::model;

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());

  p.particle_count = 4;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.particle_count = 2;
  CHECK_NOTHROW(p.validate());

  p.mass = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.mass = 1.0;

  p.trap_frequency = -1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.trap_frequency = 1.0;

  // Attractive coupling at the collapse threshold 1 + N*D/(m w^2) = 0.
  p.pair_coupling = -0.5;  // N = 2: stiffness hits exactly zero
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.pair_coupling = -0.49;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("coupling parameter from model parameters") {
  SUBCASE("uncoupled model has equal scales and delta zero") {
    ModelParams p;  // N = 3, D = 0
    LengthScales s = delta_from_params(p);
    CHECK(s.l == 1.0);
    CHECK(s.l_tilde == 1.0);
    CHECK(s.delta == 0.0);
  }

  SUBCASE("hand value: N=3, unit trap, D=1") {
    ModelParams p;
    p.pair_coupling = 1.0;
    LengthScales s = delta_from_params(p);
    // stiffness 4, delta = ln(4)/4
    CHECK(s.delta == doctest::Approx(std::log(4.0) / 4.0).epsilon(1e-15));
    CHECK(s.l_tilde == doctest::Approx(std::pow(4.0, -0.25)).epsilon(1e-15));
  }

  SUBCASE("sign of delta tracks sign of the coupling") {
    ModelParams p;
    p.pair_coupling = 0.8;
    CHECK(delta_from_params(p).delta > 0.0);
    CHECK(delta_from_params(p).l_tilde < delta_from_params(p).l);
    p.pair_coupling = -0.2;
    CHECK(delta_from_params(p).delta < 0.0);
    CHECK(delta_from_params(p).l_tilde > delta_from_params(p).l);
  }

  SUBCASE("mass and frequency enter through m*w^2 and sqrt(m*w)") {
    ModelParams p;
    p.mass = 2.0;
    p.trap_frequency = 3.0;
    p.pair_coupling = 6.0;  // N*D/(m w^2) = 1, stiffness 2
    LengthScales s = delta_from_params(p);
    CHECK(s.l == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));
    CHECK(s.delta == doctest::Approx(0.25 * std::log(2.0)).epsilon(1e-15));
  }
}

TEST_CASE("delta round-trips to the coupling at relative 1e-12") {
  for (double delta : {-0.5, -0.3, -0.05, 0.0, 0.02, 0.2, 0.5}) {
    ModelParams p = params_for_delta(delta);
    CHECK(delta_from_params(p).delta == doctest::Approx(delta).epsilon(1e-12));
  }
  // And the other direction, starting from a coupling.
  for (double coupling : {-0.3, 0.0, 0.7, 3.0}) {
    ModelParams p;
    p.pair_coupling = coupling;
    double delta = delta_from_params(p).delta;
    ModelParams q = params_for_delta(delta, p.particle_count, p.mass,
                                     p.trap_frequency);
    CHECK(q.pair_coupling ==
          doctest::Approx(coupling).epsilon(1e-12).scale(1.0));
  }
  CHECK_THROWS_AS(params_for_delta(std::nan("")), std::domain_error);
}

TEST_CASE("ground-state amplitude hand values") {
  ModelParams p;  // N = 3, uncoupled

  SUBCASE("frozen example at the symmetric configuration") {
    std::array<double, 3> x = {0.5, 0.0, -0.5};
    // Vandermonde 0.25, Gaussian exp(-0.25)
    CHECK(ground_state_amplitude(p, x) ==
          doctest::Approx(0.19470019576785122).epsilon(1e-14));
  }

  SUBCASE("uncoupled Gaussian factor is the isotropic oscillator") {
    std::array<double, 3> x = {1.0, 0.0, -1.0};
    CHECK(ground_state_amplitude(p, x) ==
          doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  }

  SUBCASE("two-particle arity") {
    ModelParams q;
    q.particle_count = 2;
    std::array<double, 2> x = {0.7, -0.2};
    CHECK(ground_state_amplitude(q, x) ==
          doctest::Approx(0.9 * std::exp(-0.5 * (0.49 + 0.04))).epsilon(1e-14));
  }

  SUBCASE("input rejection") {
    std::array<double, 2> wrong_arity = {0.1, 0.2};
    CHECK_THROWS_AS(ground_state_amplitude(p, wrong_arity),
                    std::invalid_argument);
    std::array<double, 3> bad = {0.1, std::nan(""), 0.0};
    CHECK_THROWS_AS(ground_state_amplitude(p, bad), std::invalid_argument);
  }
}

TEST_CASE("amplitude is antisymmetric under coordinate exchange") {
  pinning::SplitMix64 rng(0xA11CE5EEDull);
  int checked = 0;
  for (int sample = 0; sample < 1000; ++sample) {
    int n = (sample % 2 == 0) ? 3 : 2;
    double delta = (rng.uniform_open01() - 0.5);  // in [-0.5, 0.5]
    double mass = 0.5 + 1.5 * rng.uniform_open01();
    double freq = 0.5 + 1.5 * rng.uniform_open01();
    ModelParams p = params_for_delta(delta, n, mass, freq);

    std::vector<double> x(n);
    for (double& xi : x) xi = 6.0 * (rng.uniform_open01() - 0.5);
    double direct = ground_state_amplitude(p, x);

    int i = static_cast<int>(rng.next() % n);
    int j = static_cast<int>(rng.next() % n);
    if (i == j) j = (j + 1) % n;
    std::vector<double> swapped = x;
    std::swap(swapped[i], swapped[j]);
    double exchanged = ground_state_amplitude(p, swapped);

    CHECK(std::abs(direct + exchanged) <=
          1e-14 * std::max(1.0, std::abs(direct)));
    ++checked;
  }
  CHECK(checked == 1000);
}
