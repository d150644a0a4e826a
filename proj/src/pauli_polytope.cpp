#include "pinning/pauli_polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pinning::polytope {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

LinearConstraint::LinearConstraint(std::string label_in, std::int64_t kappa0_in,
                                   std::vector<std::int64_t> kappa_in)
    : label(std::move(label_in)), kappa0(kappa0_in), kappa(std::move(kappa_in)) {
  std::int64_t g = std::abs(kappa0);
  for (std::int64_t k : kappa) g = gcd64(g, k);
  if (g == 0) {
    throw std::invalid_argument("LinearConstraint '" + label +
                                "': all coefficients are zero");
  }
  if (g > 1) {
    kappa0 /= g;
    for (std::int64_t& k : kappa) k /= g;
  }
}

double LinearConstraint::evaluate(std::span<const double> lambda) const {
  if (lambda.size() != kappa.size()) {
    throw std::invalid_argument("LinearConstraint '" + label +
                                "': expected " + std::to_string(kappa.size()) +
                                " occupations, got " +
                                std::to_string(lambda.size()));
  }
  double acc = static_cast<double>(kappa0);
  for (std::size_t k = 0; k < kappa.size(); ++k) {
    acc += static_cast<double>(kappa[k]) * lambda[k];
  }
  return acc;
}

double LinearConstraint::kappa_norm() const {
  double s = 0.0;
  for (std::int64_t k : kappa) s += double(k) * double(k);
  return std::sqrt(s);
}

ConstraintSet::ConstraintSet(int particle_count_in, int dimension_in,
                             std::vector<LinearConstraint> constraints_in)
    : particle_count(particle_count_in),
      dimension(dimension_in),
      constraints(std::move(constraints_in)) {
  if (particle_count < 1 || dimension < particle_count) {
    throw std::invalid_argument("ConstraintSet: need 1 <= N <= d");
  }
  for (const auto& c : constraints) {
    if (c.dimension() != dimension) {
      throw std::invalid_argument("ConstraintSet: constraint '" + c.label +
                                  "' has wrong dimension");
    }
  }
}

const ConstraintSet& borland_dennis_set() {
  static const ConstraintSet set(
      3, 6,
      {
          LinearConstraint("BD1", 1, {-1, 0, 0, 0, 0, -1}),
          LinearConstraint("BD2", 1, {0, -1, 0, 0, -1, 0}),
          LinearConstraint("BD3", 1, {0, 0, -1, -1, 0, 0}),
          LinearConstraint("D6", 0, {0, 0, 0, -1, 1, 1}),
      });
  return set;
}

const ConstraintSet& three_seven_set() {
  static const ConstraintSet set(
      3, 7,
      {
          LinearConstraint("D7_1", 2, {-1, -1, 0, 0, -1, -1, 0}),
          LinearConstraint("D7_2", 2, {-1, 0, -1, -1, 0, -1, 0}),
          LinearConstraint("D7_3", 2, {0, -1, -1, -1, -1, 0, 0}),
          LinearConstraint("D7_4", 2, {-1, -1, 0, -1, 0, 0, -1}),
      });
  return set;
}

LinearConstraint d6_sum_form() {
  return LinearConstraint("D6_sum", 2, {-1, -1, 0, -1, 0, 0});
}

LinearConstraint harmonic_family_prefix(int d) {
  if (d < 1) {
    throw std::invalid_argument("harmonic_family_prefix: dimension must be >= 1");
  }
  // Support indices 1, 2, 4, 7, 11, 16, ...: gaps grow by one each step.
  std::vector<std::int64_t> kappa(d, 0);
  int idx = 1;
  int gap = 1;
  while (idx <= d) {
    kappa[idx - 1] = -1;
    if (idx == 1) {
      idx = 2;
    } else {
      ++gap;
      idx += gap;
    }
  }
  return LinearConstraint("D_inf_prefix", 2, std::move(kappa));
}

ValidityReport validate_spectrum(const Spectrum& spectrum, int dimension,
                                 double tol) {
  // Spectra shorter than `dimension` are treated as zero-padded; at() does
  // exactly that, so no explicit padding is needed.
  ValidityReport r;
  double order_viol = 0.0;
  for (int k = 1; k < dimension; ++k) {
    order_viol = std::max(order_viol, spectrum.at(k + 1) - spectrum.at(k));
  }
  double range_viol = 0.0;
  for (int k = 1; k <= dimension; ++k) {
    double v = spectrum.at(k);
    range_viol = std::max(range_viol, std::max(-v, v - 1.0));
  }
  double sum = 0.0;
  for (int k = 1; k <= dimension; ++k) sum += spectrum.at(k);
  r.max_order_violation = std::max(order_viol, 0.0);
  r.max_range_violation = std::max(range_viol, 0.0);
  r.trace_error = std::abs(sum - spectrum.particle_count);
  r.ordered = order_viol <= tol;
  r.in_range = range_viol <= tol;
  r.normalized = r.trace_error <= tol;
  return r;
}

std::vector<FacetDistance> evaluate_distances(const Spectrum& spectrum,
                                              const ConstraintSet& set) {
  std::vector<double> lambda(set.dimension);
  for (int k = 1; k <= set.dimension; ++k) lambda[k - 1] = spectrum.at(k);
  std::vector<FacetDistance> out;
  out.reserve(set.constraints.size());
  for (const auto& c : set.constraints) {
    FacetDistance d;
    d.label = c.label;
    d.value = c.evaluate(lambda);
    d.euclidean = d.value / c.kappa_norm();
    out.push_back(std::move(d));
  }
  return out;
}

PolytopeCoords reduce_to_polytope_coords(const Spectrum& spectrum) {
  PolytopeCoords out;
  double residual = 0.0;
  for (int k = 1; k <= 3; ++k) {
    residual = std::max(residual,
                        std::abs(spectrum.at(k) + spectrum.at(7 - k) - 1.0));
  }
  if (residual > 0.01) {
    throw std::domain_error(
        "reduce_to_polytope_coords: sum rules lambda_k + lambda_{7-k} = 1 "
        "violated by " + std::to_string(residual) +
        ", spectrum is not Borland-Dennis-like");
  }
  out.coords = {spectrum.at(4), spectrum.at(5), spectrum.at(6)};
  out.residual = residual;
  return out;
}

const std::array<std::array<double, 3>, 4>& borland_dennis_vertices() {
  static const std::array<std::array<double, 3>, 4> v = {{
      {0.0, 0.0, 0.0},
      {0.5, 0.5, 0.0},
      {0.5, 0.25, 0.25},
      {0.5, 0.5, 0.5},
  }};
  return v;
}

Spectrum embed_with_zeros(const Spectrum& spectrum, int target_dimension) {
  if (target_dimension < static_cast<int>(spectrum.values.size())) {
    throw std::invalid_argument(
        "embed_with_zeros: target dimension is shorter than the spectrum");
  }
  Spectrum out = spectrum;
  out.values.resize(target_dimension, 0.0);
  return out;
}

RestrictedConstraint restrict_constraint(const LinearConstraint& constraint,
                                         int dimension) {
  if (dimension < 1 || dimension > constraint.dimension()) {
    throw std::invalid_argument(
        "restrict_constraint: dimension must be in [1, " +
        std::to_string(constraint.dimension()) + "]");
  }
  RestrictedConstraint out;
  // Verbatim truncation, bypassing the canonicalizing constructor, so the
  // result compares coefficient-for-coefficient with hand-written forms.
  out.constraint.label = constraint.label + "|" + std::to_string(dimension);
  out.constraint.kappa0 = constraint.kappa0;
  out.constraint.kappa.assign(constraint.kappa.begin(),
                              constraint.kappa.begin() + dimension);
  out.dropped_tail.assign(constraint.kappa.begin() + dimension,
                          constraint.kappa.end());
  bool any = out.constraint.kappa0 != 0;
  for (std::int64_t k : out.constraint.kappa) any = any || k != 0;
  if (!any) {
    throw std::invalid_argument("restrict_constraint: restriction of '" +
                                constraint.label + "' is identically zero");
  }
  return out;
}

nlohmann::json to_json(const ConstraintSet& set) {
  nlohmann::json j;
  j["N"] = set.particle_count;
  j["d"] = set.dimension;
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : set.constraints) {
    j["constraints"].push_back({
        {"label", c.label},
        {"kappa0", c.kappa0},
        {"kappa", c.kappa},
    });
  }
  return j;
}

ConstraintSet constraint_set_from_json(const nlohmann::json& j) {
  std::vector<LinearConstraint> constraints;
  for (const auto& cj : j.at("constraints")) {
    constraints.emplace_back(cj.at("label").get<std::string>(),
                             cj.at("kappa0").get<std::int64_t>(),
                             cj.at("kappa").get<std::vector<std::int64_t>>());
  }
  return ConstraintSet(j.at("N").get<int>(), j.at("d").get<int>(),
                       std::move(constraints));
}

}  // namespace pinning::polytope
