#include "pinning/wedge_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pinning/rng.hpp"

namespace pinning::wedge {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kAlignmentTol = 1e-8;
constexpr double kDegeneracyGap = 1e-8;

std::string tuple_to_string(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

// Determinant of the minor of u with the given 1-based rows and columns.
// Particle counts are 2 or 3 in practice; 1 is kept for completeness.
Complex minor_det(const Eigen::MatrixXcd& u, const Tuple& rows,
                  const Tuple& cols) {
  switch (rows.size()) {
    case 1:
      return u(rows[0] - 1, cols[0] - 1);
    case 2: {
      Complex a = u(rows[0] - 1, cols[0] - 1);
      Complex b = u(rows[0] - 1, cols[1] - 1);
      Complex c = u(rows[1] - 1, cols[0] - 1);
      Complex d = u(rows[1] - 1, cols[1] - 1);
      return a * d - b * c;
    }
    case 3: {
      Complex a = u(rows[0] - 1, cols[0] - 1);
      Complex b = u(rows[0] - 1, cols[1] - 1);
      Complex c = u(rows[0] - 1, cols[2] - 1);
      Complex d = u(rows[1] - 1, cols[0] - 1);
      Complex e = u(rows[1] - 1, cols[1] - 1);
      Complex f = u(rows[1] - 1, cols[2] - 1);
      Complex g = u(rows[2] - 1, cols[0] - 1);
      Complex h = u(rows[2] - 1, cols[1] - 1);
      Complex i = u(rows[2] - 1, cols[2] - 1);
      return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    }
    default: {
      // General fallback via LU for hypothetical larger particle numbers.
      Eigen::MatrixXcd m(rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t cc = 0; cc < cols.size(); ++cc) {
          m(r, cc) = u(rows[r] - 1, cols[cc] - 1);
        }
      }
      return m.determinant();
    }
  }
}

// Occupation spectrum read off the diagonal of an (approximately) diagonal
// one-particle matrix, returned descending together with the permutation of
// orbital labels that sorts it.
struct SortedDiagonal {
  std::vector<double> values;   // descending
  std::vector<int> orbitals;    // orbitals[k] = 1-based orbital of rank k
};

SortedDiagonal sorted_diagonal(const Eigen::MatrixXcd& rho) {
  const int d = static_cast<int>(rho.rows());
  SortedDiagonal out;
  out.values.resize(d);
  out.orbitals.resize(d);
  std::vector<int> order(d);
  for (int k = 0; k < d; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rho(a, a).real() > rho(b, b).real();
  });
  for (int k = 0; k < d; ++k) {
    out.values[k] = rho(order[k], order[k]).real();
    out.orbitals[k] = order[k] + 1;
  }
  return out;
}

double max_offdiagonal(const Eigen::MatrixXcd& rho) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      if (r != c) worst = std::max(worst, std::abs(rho(r, c)));
    }
  }
  return worst;
}

void require_aligned(const Eigen::MatrixXcd& rho, const char* who) {
  double off = max_offdiagonal(rho);
  if (off > kAlignmentTol) {
    throw std::domain_error(std::string(who) +
                            ": state is not natural-orbital aligned "
                            "(off-diagonal magnitude " + std::to_string(off) + ")");
  }
}

}  // namespace

SlaterBasis::SlaterBasis(int particle_count, int dimension)
    : particle_count_(particle_count), dimension_(dimension) {
  if (particle_count < 1 || dimension < particle_count) {
    throw std::invalid_argument("SlaterBasis: need 1 <= N <= d");
  }
  // Lexicographic enumeration of strictly increasing tuples.
  Tuple t(particle_count);
  for (int k = 0; k < particle_count; ++k) t[k] = k + 1;
  while (true) {
    index_[t] = static_cast<int>(tuples_.size());
    tuples_.push_back(t);
    int pos = particle_count - 1;
    while (pos >= 0 && t[pos] == dimension - (particle_count - 1 - pos)) --pos;
    if (pos < 0) break;
    ++t[pos];
    for (int k = pos + 1; k < particle_count; ++k) t[k] = t[k - 1] + 1;
  }
}

int SlaterBasis::index_of(const Tuple& sorted_tuple) const {
  auto it = index_.find(sorted_tuple);
  return it == index_.end() ? -1 : it->second;
}

WedgeState::WedgeState(SlaterBasis basis, const std::vector<Amplitude>& amplitudes)
    : basis_(std::move(basis)), coeff_(Eigen::VectorXcd::Zero(basis_.size())) {
  std::vector<bool> seen(basis_.size(), false);
  for (const auto& amp : amplitudes) {
    if (static_cast<int>(amp.tuple.size()) != basis_.particle_count()) {
      throw std::invalid_argument("WedgeState: tuple " +
                                  tuple_to_string(amp.tuple) + " has wrong arity");
    }
    Tuple sorted = amp.tuple;
    // Bubble sort, counting swaps: the parity of the permutation that
    // sorts the tuple is the fermionic reordering sign.
    int swaps = 0;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      for (std::size_t j = 0; j + 1 < sorted.size() - i; ++j) {
        if (sorted[j] > sorted[j + 1]) {
          std::swap(sorted[j], sorted[j + 1]);
          ++swaps;
        }
      }
    }
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      if (sorted[i] == sorted[i + 1]) {
        throw std::invalid_argument("WedgeState: repeated orbital in tuple " +
                                    tuple_to_string(amp.tuple));
      }
    }
    int idx = basis_.index_of(sorted);
    if (idx < 0) {
      throw std::invalid_argument("WedgeState: tuple " +
                                  tuple_to_string(amp.tuple) +
                                  " is not in the basis");
    }
    if (seen[idx]) {
      throw std::invalid_argument("WedgeState: duplicate tuple " +
                                  tuple_to_string(sorted));
    }
    seen[idx] = true;
    coeff_[idx] = (swaps % 2 == 0) ? amp.value : -amp.value;
  }
  double n = coeff_.norm();
  if (std::abs(n - 1.0) > kNormTol) {
    throw std::invalid_argument("WedgeState: coefficients have norm " +
                                std::to_string(n) + ", expected 1");
  }
}

WedgeState::WedgeState(SlaterBasis basis, Eigen::VectorXcd coefficients)
    : basis_(std::move(basis)), coeff_(std::move(coefficients)) {
  if (coeff_.size() != basis_.size()) {
    throw std::invalid_argument("WedgeState: coefficient vector has size " +
                                std::to_string(coeff_.size()) + ", basis has " +
                                std::to_string(basis_.size()));
  }
  double n = coeff_.norm();
  if (std::abs(n - 1.0) > kNormTol) {
    throw std::invalid_argument("WedgeState: coefficients have norm " +
                                std::to_string(n) + ", expected 1");
  }
}

Complex WedgeState::coefficient(const Tuple& sorted_tuple) const {
  int idx = basis_.index_of(sorted_tuple);
  if (idx < 0) {
    throw std::invalid_argument("WedgeState::coefficient: tuple " +
                                tuple_to_string(sorted_tuple) +
                                " is not in the basis");
  }
  return coeff_[idx];
}

Eigen::MatrixXcd one_rdm(const WedgeState& state) {
  const SlaterBasis& basis = state.basis();
  const int d = basis.dimension();
  const int n = basis.particle_count();
  if (std::abs(state.norm() - 1.0) > 1e-10) {
    throw std::domain_error("one_rdm: state is not normalized");
  }

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  Tuple target(n);
  for (int i = 0; i < basis.size(); ++i) {
    Complex ci = state.coefficients()[i];
    if (ci == Complex(0.0, 0.0)) continue;
    const Tuple& ti = basis.tuple(i);
    for (int p = 0; p < n; ++p) {
      int removed = ti[p];
      int remove_sign = (p % 2 == 0) ? 1 : -1;
      for (int inserted = 1; inserted <= d; ++inserted) {
        // The replacement orbital must not collide with the remaining ones.
        bool collision = false;
        int below = 0;
        for (int s = 0; s < n; ++s) {
          if (s == p) continue;
          if (ti[s] == inserted) {
            collision = true;
            break;
          }
          if (ti[s] < inserted) ++below;
        }
        if (collision) continue;
        int insert_sign = (below % 2 == 0) ? 1 : -1;
        int t = 0;
        for (int s = 0; s < n; ++s) {
          if (s == p) continue;
          target[t++] = ti[s];
        }
        target[t] = inserted;
        std::sort(target.begin(), target.end());
        int j = basis.index_of(target);
        // rho(removed, inserted) accumulates <a^dag_inserted a_removed>.
        rho(removed - 1, inserted - 1) += double(remove_sign * insert_sign) *
                                          std::conj(state.coefficients()[j]) * ci;
      }
    }
  }
  return rho;
}

AlignResult natural_orbital_align(const WedgeState& state) {
  const SlaterBasis& basis = state.basis();
  const int d = basis.dimension();

  Eigen::MatrixXcd rho = one_rdm(state);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("natural_orbital_align: eigensolver failed");
  }

  // Reorder descending and fix each orbital's phase so its largest
  // component is real positive; with that convention the output is a
  // deterministic function of the input state.
  Eigen::MatrixXcd u(d, d);
  Spectrum spectrum;
  spectrum.particle_count = basis.particle_count();
  spectrum.values.resize(d);
  for (int j = 0; j < d; ++j) {
    int src = d - 1 - j;
    spectrum.values[j] = es.eigenvalues()[src];
    Eigen::VectorXcd col = es.eigenvectors().col(src);
    int peak = 0;
    for (int r = 1; r < d; ++r) {
      if (std::abs(col[r]) > std::abs(col[peak])) peak = r;
    }
    double mag = std::abs(col[peak]);
    if (mag > 0.0) col *= std::conj(col[peak]) / mag;
    u.col(j) = col;
  }

  double min_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j + 1 < d; ++j) {
    min_gap = std::min(min_gap, spectrum.values[j] - spectrum.values[j + 1]);
  }

  // Exterior-power transform: the new coefficient on natural-orbital tuple J
  // is sum_I conj(det U[I, J]) c_I.
  Eigen::VectorXcd rotated = Eigen::VectorXcd::Zero(basis.size());
  for (int jj = 0; jj < basis.size(); ++jj) {
    const Tuple& cols = basis.tuple(jj);
    Complex acc(0.0, 0.0);
    for (int ii = 0; ii < basis.size(); ++ii) {
      Complex ci = state.coefficients()[ii];
      if (ci == Complex(0.0, 0.0)) continue;
      acc += std::conj(minor_det(u, basis.tuple(ii), cols)) * ci;
    }
    rotated[jj] = acc;
  }
  // Unitarity preserves the norm up to roundoff; renormalize the residue so
  // the state invariant holds exactly.
  rotated /= rotated.norm();

  AlignResult out{WedgeState(basis, std::move(rotated)), std::move(spectrum),
                  std::move(u), min_gap < kDegeneracyGap, min_gap};
  return out;
}

bool is_aligned(const WedgeState& state, double tol) {
  return max_offdiagonal(one_rdm(state)) <= tol;
}

std::vector<int> constraint_kernel_tuples(
    const polytope::LinearConstraint& constraint, const SlaterBasis& basis) {
  if (constraint.dimension() != basis.dimension()) {
    throw std::invalid_argument(
        "constraint_kernel_tuples: constraint dimension " +
        std::to_string(constraint.dimension()) + " does not match basis " +
        std::to_string(basis.dimension()));
  }
  std::vector<int> kernel;
  for (int i = 0; i < basis.size(); ++i) {
    std::int64_t eigenvalue = constraint.kappa0;
    for (int orb : basis.tuple(i)) eigenvalue += constraint.kappa[orb - 1];
    if (eigenvalue == 0) kernel.push_back(i);
  }
  return kernel;
}

SelectionRuleReport selection_rule_support(
    const polytope::LinearConstraint& constraint, const WedgeState& state) {
  require_aligned(one_rdm(state), "selection_rule_support");
  SelectionRuleReport report;
  report.kernel_tuples = constraint_kernel_tuples(constraint, state.basis());
  std::vector<bool> in_kernel(state.basis().size(), false);
  for (int idx : report.kernel_tuples) in_kernel[idx] = true;
  for (int i = 0; i < state.basis().size(); ++i) {
    double w = std::norm(state.coefficients()[i]);
    if (in_kernel[i]) {
      report.kernel_mass += w;
    } else {
      report.forbidden_mass += w;
    }
  }
  return report;
}

WedgeState pinned_family_state(Complex alpha, Complex beta, Complex gamma) {
  double a2 = std::norm(alpha);
  double b2 = std::norm(beta);
  double g2 = std::norm(gamma);
  double total = a2 + b2 + g2;
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument(
        "pinned_family_state: |alpha|^2 + |beta|^2 + |gamma|^2 = " +
        std::to_string(total) + ", expected 1");
  }
  const double slack = 1e-12;
  if (b2 > a2 + slack || g2 > b2 + slack || b2 + g2 > a2 + slack) {
    throw std::invalid_argument(
        "pinned_family_state: moduli must satisfy |alpha|^2 >= |beta|^2 >= "
        "|gamma|^2 and |alpha|^2 >= |beta|^2 + |gamma|^2 so the occupations "
        "come out descending");
  }
  SlaterBasis basis(3, 6);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(basis.size());
  c[basis.index_of({1, 2, 3})] = alpha;
  c[basis.index_of({1, 4, 5})] = beta;
  c[basis.index_of({2, 4, 6})] = gamma;
  c /= c.norm();  // absorb the (at most 1e-10) input rounding
  return WedgeState(std::move(basis), std::move(c));
}

BdStructureReport bd_structure_check(const WedgeState& state) {
  const SlaterBasis& basis = state.basis();
  if (basis.particle_count() != 3 || basis.dimension() != 6) {
    throw std::invalid_argument("bd_structure_check: state must live in the "
                                "three-fermion six-orbital wedge space");
  }
  Eigen::MatrixXcd rho = one_rdm(state);
  require_aligned(rho, "bd_structure_check");
  SortedDiagonal diag = sorted_diagonal(rho);
  for (int k = 0; k + 1 < 6; ++k) {
    if (diag.values[k] - diag.values[k + 1] < kDegeneracyGap) {
      throw std::domain_error(
          "bd_structure_check: occupations are degenerate at rank " +
          std::to_string(k + 1) + ", orbital labels are not well defined");
    }
  }
  // Family determinants over rank labels, in report order:
  // alpha 123, beta 124, gamma 135, delta 236, nu 145, mu 246, xi 356,
  // zeta 456. "delta" here is the fourth family coefficient, unrelated to
  // the model's coupling parameter.
  static const std::array<Tuple, 8> kFamily = {{{1, 2, 3},
                                                {1, 2, 4},
                                                {1, 3, 5},
                                                {2, 3, 6},
                                                {1, 4, 5},
                                                {2, 4, 6},
                                                {3, 5, 6},
                                                {4, 5, 6}}};

  BdStructureReport report;
  std::array<Complex, 8> family_coeff{};
  double family_mass = 0.0;
  for (int f = 0; f < 8; ++f) {
    // Translate rank labels back to the state's orbital labels, then fetch
    // the coefficient with the reordering sign. For states straight out of
    // natural_orbital_align the translation is the identity.
    Tuple orbitals(3);
    for (int s = 0; s < 3; ++s) {
      // rank -> orbital is the inverse of rank_of
      orbitals[s] = diag.orbitals[kFamily[f][s] - 1];
    }
    Tuple sorted = orbitals;
    int swaps = 0;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      for (std::size_t j = 0; j + 1 < sorted.size() - i; ++j) {
        if (sorted[j] > sorted[j + 1]) {
          std::swap(sorted[j], sorted[j + 1]);
          ++swaps;
        }
      }
    }
    Complex c = state.coefficient(sorted);
    family_coeff[f] = (swaps % 2 == 0) ? c : -c;
    report.moduli[f] = std::abs(family_coeff[f]);
    family_mass += std::norm(family_coeff[f]);
  }
  double total_mass = state.coefficients().squaredNorm();
  report.non_family_mass = std::max(0.0, total_mass - family_mass);

  double b2 = std::norm(family_coeff[1]);
  double c2 = std::norm(family_coeff[2]);
  double d2 = std::norm(family_coeff[3]);
  double x2 = std::norm(family_coeff[6]);
  double z2 = std::norm(family_coeff[7]);
  double facet_from_moduli = -b2 + c2 + d2 + 2.0 * x2 + z2;
  double facet_from_spectrum = diag.values[4] + diag.values[5] - diag.values[3];
  report.facet_identity_residual =
      std::abs(facet_from_moduli - facet_from_spectrum);

  report.orthogonality_residual = std::abs(
      std::conj(family_coeff[0]) * family_coeff[1] +
      std::conj(family_coeff[2]) * family_coeff[4] +
      std::conj(family_coeff[3]) * family_coeff[5] +
      std::conj(family_coeff[6]) * family_coeff[7]);
  return report;
}

SlaterBoundReport lemma3_bounds(const WedgeState& state) {
  const SlaterBasis& basis = state.basis();
  const int n = basis.particle_count();
  Eigen::MatrixXcd rho = one_rdm(state);
  require_aligned(rho, "lemma3_bounds");
  SortedDiagonal diag = sorted_diagonal(rho);

  SlaterBoundReport report;
  double top = 0.0;
  for (int k = 0; k < n; ++k) top += diag.values[k];
  report.delta_sl = double(n) - top;
  report.skipped_degenerate =
      diag.values[n - 1] - diag.values[n] < kDegeneracyGap;

  Tuple dominant(diag.orbitals.begin(), diag.orbitals.begin() + n);
  std::sort(dominant.begin(), dominant.end());
  report.overlap = std::norm(state.coefficient(dominant));
  report.lower = 1.0 - report.delta_sl;
  report.upper = 1.0 - report.delta_sl / n;
  report.slack =
      std::min(report.overlap - report.lower, report.upper - report.overlap);
  return report;
}

PinnedProjectionReport theorem4_bounds(const WedgeState& state) {
  const SlaterBasis& basis = state.basis();
  if (basis.particle_count() != 3 || basis.dimension() != 6) {
    throw std::invalid_argument("theorem4_bounds: state must live in the "
                                "three-fermion six-orbital wedge space");
  }
  Eigen::MatrixXcd rho = one_rdm(state);
  require_aligned(rho, "theorem4_bounds");
  SortedDiagonal diag = sorted_diagonal(rho);

  PinnedProjectionReport report;
  report.delta_sl = 3.0 - (diag.values[0] + diag.values[1] + diag.values[2]);
  report.facet_value = diag.values[4] + diag.values[5] - diag.values[3];

  // Projection onto the three-determinant pinned family, in rank labels.
  std::vector<int> rank_to_orbital = diag.orbitals;
  auto coeff_at_ranks = [&](std::initializer_list<int> ranks) {
    Tuple t;
    for (int r : ranks) t.push_back(rank_to_orbital[r - 1]);
    std::sort(t.begin(), t.end());
    return state.coefficient(t);
  };
  report.projection_weight = std::norm(coeff_at_ranks({1, 2, 3})) +
                             std::norm(coeff_at_ranks({1, 4, 5})) +
                             std::norm(coeff_at_ranks({2, 4, 6}));

  report.in_domain = report.delta_sl <= 0.25 - 1e-9;
  if (report.in_domain) {
    report.chi = (1.0 + 2.0 * report.delta_sl) / (1.0 - 4.0 * report.delta_sl);
    report.lower = 1.0 - report.chi * report.facet_value;
    report.upper = 1.0 - 0.5 * report.facet_value;
    report.slack = std::min(report.projection_weight - report.lower,
                            report.upper - report.projection_weight);
  } else {
    double nan = std::numeric_limits<double>::quiet_NaN();
    report.chi = nan;
    report.lower = nan;
    report.upper = nan;
    report.slack = nan;
  }
  return report;
}

WedgeState random_state(const SlaterBasis& basis, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::VectorXcd c(basis.size());
  for (int i = 0; i < basis.size(); ++i) c[i] = standard_complex_gaussian(rng);
  c /= c.norm();
  return WedgeState(basis, std::move(c));
}

nlohmann::json to_json(const WedgeState& state) {
  nlohmann::json j;
  j["N"] = state.basis().particle_count();
  j["d"] = state.basis().dimension();
  j["amplitudes"] = nlohmann::json::array();
  for (int i = 0; i < state.basis().size(); ++i) {
    Complex c = state.coefficients()[i];
    if (c == Complex(0.0, 0.0)) continue;
    j["amplitudes"].push_back({
        {"tuple", state.basis().tuple(i)},
        {"re", c.real()},
        {"im", c.imag()},
    });
  }
  return j;
}

WedgeState wedge_state_from_json(const nlohmann::json& j) {
  SlaterBasis basis(j.at("N").get<int>(), j.at("d").get<int>());
  std::vector<Amplitude> amplitudes;
  for (const auto& aj : j.at("amplitudes")) {
    Amplitude a;
    a.tuple = aj.at("tuple").get<Tuple>();
    a.value = Complex(aj.at("re").get<double>(), aj.at("im").get<double>());
    amplitudes.push_back(std::move(a));
  }
  return WedgeState(std::move(basis), amplitudes);
}

}  // namespace pinning::wedge
