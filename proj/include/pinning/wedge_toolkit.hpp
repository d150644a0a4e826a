#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "pinning/pauli_polytope.hpp"
#include "pinning/spectrum.hpp"

namespace pinning::wedge {

using Complex = std::complex<double>;

/// Orbital index tuple of a Slater determinant: strictly increasing,
/// 1-based.
using Tuple = std::vector<int>;

/// The C(d, N) Slater determinants of N fermions in d orbitals, enumerated
/// in lexicographic order. This fixed enumeration is the coordinate system
/// for every wedge-space vector in the toolkit.
class SlaterBasis {
public:
  SlaterBasis(int particle_count, int dimension);

  int particle_count() const { return particle_count_; }
  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(tuples_.size()); }

  const Tuple& tuple(int index) const { return tuples_[index]; }
  const std::vector<Tuple>& tuples() const { return tuples_; }

  /// Index of a sorted tuple, or -1 if it is not a basis element.
  int index_of(const Tuple& sorted_tuple) const;

private:
  int particle_count_;
  int dimension_;
  std::vector<Tuple> tuples_;
  std::map<Tuple, int> index_;
};

/// An amplitude attached to an orbital tuple, as supplied by callers. The
/// tuple may arrive in any order without repeats; construction sorts it and
/// applies the permutation sign. That constructor is the single place where
/// fermionic reordering signs enter the toolkit.
struct Amplitude {
  Tuple tuple;
  Complex value;
};

/// A normalized state of the N-fermion wedge space, stored as coefficients
/// over the SlaterBasis enumeration.
class WedgeState {
public:
  /// Builds a state from amplitudes. Repeated orbitals within a tuple,
  /// unknown orbitals, duplicate tuples, and a norm off unity by more than
  /// 1e-12 are all rejected.
  WedgeState(SlaterBasis basis, const std::vector<Amplitude>& amplitudes);

  /// Coefficients are taken as-is over the basis enumeration (must already
  /// be normalized).
  WedgeState(SlaterBasis basis, Eigen::VectorXcd coefficients);

  const SlaterBasis& basis() const { return basis_; }
  const Eigen::VectorXcd& coefficients() const { return coeff_; }
  Complex coefficient(const Tuple& sorted_tuple) const;
  double norm() const { return coeff_.norm(); }

private:
  SlaterBasis basis_;
  Eigen::VectorXcd coeff_;
};

/// One-particle reduced density matrix of a wedge state, d x d, Hermitian,
/// positive semidefinite, trace N. Entry (k, l) sums, over determinants
/// containing orbital l, the signed overlap with the determinant where l is
/// replaced by k.
Eigen::MatrixXcd one_rdm(const WedgeState& state);

/// Natural-orbital alignment: diagonalize the one-particle matrix, order
/// eigenvalues descending, and rewrite the state in the eigenbasis. The
/// coefficient transform is the N-th exterior power of the basis change,
/// i.e. N x N minors of the unitary. `degenerate` flags eigenvalue gaps
/// below 1e-8, where the orbital order (and thus the transformed
/// coefficients) is not stable; such states are flagged, not rejected.
struct AlignResult {
  WedgeState state;
  Spectrum spectrum;
  Eigen::MatrixXcd basis_change;  // column j = j-th natural orbital
  bool degenerate = false;
  double min_gap = 0.0;
};

AlignResult natural_orbital_align(const WedgeState& state);

/// True if the state's one-particle matrix is diagonal to within `tol` on
/// off-diagonal magnitudes.
bool is_aligned(const WedgeState& state, double tol = 1e-8);

/// Determinants on which a constraint's induced wedge-space operator has
/// eigenvalue zero: selecting tuples i with kappa0 + sum_{k in i} kappa_k
/// = 0. Integer arithmetic, exact.
std::vector<int> constraint_kernel_tuples(
    const polytope::LinearConstraint& constraint, const SlaterBasis& basis);

/// Decomposes a state's weight by that eigenvalue. When the constraint is
/// saturated (distance zero), all weight must sit in the kernel; the
/// forbidden mass is the weight outside it. Requires a natural-orbital
/// aligned state, since the constraint acts on occupation-number labels.
struct SelectionRuleReport {
  std::vector<int> kernel_tuples;
  double kernel_mass = 0.0;
  double forbidden_mass = 0.0;
};

SelectionRuleReport selection_rule_support(
    const polytope::LinearConstraint& constraint, const WedgeState& state);

/// The three-determinant family alpha |123> + beta |145> + gamma |246>
/// whose members saturate the six-orbital facet exactly. Preconditions:
/// |alpha|^2 + |beta|^2 + |gamma|^2 = 1 and the moduli ordered so the
/// resulting occupations come out descending: |alpha|^2 >= |beta|^2 >=
/// |gamma|^2 and |alpha|^2 >= |beta|^2 + |gamma|^2.
WedgeState pinned_family_state(Complex alpha, Complex beta, Complex gamma);

/// Structure check against the eight-determinant Borland-Dennis form
/// a|123> + b|124> + c|135> + d|236> + n|145> + m|246> + x|356> + z|456>
/// (labels over the natural orbitals). Reports the weight outside that
/// family, the eight moduli, the residual of the facet identity
/// D = -|b|^2 + |c|^2 + |d|^2 + 2|x|^2 + |z|^2 against the facet value
/// computed from the occupation spectrum, and the off-diagonal
/// orthogonality residual |conj(a) b + conj(c) n + conj(d) m + conj(x) z|.
/// Input must be aligned and free of flagged degeneracies.
struct BdStructureReport {
  double non_family_mass = 0.0;
  std::array<double, 8> moduli{};
  double facet_identity_residual = 0.0;
  double orthogonality_residual = 0.0;
};

BdStructureReport bd_structure_check(const WedgeState& state);

/// Two-sided bound linking the truncation error delta_sl = N - sum of the N
/// largest occupations to the overlap with the dominant Slater determinant:
///   1 - delta_sl <= |<Slater|Psi>|^2 <= 1 - delta_sl / N.
/// Requires an aligned state. When lambda_N and lambda_{N+1} are closer
/// than 1e-8 the dominant determinant is ill-defined and the check is
/// reported as skipped instead.
struct SlaterBoundReport {
  double delta_sl = 0.0;
  double overlap = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double slack = 0.0;  // min(overlap - lower, upper - overlap)
  bool skipped_degenerate = false;
};

SlaterBoundReport lemma3_bounds(const WedgeState& state);

/// Sharpened two-sided bound specific to three fermions in six orbitals,
/// valid for delta_sl < 1/4: with D the facet value and
/// chi = (1 + 2 delta_sl)/(1 - 4 delta_sl),
///   1 - chi * D <= |P Psi|^2 <= 1 - D / 2,
/// where P projects onto span{|123>, |145>, |246>}. States outside the
/// domain are reported as such, not failed.
struct PinnedProjectionReport {
  double delta_sl = 0.0;
  double facet_value = 0.0;
  double chi = 0.0;
  double projection_weight = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double slack = 0.0;
  bool in_domain = true;
};

PinnedProjectionReport theorem4_bounds(const WedgeState& state);

/// Haar-like random state: i.i.d. complex Gaussian coefficients,
/// normalized. Fully determined by the seed.
WedgeState random_state(const SlaterBasis& basis, std::uint64_t seed);

/// JSON round-trip:
/// { "N": .., "d": .., "amplitudes": [ {"tuple": [..], "re": .., "im": ..} ] }.
nlohmann::json to_json(const WedgeState& state);
WedgeState wedge_state_from_json(const nlohmann::json& j);

}  // namespace pinning::wedge
