#pragma once

#include <numeric>
#include <vector>

namespace pinning {

/// Natural occupation numbers in descending order, normalized so that they
/// sum to the particle count. This is a plain carrier: series evaluations
/// and truncations legitimately produce near-valid spectra, so validity is
/// checked by pinning::polytope::validate_spectrum rather than enforced here.
struct Spectrum {
  std::vector<double> values;
  int particle_count = 0;

  double sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
  }

  /// Occupation lambda_k with 1-based k, zero beyond the stored length.
  double at(int k) const {
    if (k < 1) return 0.0;
    auto idx = static_cast<std::size_t>(k - 1);
    return idx < values.size() ? values[idx] : 0.0;
  }
};

}  // namespace pinning
