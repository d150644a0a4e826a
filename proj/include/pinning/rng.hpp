#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace pinning {

/// Deterministic 64-bit generator (splitmix64). Chosen over the standard
/// engines because its output is fully specified by the seed alone, with no
/// dependence on library internals, so audit runs reproduce bit-for-bit on
/// any platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1]: 53 random bits, shifted off zero so log() is safe.
  double uniform_open01() {
    return (double(next() >> 11) + 1.0) * 0x1p-53;
  }

private:
  std::uint64_t state_;
};

/// One complex number with independent standard-normal real and imaginary
/// parts, via Box-Muller. std::normal_distribution is avoided on purpose:
/// its sequence is implementation-defined, this one is not.
inline std::complex<double> standard_complex_gaussian(SplitMix64& rng) {
  double u1 = rng.uniform_open01();
  double u2 = rng.uniform_open01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 6.283185307179586476925286766559 * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

/// Stream-splitting: an independent seed for sample `index` under a base
/// seed. Audits draw each sample from its own derived stream, so results do
/// not depend on how samples are distributed over worker threads.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 mixer(base ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return mixer.next();
}

}  // namespace pinning
