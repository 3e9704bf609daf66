#pragma once

#include <cstdint>

namespace hexlb {

/// Portable 64-bit PRNG (splitmix64). Every stochastic stage of the toolkit
/// draws from this generator so that datasets, model initialization and
/// training order are reproducible bit-for-bit across platforms.
///
/// Sequence definition, per draw:
///   state += 0x9e3779b97f4a7c15
///   z = state
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   return z ^ (z >> 31)
///
/// Uniform doubles take the top 53 bits: (z >> 11) * 2^-53, giving [0, 1).
/// Gaussians use the Box-Muller transform on consecutive uniforms u1, u2:
///   r = sqrt(-2 ln(1 - u1)),  z0 = r cos(2 pi u2),  z1 = r sin(2 pi u2)
/// z0 is returned first, z1 on the following call.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  /// Inclusive-exclusive integer range [0, n), n > 0. Used for shuffling.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  /// Standard normal via Box-Muller, one draw per call.
  double next_gaussian();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent substream seed from a base seed and a two-part
/// path (e.g. microcell index and series tag). Collision-resistant through
/// the splitmix64 finalizer; identical inputs give identical outputs on all
/// platforms.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace hexlb
