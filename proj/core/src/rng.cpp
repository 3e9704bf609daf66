#include "hexlb/rng.hpp"

#include <cmath>
#include <numbers>

namespace hexlb {

double SplitMix64::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));  // 1-u1 in (0, 1]
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(seed);
  std::uint64_t s = g.next();
  SplitMix64 ga(s ^ (a + 0x9e3779b97f4a7c15ULL));
  s = ga.next();
  SplitMix64 gb(s ^ (b + 0xc2b2ae3d27d4eb4fULL));
  return gb.next();
}

}  // namespace hexlb
