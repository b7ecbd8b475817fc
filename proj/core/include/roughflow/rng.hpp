#pragma once

#include <cstdint>
#include <cmath>

#include "roughflow/vec.hpp"

namespace roughflow {

// Counter-based splittable generator: every stream is keyed by
// (seed, stream index) so results do not depend on evaluation order
// or worker count.  Core mixer is splitmix64.
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ mix(stream * 0x9e3779b97f4a7c15ull + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0,1)
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    // Box-Muller; spare discarded to keep the stream stateless-ish.
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Vec3 unit_vec3() {
    Vec3 g{normal(), normal(), normal()};
    double n = norm(g);
    if (n < 1e-12) return {1, 0, 0};
    return g / n;
  }

  Vec3 in_box(const Vec3& lo, const Vec3& hi) {
    return {uniform(lo.x, hi.x), uniform(lo.y, hi.y), uniform(lo.z, hi.z)};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

}  // namespace roughflow
