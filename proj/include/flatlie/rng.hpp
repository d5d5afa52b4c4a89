#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace flatlie {

/// Seeded generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are defined here rather than taken from
/// <random>, whose distribution algorithms vary between standard libraries:
///   uniform()  = (next >> 11) * 2^-53, in [0, 1)
///   normal()   = Box-Muller cosine branch on two uniforms, one draw per call
///   index(n)   = next % n
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  int index(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace flatlie
