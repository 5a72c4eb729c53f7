#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mgp/common.hpp"

namespace mgp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed from a master seed. Used everywhere a stage
// (chain, estimator, generator, bench cell) needs its own stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream));
}

// Stage tags for derive_seed. Fixed constants so that e.g. the CLI
// "fit --dim auto" path and the "estimate-dim | fit --dim d" pipeline
// consume identical streams.
inline constexpr std::uint64_t kSeedGenerator = 0xA11CE;
inline constexpr std::uint64_t kSeedDimension = 0xD11;
inline constexpr std::uint64_t kSeedChain = 0xC4A1;
inline constexpr std::uint64_t kSeedEstimator = 0xE57;
inline constexpr std::uint64_t kSeedSplit = 0x5917;

// mt19937_64 core with hand-rolled variate transforms. The standard
// <random> distributions are implementation-defined, which would break
// the cross-platform reproducibility contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller, cosine branch only (one normal per two uniforms).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mgp
