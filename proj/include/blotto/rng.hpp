#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace blotto {

// splitmix64 finalizer; used for seed derivation, not for the run stream.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream seed for one (sweep point, seed index) run. The listed seed is
// mixed with both indices so repeated seeds and neighbouring sweep points
// still get independent streams.
inline std::uint64_t derive_run_seed(std::uint64_t listed_seed,
                                     std::uint64_t sweep_index,
                                     std::uint64_t seed_index) {
  std::uint64_t s = mix64(listed_seed);
  s = mix64(s ^ (0x9e3779b97f4a7c15ULL + sweep_index));
  s = mix64(s ^ (0xbf58476d1ce4e5b9ULL + seed_index));
  return s;
}

// The single random stream a run consumes. Wraps mt19937_64 with fixed
// uniform conversions; std::uniform_*_distribution is implementation-defined
// and would break bit-identical replay across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unbiased draw from {0, ..., n-1}; n must be positive.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t reject_below = (0 - bound) % bound;  // 2^64 mod n
    std::uint64_t draw = engine_();
    while (draw < reject_below) draw = engine_();
    return static_cast<std::size_t>(draw % bound);
  }

  // Fisher-Yates shuffle of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[uniform_index(i)]);
    }
    return order;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace blotto
