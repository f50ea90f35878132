#pragma once

#include <cstdint>

namespace loam {

/// Portable, seedable generator used everywhere randomness is needed:
/// xoshiro256++ state-initialized from a 64-bit seed with splitmix64.
/// Identical seeds give identical streams on every platform, which is what
/// makes golden grids and bootstrap results reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double strictly inside (0,1): the top 53 bits, offset by half
  /// a step, so 0 and 1 are unreachable and quantile transforms stay finite.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  /// Unbiased draw from {0, ..., n-1} by rejecting the short final cycle
  /// of the modulo reduction.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  static std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

/// Seed for logical sub-stream `index` of `seed`: output number `index` of
/// the splitmix64 sequence started at `seed`. Work items seeded this way
/// (one per bootstrap resample, one per simulation) are independent of how
/// work is scheduled, so parallel and serial runs agree bit for bit.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed + index * 0x9E3779B97F4A7C15ULL;
  return Rng::splitmix64_next(state);
}

}  // namespace loam
