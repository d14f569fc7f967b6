#pragma once

#include <cstdint>
#include <random>

namespace crocker {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic uniform stream. The explicit 53-bit mapping sidesteps
// std::uniform_real_distribution, whose draw sequence is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Per-simulation stream seed: base xor a hash of (group index, replicate
// index), so corpora regenerate identically regardless of launch order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t group,
                                 std::uint64_t replicate) {
  return base ^ splitmix64(splitmix64(group + 1) + replicate);
}

}  // namespace crocker
