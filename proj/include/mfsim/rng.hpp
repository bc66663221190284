#pragma once

#include <cstdint>
#include <random>

namespace mfsim {

// Seeded PRNG with output that is stable across platforms and library
// versions. std::mt19937_64 is bit-exact by the standard; the helpers below
// replace std::uniform_*_distribution, whose draws are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) { return gen_() % n; }

  // Uniform double in [0, 1), 53 bits of precision.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

 private:
  std::mt19937_64 gen_;
};

// Mixes a stream label into a base seed (splitmix64 finalizer), so each
// entity gets an independent stream regardless of enumeration order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mfsim
