#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace modrec {

// splitmix64 finalizer; used to derive independent seed streams.
uint64_t mix64(uint64_t x);

// Folds any number of components into a child seed. Every frame, training
// stage and sweep run gets its own stream derived from the master seed, so
// results do not depend on evaluation order or thread count.
uint64_t derive_seed(uint64_t base);
uint64_t derive_seed(uint64_t base, uint64_t a);
uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b);
uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b, uint64_t c);

// Deterministic generator. std::mt19937_64 is fully specified by the
// standard; the distribution transforms live here (rather than <random>
// adapters, whose algorithms are implementation-defined) so that a seed
// reproduces identical draws on any stdlib.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer on [0, n); n must be positive.
  uint64_t uniform_int(uint64_t n);

  // Standard normal via Box-Muller. normal_pair() is the primitive (one
  // complex noise sample per pair); normal() caches the second draw.
  std::pair<double, double> normal_pair();
  double normal();

private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace modrec
