#pragma once

#include <cstdint>

namespace wcurve::rng {

// SplitMix64 finalizer (Steele/Lea constants).
constexpr uint64_t scramble(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives a sub-seed for an independent sampling context (per level, per
// nested loop, ...).  Pure function of its inputs.
constexpr uint64_t derive(uint64_t seed, uint64_t tag) {
  return scramble(seed + 0x9E3779B97F4A7C15ull * (tag + 1));
}

// Counter-based generator: the stream for sample index i is a pure function
// of (seed, i), so results never depend on how samples are distributed over
// threads.  Salmon et al. (SC 2011) style usage with a SplitMix64 core.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream) : state_(derive(seed, stream)) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    return scramble(z);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace wcurve::rng
