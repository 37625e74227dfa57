// Deterministic random streams for fading realizations.
//
// splitmix64 underneath — counter-based, documented, identical output on
// every platform (std::normal_distribution sequences are
// implementation-defined, so it is not used anywhere).
#pragma once

#include <cstdint>

namespace comp {

struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Standard normals via Box-Muller on the splitmix64 stream.
class GaussianStream {
 public:
  explicit GaussianStream(uint64_t seed) : u_(seed) {}
  double next();

 private:
  SplitMix64 u_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace comp
