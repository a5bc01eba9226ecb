#pragma once

#include <cstdint>

#include "m5gb/poly.hpp"

namespace m5gb {

/// Seeded generator behind the reproducible instances. The stream is frozen:
/// changing it invalidates every recorded benchmark, so treat the constants
/// and the draw order as part of the file format.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound) by rejection, so the distribution is exact.
  uint64_t uniform_below(uint64_t bound);

 private:
  uint64_t state_;
};

struct GeneratedSystem {
  std::vector<Polynomial> polys;
  std::vector<FieldElement> point;  // a common root of every polynomial
};

/// Random dense quadratic system with a planted common root. Draws, in order:
/// the point (one field element per variable), then for each polynomial its
/// quadratic coefficients (x_i*x_j for i <= j, i-major; the whole block is
/// redrawn while all of them are zero), its linear coefficients, and finally
/// the constant term is set so the polynomial vanishes at the point.
GeneratedSystem gen_system(const Ring& ring, uint32_t count, uint64_t seed);

}  // namespace m5gb
