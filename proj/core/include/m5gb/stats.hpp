#pragma once

#include <cstdint>

namespace m5gb {

/// Counters reported by every solver run. A reduction step is one polynomial
/// subtraction inside a reduction, wherever it happens.
struct RunStats {
  uint64_t reduction_steps = 0;
  uint64_t spairs_processed = 0;
  uint64_t spairs_skipped_syzygy = 0;
  uint64_t spairs_skipped_duplicate = 0;
  uint64_t zero_reductions = 0;
  uint64_t basis_size = 0;
  double wall_time_ms = 0.0;
};

}  // namespace m5gb
