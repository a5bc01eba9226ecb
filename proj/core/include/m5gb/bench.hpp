#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "m5gb/solver.hpp"

namespace m5gb {

/// Runs one named engine: "m5gb" (cached reductors), "sb" (plain signature
/// reduction), or "buchberger". Unknown names throw std::invalid_argument.
SolveResult run_algorithm(std::string_view name, const Ring& ring, SigOrderKind sig_kind,
                          const std::vector<Polynomial>& inputs, const SolverOptions& opt = {});

const std::vector<std::string>& known_algorithms();

struct BenchConfig {
  uint64_t p = 101;
  TermOrder order = TermOrder::Grevlex;
  SigOrderKind sig_kind = SigOrderKind::POT;
  std::vector<std::pair<uint32_t, uint32_t>> shapes;  // (variables, polynomials)
  std::vector<uint64_t> seeds;
  std::vector<std::string> algorithms;
  /// Verify that all algorithms produce the same reduced basis per instance.
  bool cross_check = false;
  /// Worker threads over (shape, seed) tasks. Row order in the result is
  /// independent of scheduling; timings of concurrent runs disturb each other.
  unsigned threads = 1;
};

/// One CSV row. Counter columns are exact integers for per-seed rows and
/// means for aggregate rows (seed == "mean").
struct BenchRow {
  uint32_t n = 0;
  uint32_t m = 0;
  uint64_t p = 0;
  std::string seed;
  std::string algorithm;
  double wall_time_ms = 0;
  double basis_size = 0;
  double time_per_element_ms = 0;
  double reduction_steps = 0;
  double spairs_processed = 0;
  double spairs_skipped_syzygy = 0;
  double spairs_skipped_duplicate = 0;
  double zero_reductions = 0;
  bool aggregate = false;
};

struct BenchResult {
  std::vector<BenchRow> rows;
};

/// Runs the whole grid: for each shape and algorithm, one row per seed
/// followed by the mean row over those seeds (in listed order, so the means
/// are recomputable from the rows above them).
BenchResult run_bench(const BenchConfig& config);

/// The frozen CSV layout. Integers are plain; every other numeric cell is
/// printed with %.17g so parsing it back reproduces the double bit for bit.
std::string bench_csv(const BenchResult& result);
void write_bench_csv(const std::string& path, const BenchResult& result);

}  // namespace m5gb
