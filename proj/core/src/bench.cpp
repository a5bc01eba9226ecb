#include "m5gb/bench.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "m5gb/baseline.hpp"
#include "m5gb/gensys.hpp"
#include "m5gb/verify.hpp"

namespace m5gb {

SolveResult run_algorithm(std::string_view name, const Ring& ring, SigOrderKind sig_kind,
                          const std::vector<Polynomial>& inputs, const SolverOptions& opt) {
  if (name == "m5gb") return m5gb_run(ring, sig_kind, inputs, opt);
  if (name == "sb") return sb_run(ring, sig_kind, inputs, opt);
  if (name == "buchberger") return buchberger_run(ring, inputs);
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {"m5gb", "sb", "buchberger"};
  return names;
}

namespace {

BenchRow make_row(const BenchConfig& cfg, uint32_t n, uint32_t m, uint64_t seed,
                  const std::string& algorithm, const RunStats& stats) {
  BenchRow row;
  row.n = n;
  row.m = m;
  row.p = cfg.p;
  row.seed = std::to_string(seed);
  row.algorithm = algorithm;
  row.wall_time_ms = stats.wall_time_ms;
  row.basis_size = static_cast<double>(stats.basis_size);
  row.time_per_element_ms = stats.wall_time_ms / static_cast<double>(stats.basis_size);
  row.reduction_steps = static_cast<double>(stats.reduction_steps);
  row.spairs_processed = static_cast<double>(stats.spairs_processed);
  row.spairs_skipped_syzygy = static_cast<double>(stats.spairs_skipped_syzygy);
  row.spairs_skipped_duplicate = static_cast<double>(stats.spairs_skipped_duplicate);
  row.zero_reductions = static_cast<double>(stats.zero_reductions);
  return row;
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  if (cfg.shapes.empty()) throw std::invalid_argument("no instance shapes");
  if (cfg.seeds.empty()) throw std::invalid_argument("no seeds");
  if (cfg.algorithms.empty()) throw std::invalid_argument("no algorithms");

  // rows[shape][algo][seed], filled by tasks keyed on (shape, seed) so one
  // generated system serves every algorithm and the cross check.
  const size_t na = cfg.algorithms.size();
  const size_t ns = cfg.seeds.size();
  std::vector<BenchRow> flat(cfg.shapes.size() * na * ns);
  std::vector<std::string> errors(cfg.shapes.size() * ns);

  auto run_task = [&](size_t shape_idx, size_t seed_idx) {
    const auto [n, m] = cfg.shapes[shape_idx];
    const uint64_t seed = cfg.seeds[seed_idx];
    try {
      Ring ring(PrimeField(cfg.p), n, cfg.order);
      GeneratedSystem sys = gen_system(ring, m, seed);
      std::vector<Polynomial> reference;
      for (size_t a = 0; a < na; ++a) {
        SolveResult res = run_algorithm(cfg.algorithms[a], ring, cfg.sig_kind, sys.polys);
        if (cfg.cross_check) {
          if (a == 0) {
            reference = res.basis;
          } else if (!reduced_gb_equal(ring, reference, res.basis)) {
            throw std::runtime_error("algorithms disagree on n=" + std::to_string(n) +
                                     " m=" + std::to_string(m) +
                                     " seed=" + std::to_string(seed));
          }
        }
        flat[(shape_idx * na + a) * ns + seed_idx] =
            make_row(cfg, n, m, seed, cfg.algorithms[a], res.stats);
      }
    } catch (const std::exception& e) {
      errors[shape_idx * ns + seed_idx] = e.what();
    }
  };

  if (cfg.threads <= 1) {
    for (size_t s = 0; s < cfg.shapes.size(); ++s) {
      for (size_t k = 0; k < ns; ++k) run_task(s, k);
    }
  } else {
    std::atomic<size_t> next{0};
    const size_t total = cfg.shapes.size() * ns;
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(cfg.threads, static_cast<unsigned>(total));
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
          run_task(i / ns, i % ns);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  for (const std::string& err : errors) {
    if (!err.empty()) throw std::runtime_error(err);
  }

  BenchResult out;
  out.rows.reserve(flat.size() + cfg.shapes.size() * na);
  for (size_t s = 0; s < cfg.shapes.size(); ++s) {
    for (size_t a = 0; a < na; ++a) {
      BenchRow mean;
      mean.n = cfg.shapes[s].first;
      mean.m = cfg.shapes[s].second;
      mean.p = cfg.p;
      mean.seed = "mean";
      mean.algorithm = cfg.algorithms[a];
      mean.aggregate = true;
      for (size_t k = 0; k < ns; ++k) {
        const BenchRow& row = flat[(s * na + a) * ns + k];
        out.rows.push_back(row);
        mean.wall_time_ms += row.wall_time_ms;
        mean.basis_size += row.basis_size;
        mean.time_per_element_ms += row.time_per_element_ms;
        mean.reduction_steps += row.reduction_steps;
        mean.spairs_processed += row.spairs_processed;
        mean.spairs_skipped_syzygy += row.spairs_skipped_syzygy;
        mean.spairs_skipped_duplicate += row.spairs_skipped_duplicate;
        mean.zero_reductions += row.zero_reductions;
      }
      const double count = static_cast<double>(ns);
      mean.wall_time_ms /= count;
      mean.basis_size /= count;
      mean.time_per_element_ms /= count;
      mean.reduction_steps /= count;
      mean.spairs_processed /= count;
      mean.spairs_skipped_syzygy /= count;
      mean.spairs_skipped_duplicate /= count;
      mean.zero_reductions /= count;
      out.rows.push_back(std::move(mean));
    }
  }
  return out;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Counters print as integers on per-seed rows, as full doubles on mean rows.
std::string fmt_count(double v, bool aggregate) {
  if (!aggregate) return std::to_string(static_cast<uint64_t>(v));
  return fmt_double(v);
}

}  // namespace

std::string bench_csv(const BenchResult& result) {
  std::string out =
      "n,m,p,seed,algorithm,wall_time_ms,basis_size,time_per_element_ms,"
      "reduction_steps,spairs_processed,spairs_skipped_syzygy,"
      "spairs_skipped_duplicate,zero_reductions\n";
  for (const BenchRow& r : result.rows) {
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += std::to_string(r.p);
    out += ',';
    out += r.seed;
    out += ',';
    out += r.algorithm;
    out += ',';
    out += fmt_double(r.wall_time_ms);
    out += ',';
    out += fmt_count(r.basis_size, r.aggregate);
    out += ',';
    out += fmt_double(r.time_per_element_ms);
    out += ',';
    out += fmt_count(r.reduction_steps, r.aggregate);
    out += ',';
    out += fmt_count(r.spairs_processed, r.aggregate);
    out += ',';
    out += fmt_count(r.spairs_skipped_syzygy, r.aggregate);
    out += ',';
    out += fmt_count(r.spairs_skipped_duplicate, r.aggregate);
    out += ',';
    out += fmt_count(r.zero_reductions, r.aggregate);
    out += '\n';
  }
  return out;
}

void write_bench_csv(const std::string& path, const BenchResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << bench_csv(result);
}

}  // namespace m5gb
