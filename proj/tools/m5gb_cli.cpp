#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "m5gb/baseline.hpp"
#include "m5gb/bench.hpp"
#include "m5gb/gensys.hpp"
#include "m5gb/sysio.hpp"
#include "m5gb/verify.hpp"
#include "memtrack.hpp"

// Exit codes: 0 success, 1 a verification or comparison answered "no",
// 2 anything else went wrong (bad arguments, unreadable files, solver errors).

namespace {

using namespace m5gb;

const std::map<std::string, TermOrder> kOrderNames = {
    {"grevlex", TermOrder::Grevlex},
    {"lex", TermOrder::Lex},
};
const std::map<std::string, SigOrderKind> kSigNames = {
    {"pot", SigOrderKind::POT},
    {"top", SigOrderKind::TOP},
};

struct GenArgs {
  uint32_t n = 0;
  uint32_t m = 0;
  uint64_t p = 101;
  uint64_t seed = 1;
  std::string out;
  std::string point_out;
};

struct SolveArgs {
  std::string in;
  std::string algorithm = "m5gb";
  TermOrder order = TermOrder::Grevlex;
  SigOrderKind sig = SigOrderKind::POT;
  std::string out;
  std::string stats_out;
  bool raw = false;
  bool check_invariants = false;
};

struct VerifyArgs {
  std::string in;
  std::string basis;
  TermOrder order = TermOrder::Grevlex;
  std::string point;
  bool oracle = false;
};

struct BenchArgs {
  std::vector<std::string> shapes;
  std::vector<uint64_t> seeds = {1, 2, 3};
  std::vector<std::string> algorithms = {"m5gb", "sb"};
  uint64_t p = 101;
  TermOrder order = TermOrder::Grevlex;
  SigOrderKind sig = SigOrderKind::POT;
  unsigned threads = 1;
  bool cross_check = false;
  std::string out;
};

struct CompareArgs {
  std::string in;
  std::vector<std::string> algorithms = {"m5gb", "sb", "buchberger"};
  TermOrder order = TermOrder::Grevlex;
  SigOrderKind sig = SigOrderKind::POT;
};

void write_lines_or_stdout(const std::string& path, const Ring& ring,
                           const std::vector<Polynomial>& polys) {
  if (path.empty()) {
    write_basis(std::cout, ring, polys);
  } else {
    write_basis_file(path, ring, polys);
  }
}

int do_gen(const GenArgs& a) {
  Ring ring(PrimeField(a.p), a.n, TermOrder::Grevlex);
  GeneratedSystem sys = gen_system(ring, a.m, a.seed);
  write_system_file(a.out, ring, sys.polys);
  if (!a.point_out.empty()) write_point_file(a.point_out, sys.point);
  std::cerr << "wrote " << sys.polys.size() << " polynomials in " << a.n << " variables to "
            << a.out << "\n";
  return 0;
}

int do_solve(const SolveArgs& a) {
  SystemFile file = read_system_file(a.in, a.order);
  if (file.polys.empty()) throw std::runtime_error("input system has no polynomials");
  Ring ring(PrimeField(file.p), file.nvars, a.order);
  SolverOptions opt;
  opt.check_invariants = a.check_invariants;
  SolveResult res = run_algorithm(a.algorithm, ring, a.sig, file.polys, opt);
  std::vector<Polynomial> out_basis = a.raw ? res.basis : interreduce(ring, res.basis);
  write_lines_or_stdout(a.out, ring, out_basis);
  if (!a.stats_out.empty()) {
    std::string json =
        format_stats_json(res.stats, a.algorithm, file.nvars,
                          static_cast<uint32_t>(file.polys.size()), file.p, std::nullopt);
    std::ofstream sf(a.stats_out);
    if (!sf) throw std::runtime_error("cannot open '" + a.stats_out + "' for writing");
    sf << json;
  }
  std::cerr << "basis elements: " << res.stats.basis_size
            << " (written: " << out_basis.size() << "), wall time: " << res.stats.wall_time_ms
            << " ms\n";
  return 0;
}

int do_verify(const VerifyArgs& a) {
  SystemFile sys = read_system_file(a.in, a.order);
  SystemFile gb = read_system_file(a.basis, a.order);
  if (sys.p != gb.p) throw std::runtime_error("system and basis use different moduli");
  if (sys.nvars != gb.nvars) {
    throw std::runtime_error("system and basis use different variable counts");
  }
  if (sys.polys.empty() || gb.polys.empty()) {
    throw std::runtime_error("empty system or basis");
  }
  Ring ring(PrimeField(sys.p), sys.nvars, a.order);
  bool ok = true;
  auto report = [&ok](bool pass, const std::string& what) {
    std::cout << (pass ? "ok: " : "FAIL: ") << what << "\n";
    ok = ok && pass;
  };

  report(is_groebner(ring, gb.polys), "every S-polynomial of the basis reduces to zero");

  bool contained = true;
  for (const Polynomial& f : sys.polys) {
    if (!reduce_ordinary(ring, f, gb.polys).is_zero()) {
      contained = false;
      break;
    }
  }
  report(contained, "every input polynomial reduces to zero against the basis");

  if (!a.point.empty()) {
    std::vector<FieldElement> point = read_point_file(a.point, ring.field, ring.nvars);
    report(vanishes_at(ring, sys.polys, point), "the point is a root of the input system");
    report(vanishes_at(ring, gb.polys, point), "the point is a root of the basis");
  }
  if (a.oracle) {
    std::vector<Polynomial> reference = buchberger(ring, sys.polys);
    report(reduced_gb_equal(ring, reference, gb.polys),
           "basis matches an independently computed basis of the input ideal");
  }
  return ok ? 0 : 1;
}

std::vector<std::pair<uint32_t, uint32_t>> parse_shapes(const std::vector<std::string>& raw) {
  std::vector<std::pair<uint32_t, uint32_t>> shapes;
  for (const std::string& s : raw) {
    size_t x = s.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= s.size()) {
      throw std::runtime_error("shape '" + s + "' is not of the form <vars>x<polys>");
    }
    shapes.emplace_back(static_cast<uint32_t>(std::stoul(s.substr(0, x))),
                        static_cast<uint32_t>(std::stoul(s.substr(x + 1))));
  }
  return shapes;
}

int do_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.p = a.p;
  cfg.order = a.order;
  cfg.sig_kind = a.sig;
  cfg.shapes = parse_shapes(a.shapes);
  cfg.seeds = a.seeds;
  cfg.algorithms = a.algorithms;
  cfg.cross_check = a.cross_check;
  cfg.threads = a.threads;
  BenchResult res = run_bench(cfg);
  if (a.out.empty()) {
    std::cout << bench_csv(res);
  } else {
    write_bench_csv(a.out, res);
    std::cerr << "wrote " << res.rows.size() << " rows to " << a.out << "\n";
  }
  return 0;
}

int do_compare(const CompareArgs& a) {
  SystemFile file = read_system_file(a.in, a.order);
  if (file.polys.empty()) throw std::runtime_error("input system has no polynomials");
  Ring ring(PrimeField(file.p), file.nvars, a.order);
  std::vector<SolveResult> results;
  results.reserve(a.algorithms.size());
  for (const std::string& name : a.algorithms) {
    results.push_back(run_algorithm(name, ring, a.sig, file.polys));
  }
  std::printf("%-12s %14s %12s %16s %18s %16s\n", "algorithm", "wall_time_ms", "basis_size",
              "reduction_steps", "spairs_processed", "zero_reductions");
  for (size_t i = 0; i < results.size(); ++i) {
    const RunStats& st = results[i].stats;
    std::printf("%-12s %14.3f %12llu %16llu %18llu %16llu\n", a.algorithms[i].c_str(),
                st.wall_time_ms, static_cast<unsigned long long>(st.basis_size),
                static_cast<unsigned long long>(st.reduction_steps),
                static_cast<unsigned long long>(st.spairs_processed),
                static_cast<unsigned long long>(st.zero_reductions));
  }
  bool agree = true;
  for (size_t i = 1; i < results.size(); ++i) {
    if (!reduced_gb_equal(ring, results[0].basis, results[i].basis)) {
      agree = false;
      std::printf("DISAGREEMENT: %s and %s produce different reduced bases\n",
                  a.algorithms[0].c_str(), a.algorithms[i].c_str());
    }
  }
  if (agree && results.size() > 1) std::printf("all reduced bases agree\n");
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner basis toolkit for polynomial systems over prime fields"};
  app.require_subcommand(1);
  bool track_memory = false;
  app.add_flag("--track-memory", track_memory, "Print peak heap usage to stderr on exit");

  GenArgs gen;
  CLI::App* cgen = app.add_subcommand("gen", "Generate a random quadratic system with a known root");
  cgen->add_option("--n", gen.n, "Number of variables")->required()->check(CLI::Range(1u, 32u));
  cgen->add_option("--m", gen.m, "Number of polynomials")->required()->check(CLI::PositiveNumber);
  cgen->add_option("--p", gen.p, "Field modulus (odd prime)");
  cgen->add_option("--seed", gen.seed, "Generator seed");
  cgen->add_option("--out", gen.out, "Output system file")->required();
  cgen->add_option("--point-out", gen.point_out, "Write the planted root here");

  SolveArgs solve;
  CLI::App* csolve = app.add_subcommand("solve", "Compute a Groebner basis of a system file");
  csolve->add_option("--in", solve.in, "Input system file")->required();
  csolve->add_option("--algorithm", solve.algorithm, "Engine to run")
      ->check(CLI::IsMember(known_algorithms()));
  csolve->add_option("--order", solve.order, "Monomial order")
      ->transform(CLI::CheckedTransformer(kOrderNames));
  csolve->add_option("--sig-order", solve.sig, "Module signature order")
      ->transform(CLI::CheckedTransformer(kSigNames));
  csolve->add_option("--out", solve.out, "Basis output file (default stdout)");
  csolve->add_option("--stats", solve.stats_out, "Write run counters as JSON here");
  csolve->add_flag("--raw", solve.raw, "Emit the basis as computed, without interreduction");
  csolve->add_flag("--check-invariants", solve.check_invariants,
                   "Run expensive internal self-checks while solving");

  VerifyArgs verify;
  CLI::App* cverify = app.add_subcommand("verify", "Check a basis against a system file");
  cverify->add_option("--in", verify.in, "Input system file")->required();
  cverify->add_option("--basis", verify.basis, "Candidate basis file")->required();
  cverify->add_option("--order", verify.order, "Monomial order")
      ->transform(CLI::CheckedTransformer(kOrderNames));
  cverify->add_option("--point", verify.point, "Point file that should be a common root");
  cverify->add_flag("--oracle", verify.oracle,
                    "Also recompute the basis independently and compare (slow)");

  BenchArgs bench;
  CLI::App* cbench = app.add_subcommand("bench", "Run the benchmark grid and emit CSV");
  cbench->add_option("--shapes", bench.shapes, "Instances as <vars>x<polys>, e.g. 10x20")
      ->required()
      ->delimiter(',');
  cbench->add_option("--seeds", bench.seeds, "Generator seeds")->delimiter(',');
  cbench->add_option("--algorithms", bench.algorithms, "Engines to run")
      ->delimiter(',')
      ->check(CLI::IsMember(known_algorithms()));
  cbench->add_option("--p", bench.p, "Field modulus (odd prime)");
  cbench->add_option("--order", bench.order, "Monomial order")
      ->transform(CLI::CheckedTransformer(kOrderNames));
  cbench->add_option("--sig-order", bench.sig, "Module signature order")
      ->transform(CLI::CheckedTransformer(kSigNames));
  cbench->add_option("--threads", bench.threads, "Worker threads over instances")
      ->check(CLI::PositiveNumber);
  cbench->add_flag("--cross-check", bench.cross_check,
                   "Verify that all engines agree on every instance");
  cbench->add_option("--out", bench.out, "CSV output file (default stdout)");

  CompareArgs compare;
  CLI::App* ccompare = app.add_subcommand("compare", "Run several engines on one system");
  ccompare->add_option("--in", compare.in, "Input system file")->required();
  ccompare->add_option("--algorithms", compare.algorithms, "Engines to run")
      ->delimiter(',')
      ->check(CLI::IsMember(known_algorithms()));
  ccompare->add_option("--order", compare.order, "Monomial order")
      ->transform(CLI::CheckedTransformer(kOrderNames));
  ccompare->add_option("--sig-order", compare.sig, "Module signature order")
      ->transform(CLI::CheckedTransformer(kSigNames));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (track_memory) memtrack_enable();
  int rc = 2;
  try {
    if (cgen->parsed()) rc = do_gen(gen);
    if (csolve->parsed()) rc = do_solve(solve);
    if (cverify->parsed()) rc = do_verify(verify);
    if (cbench->parsed()) rc = do_bench(bench);
    if (ccompare->parsed()) rc = do_compare(compare);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 2;
  }
  if (track_memory) {
    std::cerr << "peak_alloc_bytes " << memtrack_peak_bytes() << "\n";
  }
  return rc;
}
