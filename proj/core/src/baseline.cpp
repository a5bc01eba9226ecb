#include "m5gb/baseline.hpp"

#include <chrono>
#include <stdexcept>

namespace m5gb {

namespace {

struct CriticalPair {
  uint32_t i;
  uint32_t j;
  Term lcm;
};

// Normal strategy order: lcm degree, then term order on the lcm, then indices.
bool pair_before(const Ring& ring, const CriticalPair& a, const CriticalPair& b) {
  if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
  auto cmp = cmp_terms(ring.order, a.lcm, b.lcm);
  if (cmp != std::strong_ordering::equal) return cmp == std::strong_ordering::less;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

}  // namespace

SolveResult buchberger_run(const Ring& ring, const std::vector<Polynomial>& inputs) {
  auto t0 = std::chrono::steady_clock::now();
  if (inputs.empty()) throw std::invalid_argument("empty input system");
  for (const Polynomial& f : inputs) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial in the input system");
    for (const Monomial& m : f.monomials()) {
      if (m.term.nvars() != ring.nvars) {
        throw std::invalid_argument("input polynomial from a different ring");
      }
    }
  }
  RunStats stats{};
  std::vector<Polynomial> basis = inputs;
  std::vector<CriticalPair> pairs;
  auto push_pairs_for = [&](uint32_t k) {
    const Term& lk = basis[k].leading_term();
    for (uint32_t i = 0; i < k; ++i) {
      const Term& li = basis[i].leading_term();
      Term l = term_lcm(li, lk);
      if (l.degree() == li.degree() + lk.degree()) {
        ++stats.spairs_skipped_syzygy;  // coprime leads: S-pair reduces to zero
        continue;
      }
      pairs.push_back({i, k, std::move(l)});
    }
  };
  for (uint32_t k = 0; k < basis.size(); ++k) push_pairs_for(k);

  while (!pairs.empty()) {
    size_t best = 0;
    for (size_t p = 1; p < pairs.size(); ++p) {
      if (pair_before(ring, pairs[p], pairs[best])) best = p;
    }
    CriticalPair pr = std::move(pairs[best]);
    pairs.erase(pairs.begin() + static_cast<ptrdiff_t>(best));

    const Polynomial& f = basis[pr.i];
    const Polynomial& g = basis[pr.j];
    Term u = term_quot(pr.lcm, f.leading_term());
    Term v = term_quot(pr.lcm, g.leading_term());
    Polynomial uf = scale(ring, mul_term(f, u), ring.field.inv(f.leading_coeff()));
    Polynomial spoly = sub_scaled(ring, uf, ring.field.inv(g.leading_coeff()), mul_term(g, v));
    ++stats.reduction_steps;  // forming the S-polynomial is one subtraction
    ++stats.spairs_processed;
    Polynomial h = reduce_ordinary(ring, spoly, basis, nullptr, &stats.reduction_steps);
    if (h.is_zero()) {
      ++stats.zero_reductions;
      continue;
    }
    const uint32_t k = static_cast<uint32_t>(basis.size());
    basis.push_back(std::move(h));
    push_pairs_for(k);
  }

  auto t1 = std::chrono::steady_clock::now();
  stats.basis_size = basis.size();
  stats.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return {std::move(basis), stats};
}

std::vector<Polynomial> buchberger(const Ring& ring, const std::vector<Polynomial>& inputs) {
  return buchberger_run(ring, inputs).basis;
}

SolveResult sb_run(const Ring& ring, SigOrderKind sig_kind, const std::vector<Polynomial>& inputs,
                   const SolverOptions& opt) {
  SigSolver solver(ring, sig_kind, ReduceMode::Plain, opt);
  return solver.run(inputs);
}

}  // namespace m5gb
