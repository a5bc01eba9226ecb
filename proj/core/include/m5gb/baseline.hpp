#pragma once

#include "m5gb/solver.hpp"

namespace m5gb {

/// Textbook Buchberger with the normal selection strategy: pick the pair whose
/// lcm has the smallest degree (ties by term order on the lcm, then by pair
/// indices), skip pairs with coprime leading terms, reduce the S-polynomial
/// fully against the current basis. Returns the raw basis: the inputs plus
/// every nonzero remainder, in discovery order, not interreduced.
std::vector<Polynomial> buchberger(const Ring& ring, const std::vector<Polynomial>& inputs);

/// Same computation with counters and wall time. Skipped coprime pairs are
/// reported as spairs_skipped_syzygy; spairs_skipped_duplicate stays zero.
SolveResult buchberger_run(const Ring& ring, const std::vector<Polynomial>& inputs);

/// The signature loop with the classic reducer: regular top-reduction only,
/// no reductor cache, tails kept as they fall. Same queue, syzygy pruning, and
/// rewriter selection as the cached engine, so the two are directly comparable.
SolveResult sb_run(const Ring& ring, SigOrderKind sig_kind, const std::vector<Polynomial>& inputs,
                   const SolverOptions& opt = {});

}  // namespace m5gb
