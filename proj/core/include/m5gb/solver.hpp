#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "m5gb/poly.hpp"
#include "m5gb/sig.hpp"
#include "m5gb/stats.hpp"

namespace m5gb {

struct SolverOptions {
  /// Turns on the expensive self-checks: normal-form scans after every
  /// reduction and flag materialization right after every cache insert.
  /// Violations throw std::logic_error. Cheap structural checks (signature
  /// monotonicity, unique cache leads, descent) are always on.
  bool check_invariants = false;
};

/// Which reduction routine the shared signature-driven loop uses. The queue,
/// syzygy pruning, and rewriter selection are identical in both modes, so any
/// difference in work done is attributable to the reducer alone.
enum class ReduceMode {
  TailCached,  // cached tail-irreducible reductors with generations and flags
  Plain,       // regular top-reduction of the lead only, tails left as they fall
};

/// Cache entry: a monic multiple of a basis element whose tail was irreducible
/// up to some round signature when it was built. Keyed by leading term.
struct Reductor {
  enum class FlagState {
    Infinite,  // no tail term had any divisor among the first `gen` leads
    Deferred,  // some tail term has a divisor; exact flag not computed yet
    Known,     // `flag` holds the exact value
  };

  Signature sigbound;  // upper bound on the module signature of this element
  Polynomial poly;     // monic
  uint32_t gen = 0;    // basis size when this entry was (re)built
  // Basis size up to which the tail is known to have no divisor among leads
  // [gen, checked_gen). Lets a hit verify only the leads added since the last
  // look instead of rebuilding; a clean scan equals a refresh that found
  // nothing to do.
  uint32_t checked_gen = 0;
  FlagState flag_state = FlagState::Infinite;
  // Smallest signature of any tail reduction available from the first `gen`
  // basis elements; meaningful when flag_state == Known.
  Signature flag;
};

struct SolveResult {
  std::vector<Polynomial> basis;
  RunStats stats;
};

/// Signature-driven basis computation. Rounds pop the minimal queue signature,
/// drop duplicates, skip known syzygy multiples, reduce the canonical
/// rewriter's element, and either record a syzygy signature or extend the
/// basis (appending critical pairs and, for input rounds, the pairwise
/// syzygy signatures of the new generator with the existing basis).
class SigSolver {
 public:
  SigSolver(const Ring& ring, SigOrderKind sig_kind, ReduceMode mode, SolverOptions opt = {});

  /// Validates inputs (nonempty, all nonzero) and runs to completion.
  SolveResult run(const std::vector<Polynomial>& inputs);

  /// Stepwise driving, mostly for tests: seed the queue, then step() until false.
  void start(const std::vector<Polynomial>& inputs);
  bool step();

  /// Appends a finished element: enqueues its regular critical pairs with the
  /// existing basis, then inserts it. Requires a signature strictly above
  /// everything already in the basis.
  void update(SigPoly fprime);

  /// Full reduction of f at round signature s over the whole basis. In cached
  /// mode this builds and reuses tail-irreducible reductors; in plain mode it
  /// runs the textbook division loop.
  SigPoly reduce(SigPoly f, const Signature& s);

  /// Whether a recorded syzygy signature divides s.
  bool syzygy_skip(const Signature& s) const;

  /// Normalizes mprime to monic, computes its generation and (lazily) its
  /// flag, and inserts it into the cache. Duplicate leading terms are an
  /// error. `s` is the current round signature, used for the bound check.
  Reductor& update_m(SigPoly mprime, const Signature& s);

  /// Smallest u*sig(g) over the first `prefix` basis elements with lead
  /// dividing t; the infinite signature when none divides. Exact, no caching.
  Signature flag_of_term(const Term& t, uint32_t prefix) const;

  const Ring& ring() const { return ring_; }
  const SigOrder& sig_order() const { return sig_order_; }
  const std::vector<SigPoly>& basis() const { return basis_; }
  const Reductor* cache_find(const Term& lead) const;
  size_t cache_size() const { return cache_.size(); }
  /// All recorded syzygy signatures (minimal under divisibility).
  std::vector<Signature> syzygy_signatures() const;
  RunStats& stats() { return stats_; }

 private:
  struct Slice {
    uint32_t lo;
    uint32_t hi;
  };
  struct TermInfo {
    uint32_t div_stamp = 0;  // divisor bit is valid for the first div_stamp leads
    bool has_divisor = false;
    bool flag_known = false;
    uint32_t flag_stamp = 0;  // cached flag is exact for the first flag_stamp leads
    Signature flag;
  };
  struct ReducerHit {
    uint32_t basis_index;
    Term u;
    Signature usig;
  };
  // Queue entries carry only what a round consumes: the signature, and the
  // input slot when the record stands for an original generator. Critical
  // pairs need no multipliers here; the rewriter re-derives its own element.
  struct QueueEntry {
    Signature sig;
    uint32_t input = UINT32_MAX;  // UINT32_MAX when not an input record
  };
  struct QueueCmp {
    SigOrder order;
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
      return cmp_sig(order, a.sig, b.sig) == std::strong_ordering::greater;
    }
  };

  Slice full_slice() const { return {0, static_cast<uint32_t>(basis_.size())}; }

  SigPoly reduce_over(SigPoly f, const std::vector<Term>& targets, const Signature& s, Slice view);
  SigPoly reduce_plain(SigPoly f, const Signature& s);

  /// Eligible reducer of t within the basis slice: lead divides t and
  /// u*sig(g) < s. Picks the smallest u*sig(g), ties by insertion index.
  std::optional<ReducerHit> find_reducer(const Term& t, Slice view, const Signature& s,
                                         bool use_memo);

  /// Whether any basis lead divides t; memoized against basis growth.
  bool term_has_divisor(const Term& t);

  /// Bit i set when the term uses variable i. A lead can only divide terms
  /// whose mask covers its own, which filters most scan entries cheaply.
  static uint32_t var_mask(const Term& t);

  /// Scans the reductor's tail against the basis leads added since its last
  /// check. Clean means no new lead divides any tail term, so the entry is
  /// still tail-irreducible as built and checked_gen advances; dirty means a
  /// real refresh is due. A clean advance equals a refresh that found nothing.
  bool tail_still_clean(Reductor& r);

  /// Compares the reductor's flag with s, materializing a deferred flag first.
  bool flag_below(Reductor& r, const Signature& s);
  Signature term_flag_cached(const Term& t, uint32_t prefix);

  void insert_syzygy(const Signature& s);
  void check_normal_form(const SigPoly& f, const std::vector<Term>& targets, const Signature& s,
                         Slice view);
  static std::vector<Term> tail_terms(const Polynomial& p);

  /// Hands out the accumulator for the current reduction depth, so recursive
  /// reductor builds get their own working state while the tables and heaps
  /// stay allocated across calls.
  struct WorkLease {
    SigSolver& solver;
    Accumulator& work;
    WorkLease(SigSolver& s, std::span<const Monomial> init);
    ~WorkLease();
  };
  static Accumulator& lease_slot(SigSolver& s, std::span<const Monomial> init);

  Ring ring_;
  SigOrder sig_order_;
  ReduceMode mode_;
  SolverOptions opt_;

  std::vector<Polynomial> inputs_;
  std::vector<SigPoly> basis_;
  std::vector<uint32_t> lead_mask_;  // var_mask of each basis lead, same order
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueCmp> queue_;
  std::vector<std::vector<Term>> syzygy_;  // bucketed by generator slot
  std::unordered_map<Term, Reductor, TermHash> cache_;
  std::unordered_map<Term, TermInfo, TermHash> term_info_;
  std::vector<std::unique_ptr<Accumulator>> work_pool_;  // one accumulator per depth
  size_t work_depth_ = 0;
  RunStats stats_;

  bool started_ = false;
  bool any_round_ = false;
  Signature last_round_;
};

/// Basis computation with the cached-reductor engine.
SolveResult m5gb_run(const Ring& ring, SigOrderKind sig_kind,
                     const std::vector<Polynomial>& inputs, const SolverOptions& opt = {});

}  // namespace m5gb
