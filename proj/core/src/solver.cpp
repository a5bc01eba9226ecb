#include "m5gb/solver.hpp"

#include <cassert>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace m5gb {

// Temporary probe instrumentation, removed before release.
namespace probe {
uint64_t top_steps = 0, builder_steps = 0, refresh_steps = 0;
uint64_t builds = 0, refreshes_gen = 0, refreshes_flag = 0, hits = 0;
uint64_t reducer_scans = 0;
int mode = 0;  // 0 top, 1 builder, 2 refresh
void dump() {
  if (std::getenv("M5GB_PROBE") == nullptr) return;
  std::fprintf(stderr,
               "probe: top=%llu builder=%llu refresh=%llu builds=%llu refr_gen=%llu "
               "refr_flag=%llu hits=%llu scans=%llu\n",
               (unsigned long long)top_steps, (unsigned long long)builder_steps,
               (unsigned long long)refresh_steps, (unsigned long long)builds,
               (unsigned long long)refreshes_gen, (unsigned long long)refreshes_flag,
               (unsigned long long)hits, (unsigned long long)reducer_scans);
}
}  // namespace probe

SigSolver::SigSolver(const Ring& ring, SigOrderKind sig_kind, ReduceMode mode, SolverOptions opt)
    : ring_(ring),
      sig_order_{sig_kind, ring.order},
      mode_(mode),
      opt_(opt),
      queue_(QueueCmp{sig_order_}) {}

void SigSolver::start(const std::vector<Polynomial>& inputs) {
  if (started_) throw std::logic_error("solver already started");
  if (inputs.empty()) throw std::invalid_argument("empty input system");
  for (const Polynomial& f : inputs) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial in the input system");
    for (const Monomial& m : f.monomials()) {
      if (m.term.nvars() != ring_.nvars) {
        throw std::invalid_argument("input polynomial from a different ring");
      }
    }
  }
  inputs_ = inputs;
  syzygy_.assign(inputs.size(), {});
  for (uint32_t i = 0; i < inputs.size(); ++i) {
    queue_.push(QueueEntry{Signature{i, Term(ring_.nvars)}, i});
  }
  started_ = true;
}

bool SigSolver::step() {
  if (queue_.empty()) return false;
  const Signature s = queue_.top().sig;
  bool have_input = false;
  uint32_t input_index = 0;
  size_t popped = 0;
  while (!queue_.empty() && cmp_sig(sig_order_, queue_.top().sig, s) == std::strong_ordering::equal) {
    if (queue_.top().input != UINT32_MAX) {
      have_input = true;
      input_index = queue_.top().input;
    }
    queue_.pop();
    ++popped;
  }
  stats_.spairs_skipped_duplicate += popped - 1;
  if (any_round_ && cmp_sig(sig_order_, last_round_, s) != std::strong_ordering::less) {
    throw std::logic_error("round signatures must be strictly increasing");
  }
  any_round_ = true;
  last_round_ = s;
  if (syzygy_skip(s)) {
    ++stats_.spairs_skipped_syzygy;
    return true;
  }
  SigPoly elem;
  if (auto rw = canonical_rewriter(sig_order_, basis_, s)) {
    elem = SigPoly{s, mul_term(basis_[rw->basis_index].poly, rw->u)};
  } else {
    if (!have_input) {
      throw std::logic_error("round signature has neither a rewriter nor an input generator");
    }
    elem = SigPoly{s, inputs_[input_index]};
  }
  ++stats_.spairs_processed;
  SigPoly reduced = reduce(std::move(elem), s);
  if (reduced.poly.is_zero()) {
    insert_syzygy(s);
    ++stats_.zero_reductions;
  } else {
    update(std::move(reduced));
  }
  return true;
}

SolveResult SigSolver::run(const std::vector<Polynomial>& inputs) {
  auto t0 = std::chrono::steady_clock::now();
  start(inputs);
  while (step()) {
  }
  auto t1 = std::chrono::steady_clock::now();
  stats_.basis_size = basis_.size();
  stats_.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  probe::dump();
  if (std::getenv("M5GB_PROBE") != nullptr) {
    std::fprintf(stderr, "probe: term_info=%zu cache=%zu\n", term_info_.size(), cache_.size());
  }
  SolveResult res;
  res.stats = stats_;
  res.basis.reserve(basis_.size());
  for (const SigPoly& g : basis_) res.basis.push_back(g.poly);
  return res;
}

void SigSolver::update(SigPoly fprime) {
  if (fprime.poly.is_zero()) throw std::invalid_argument("zero polynomial appended to the basis");
  if (!basis_.empty() &&
      cmp_sig(sig_order_, basis_.back().sig, fprime.sig) != std::strong_ordering::less) {
    throw std::logic_error("basis signatures must be strictly increasing");
  }
  const uint32_t new_index = static_cast<uint32_t>(basis_.size());
  for (uint32_t j = 0; j < new_index; ++j) {
    auto rec = make_spair(sig_order_, fprime, new_index, basis_[j], j);
    if (rec) queue_.push(QueueEntry{rec->sig, UINT32_MAX});
  }
  const bool input_round = fprime.sig.term.is_one();
  const uint32_t slot = fprime.sig.index;
  lead_mask_.push_back(var_mask(fprime.poly.leading_term()));
  basis_.push_back(std::move(fprime));
  if (input_round && new_index > 0) {
    // The new generator e_slot pairs with every earlier basis element g to a
    // principal syzygy; its signature is the larger of the two module leads
    // unless they coincide, where the leading coefficients could cancel.
    if (slot >= inputs_.size()) throw std::logic_error("input generator index out of range");
    const Term& input_lead = inputs_[slot].leading_term();
    for (uint32_t j = 0; j < new_index; ++j) {
      const SigPoly& g = basis_[j];
      Signature a{slot, g.poly.leading_term()};
      Signature b = sig_mul(input_lead, g.sig);
      if (a == b) continue;
      insert_syzygy(cmp_sig(sig_order_, a, b) == std::strong_ordering::greater ? a : b);
    }
  }
}

SigPoly SigSolver::reduce(SigPoly f, const Signature& s) {
  if (mode_ == ReduceMode::Plain) return reduce_plain(std::move(f), s);
  std::vector<Term> targets;
  targets.reserve(f.poly.size());
  for (const Monomial& m : f.poly.monomials()) targets.push_back(m.term);
  return reduce_over(std::move(f), targets, s, full_slice());
}

namespace {

void require_descent(const Ring& ring, const std::vector<Term>& targets, const Term& from) {
  if (!targets.empty() &&
      cmp_terms(ring.order, targets.front(), from) != std::strong_ordering::less) {
    throw std::logic_error("recursive reduction does not descend below the processed term");
  }
}

}  // namespace

Accumulator& SigSolver::lease_slot(SigSolver& s, std::span<const Monomial> init) {
  if (s.work_depth_ == s.work_pool_.size()) {
    s.work_pool_.push_back(std::make_unique<Accumulator>(s.ring_));
  }
  Accumulator& work = *s.work_pool_[s.work_depth_++];
  work.reset(init);
  return work;
}

SigSolver::WorkLease::WorkLease(SigSolver& s, std::span<const Monomial> init)
    : solver(s), work(lease_slot(s, init)) {}

SigSolver::WorkLease::~WorkLease() { --solver.work_depth_; }

SigPoly SigSolver::reduce_over(SigPoly f, const std::vector<Term>& targets, const Signature& s,
                               Slice view) {
  std::vector<Monomial> settled;
  settled.reserve(f.poly.size());
  WorkLease lease(*this, f.poly.monomials());
  Accumulator& work = lease.work;
  for (const Term& t : targets) {
    const Monomial* head = work.peek();
    while (head != nullptr &&
           cmp_terms(ring_.order, head->term, t) == std::strong_ordering::greater) {
      settled.push_back(*head);  // above the current target, nothing revisits it
      work.pop();
      head = work.peek();
    }
    if (head == nullptr) break;        // every remaining target vanished
    if (!(head->term == t)) continue;  // this target's coefficient cancelled
    const FieldElement c = head->coeff;
    const Reductor* used = nullptr;
    if (auto it = cache_.find(t); it != cache_.end()) {
      if (it->second.checked_gen < basis_.size() && !tail_still_clean(it->second)) {
        // Built against a shorter basis: clear the tail against the new
        // elements, and against the old ones too when the flag says some old
        // reduction below s is available.
        ++probe::refreshes_gen;
        int saved = probe::mode;
        probe::mode = 2;
        Reductor m = std::move(it->second);
        cache_.erase(it);
        const bool old_flag_low = flag_below(m, s);
        const uint32_t k = m.gen;
        SigPoly mp{m.sigbound, std::move(m.poly)};
        {
          std::vector<Term> tt = tail_terms(mp.poly);
          require_descent(ring_, tt, t);
          mp = reduce_over(std::move(mp), tt, s, Slice{k, static_cast<uint32_t>(basis_.size())});
        }
        if (old_flag_low) {
          std::vector<Term> tt = tail_terms(mp.poly);
          require_descent(ring_, tt, t);
          mp = reduce_over(std::move(mp), tt, s, Slice{0, k});
        }
        used = &update_m(std::move(mp), s);
        probe::mode = saved;
      } else if (flag_below(it->second, s)) {
        // Current generation, but the round signature moved past the flag:
        // previously blocked tail reductions became eligible.
        ++probe::refreshes_flag;
        int saved = probe::mode;
        probe::mode = 2;
        Reductor m = std::move(it->second);
        cache_.erase(it);
        SigPoly mp{m.sigbound, std::move(m.poly)};
        std::vector<Term> tt = tail_terms(mp.poly);
        require_descent(ring_, tt, t);
        mp = reduce_over(std::move(mp), tt, s, full_slice());
        used = &update_m(std::move(mp), s);
        probe::mode = saved;
      } else {
        ++probe::hits;
        used = &it->second;
      }
    } else if (auto hit = find_reducer(t, view, s, /*use_memo=*/true)) {
      ++probe::builds;
      int saved = probe::mode;
      probe::mode = 1;
      SigPoly seed{hit->usig, mul_term(basis_[hit->basis_index].poly, hit->u)};
      std::vector<Term> tt = tail_terms(seed.poly);
      require_descent(ring_, tt, t);
      seed = reduce_over(std::move(seed), tt, s, full_slice());
      used = &update_m(std::move(seed), s);
      probe::mode = saved;
    }
    if (used == nullptr) {
      settled.push_back(*work.peek());  // irreducible below s: the term stays
      work.pop();
      continue;
    }
    // The reductor is monic with lead t, so the leads cancel exactly.
    work.pop();
    work.add_scaled(used->poly.monomials().subspan(1), ring_.field.neg(c));
    ++stats_.reduction_steps;
    (probe::mode == 0 ? probe::top_steps
                      : (probe::mode == 1 ? probe::builder_steps : probe::refresh_steps))++;
    if (cmp_sig(sig_order_, used->sigbound, f.sig) == std::strong_ordering::greater) {
      f.sig = used->sigbound;
    }
  }
  std::vector<Monomial> rest = work.drain();
  settled.insert(settled.end(), rest.begin(), rest.end());
  f.poly = Polynomial::from_sorted_unchecked(std::move(settled));
  if (opt_.check_invariants) check_normal_form(f, targets, s, view);
  return f;
}

SigPoly SigSolver::reduce_plain(SigPoly f, const Signature& s) {
  // Regular top-reduction: subtract eligible multiples until the leading term
  // settles, leaving the tail as it falls. This matches the classic signature
  // baseline; only the leads matter for pairs, syzygies and the final basis.
  WorkLease lease(*this, f.poly.monomials());
  Accumulator& work = lease.work;
  while (const Monomial* head = work.peek()) {
    auto hit = find_reducer(head->term, full_slice(), s, /*use_memo=*/false);
    if (!hit) break;
    const Polynomial& g = basis_[hit->basis_index].poly;
    FieldElement c = ring_.field.div(head->coeff, g.leading_coeff());
    work.pop();  // u*lead(g) equals the head term, so the leads cancel exactly
    work.add_scaled_mul(g.monomials().subspan(1), hit->u, ring_.field.neg(c));
    ++stats_.reduction_steps;
    if (cmp_sig(sig_order_, hit->usig, f.sig) == std::strong_ordering::greater) {
      f.sig = hit->usig;
    }
  }
  f.poly = Polynomial::from_sorted_unchecked(work.drain());
  return f;
}

std::optional<SigSolver::ReducerHit> SigSolver::find_reducer(const Term& t, Slice view,
                                                             const Signature& s, bool use_memo) {
  // The irreducibility memo covers the whole basis, so a negative answer rules
  // out every slice of it too.
  if (use_memo && !term_has_divisor(t)) return std::nullopt;
  std::optional<ReducerHit> best;
  probe::reducer_scans += view.hi - view.lo;
  const uint32_t tmask = var_mask(t);
  for (uint32_t k = view.lo; k < view.hi; ++k) {
    if ((lead_mask_[k] & ~tmask) != 0) continue;  // lead uses a variable t lacks
    const SigPoly& g = basis_[k];
    if (!term_divides(g.poly.leading_term(), t)) continue;
    Term u = term_quot(t, g.poly.leading_term());
    Signature usig = sig_mul(u, g.sig);
    if (cmp_sig(sig_order_, usig, s) != std::strong_ordering::less) continue;
    if (!best || cmp_sig(sig_order_, usig, best->usig) == std::strong_ordering::less) {
      best = ReducerHit{k, std::move(u), std::move(usig)};
    }
  }
  return best;
}

bool SigSolver::term_has_divisor(const Term& t) {
  TermInfo& info = term_info_[t];
  if (info.has_divisor) return true;
  const uint32_t size = static_cast<uint32_t>(basis_.size());
  const uint32_t tmask = var_mask(t);
  for (uint32_t k = info.div_stamp; k < size; ++k) {
    if ((lead_mask_[k] & ~tmask) != 0) continue;
    if (term_divides(basis_[k].poly.leading_term(), t)) {
      info.has_divisor = true;
      info.div_stamp = size;
      return true;
    }
  }
  info.div_stamp = size;
  return false;
}

uint32_t SigSolver::var_mask(const Term& t) {
  uint32_t m = 0;
  for (uint32_t i = 0; i < t.nvars(); ++i) {
    if (t.exponent(i) != 0) m |= 1u << i;
  }
  return m;
}

bool SigSolver::tail_still_clean(Reductor& r) {
  const uint32_t size = static_cast<uint32_t>(basis_.size());
  for (size_t i = 1; i < r.poly.size(); ++i) {
    const Term& t = r.poly[i].term;
    const uint32_t tmask = var_mask(t);
    for (uint32_t k = r.checked_gen; k < size; ++k) {
      if ((lead_mask_[k] & ~tmask) != 0) continue;
      if (term_divides(basis_[k].poly.leading_term(), t)) return false;
    }
  }
  r.checked_gen = size;
  return true;
}

bool SigSolver::flag_below(Reductor& r, const Signature& s) {
  if (r.flag_state == Reductor::FlagState::Infinite) return false;
  if (r.flag_state == Reductor::FlagState::Deferred) {
    Signature best = Signature::infinity();
    for (size_t i = 1; i < r.poly.size(); ++i) {
      Signature tf = term_flag_cached(r.poly[i].term, r.gen);
      if (cmp_sig(sig_order_, tf, best) == std::strong_ordering::less) best = tf;
    }
    r.flag = best;
    r.flag_state =
        best.is_infinite() ? Reductor::FlagState::Infinite : Reductor::FlagState::Known;
    if (r.flag_state == Reductor::FlagState::Infinite) return false;
  }
  return cmp_sig(sig_order_, r.flag, s) == std::strong_ordering::less;
}

Signature SigSolver::term_flag_cached(const Term& t, uint32_t prefix) {
  auto it = term_info_.find(t);
  if (it != term_info_.end() && it->second.flag_known && it->second.flag_stamp == prefix) {
    return it->second.flag;
  }
  uint32_t from = 0;
  Signature best = Signature::infinity();
  if (it != term_info_.end() && it->second.flag_known && it->second.flag_stamp < prefix) {
    best = it->second.flag;  // exact for the shorter prefix; extend over the delta
    from = it->second.flag_stamp;
  }
  const uint32_t tmask = var_mask(t);
  for (uint32_t k = from; k < prefix; ++k) {
    if ((lead_mask_[k] & ~tmask) != 0) continue;
    const SigPoly& g = basis_[k];
    if (!term_divides(g.poly.leading_term(), t)) continue;
    Signature cand = sig_mul(term_quot(t, g.poly.leading_term()), g.sig);
    if (cmp_sig(sig_order_, cand, best) == std::strong_ordering::less) best = cand;
  }
  if (it == term_info_.end()) it = term_info_.emplace(t, TermInfo{}).first;
  if (!it->second.flag_known || it->second.flag_stamp <= prefix) {
    it->second.flag_known = true;
    it->second.flag_stamp = prefix;
    it->second.flag = best;
  }
  return best;
}

Signature SigSolver::flag_of_term(const Term& t, uint32_t prefix) const {
  if (prefix > basis_.size()) throw std::invalid_argument("prefix exceeds basis size");
  Signature best = Signature::infinity();
  for (uint32_t k = 0; k < prefix; ++k) {
    const SigPoly& g = basis_[k];
    if (!term_divides(g.poly.leading_term(), t)) continue;
    Signature cand = sig_mul(term_quot(t, g.poly.leading_term()), g.sig);
    if (cmp_sig(sig_order_, cand, best) == std::strong_ordering::less) best = cand;
  }
  return best;
}

Reductor& SigSolver::update_m(SigPoly mprime, const Signature& s) {
  if (mprime.poly.is_zero()) {
    throw std::logic_error("zero polynomial offered to the reductor cache");
  }
  if (cmp_sig(sig_order_, mprime.sig, s) != std::strong_ordering::less) {
    throw std::logic_error("reductor signature bound not below the round signature");
  }
  Reductor r;
  r.sigbound = mprime.sig;
  r.poly = make_monic(ring_, mprime.poly);
  r.gen = static_cast<uint32_t>(basis_.size());
  r.checked_gen = r.gen;
  bool any_tail_divisor = false;
  for (size_t i = 1; i < r.poly.size(); ++i) {
    if (term_has_divisor(r.poly[i].term)) {
      any_tail_divisor = true;
      break;
    }
  }
  r.flag_state =
      any_tail_divisor ? Reductor::FlagState::Deferred : Reductor::FlagState::Infinite;
  if (opt_.check_invariants && any_tail_divisor && flag_below(r, s)) {
    throw std::logic_error("freshly cached reductor has a tail reduction below the round signature");
  }
  Term lead = r.poly.leading_term();
  auto [it, inserted] = cache_.emplace(std::move(lead), std::move(r));
  if (!inserted) throw std::logic_error("leading-term collision in the reductor cache");
  return it->second;
}

bool SigSolver::syzygy_skip(const Signature& s) const {
  if (s.index >= syzygy_.size()) return false;
  for (const Term& h : syzygy_[s.index]) {
    if (term_divides(h, s.term)) return true;
  }
  return false;
}

void SigSolver::insert_syzygy(const Signature& s) {
  if (s.index >= syzygy_.size()) syzygy_.resize(s.index + 1);
  auto& bucket = syzygy_[s.index];
  for (const Term& h : bucket) {
    if (term_divides(h, s.term)) return;  // already covered
  }
  std::erase_if(bucket, [&](const Term& h) { return term_divides(s.term, h); });
  bucket.push_back(s.term);
}

void SigSolver::check_normal_form(const SigPoly& f, const std::vector<Term>& targets,
                                  const Signature& s, Slice view) {
  for (const Term& t : targets) {
    if (coeff_of(ring_, f.poly, t).is_zero()) continue;
    if (find_reducer(t, view, s, /*use_memo=*/true)) {
      throw std::logic_error("reduction left a target term reducible below the round signature");
    }
  }
}

std::vector<Term> SigSolver::tail_terms(const Polynomial& p) {
  std::vector<Term> tt;
  if (p.size() <= 1) return tt;
  tt.reserve(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) tt.push_back(p[i].term);
  return tt;
}

const Reductor* SigSolver::cache_find(const Term& lead) const {
  auto it = cache_.find(lead);
  return it == cache_.end() ? nullptr : &it->second;
}

std::vector<Signature> SigSolver::syzygy_signatures() const {
  std::vector<Signature> out;
  for (uint32_t i = 0; i < syzygy_.size(); ++i) {
    for (const Term& h : syzygy_[i]) out.push_back(Signature{i, h});
  }
  return out;
}

SolveResult m5gb_run(const Ring& ring, SigOrderKind sig_kind,
                     const std::vector<Polynomial>& inputs, const SolverOptions& opt) {
  SigSolver solver(ring, sig_kind, ReduceMode::TailCached, opt);
  return solver.run(inputs);
}

}  // namespace m5gb
