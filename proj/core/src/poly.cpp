#include "m5gb/poly.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace m5gb {

Ring::Ring(PrimeField f, uint32_t n, TermOrder o) : field(f), nvars(n), order(o) {
  if (n < 1 || n > kMaxVars) {
    throw std::invalid_argument("variable count must be in [1, " +
                                std::to_string(kMaxVars) + "], got " + std::to_string(n));
  }
}

Polynomial Polynomial::from_monomials(const Ring& ring, std::vector<Monomial> monos) {
  for (const Monomial& m : monos) {
    if (m.term.nvars() != ring.nvars) {
      throw std::invalid_argument("monomial with wrong variable count");
    }
  }
  std::sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) {
    return cmp_terms(ring.order, a.term, b.term) == std::strong_ordering::greater;
  });
  std::vector<Monomial> out;
  out.reserve(monos.size());
  size_t i = 0;
  while (i < monos.size()) {
    FieldElement sum = monos[i].coeff;
    size_t j = i + 1;
    while (j < monos.size() && monos[j].term == monos[i].term) {
      sum = ring.field.add(sum, monos[j].coeff);
      ++j;
    }
    if (!sum.is_zero()) out.push_back({sum, monos[i].term});
    i = j;
  }
  Polynomial p;
  p.monos_ = std::move(out);
  return p;
}

Polynomial Polynomial::from_sorted_unchecked(std::vector<Monomial> monos) {
  Polynomial p;
  p.monos_ = std::move(monos);
  return p;
}

const Term& Polynomial::leading_term() const {
  if (monos_.empty()) throw std::logic_error("leading term of the zero polynomial");
  return monos_.front().term;
}

FieldElement Polynomial::leading_coeff() const {
  if (monos_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return monos_.front().coeff;
}

Polynomial Polynomial::tail() const {
  if (monos_.empty()) throw std::logic_error("tail of the zero polynomial");
  Polynomial p;
  p.monos_.assign(monos_.begin() + 1, monos_.end());
  return p;
}

uint32_t Polynomial::degree() const {
  if (monos_.empty()) throw std::logic_error("degree of the zero polynomial");
  uint32_t d = 0;
  for (const Monomial& m : monos_) d = std::max(d, m.term.degree());
  return d;
}

void sub_scaled_into(const Ring& ring, const Polynomial& f, FieldElement c, const Polynomial& g,
                     Polynomial& out) {
  std::vector<Monomial> merged;
  merged.reserve(f.size() + g.size());
  size_t i = 0, j = 0;
  while (i < f.size() && j < g.size()) {
    auto cmp = cmp_terms(ring.order, f[i].term, g[j].term);
    if (cmp == std::strong_ordering::greater) {
      merged.push_back(f[i++]);
    } else if (cmp == std::strong_ordering::less) {
      FieldElement v = ring.field.neg(ring.field.mul(c, g[j].coeff));
      if (!v.is_zero()) merged.push_back({v, g[j].term});
      ++j;
    } else {
      FieldElement v = ring.field.sub(f[i].coeff, ring.field.mul(c, g[j].coeff));
      if (!v.is_zero()) merged.push_back({v, f[i].term});
      ++i;
      ++j;
    }
  }
  for (; i < f.size(); ++i) merged.push_back(f[i]);
  for (; j < g.size(); ++j) {
    FieldElement v = ring.field.neg(ring.field.mul(c, g[j].coeff));
    if (!v.is_zero()) merged.push_back({v, g[j].term});
  }
  out = Polynomial::from_sorted_unchecked(std::move(merged));
}

Polynomial sub_scaled(const Ring& ring, const Polynomial& f, FieldElement c, const Polynomial& g) {
  Polynomial out;
  sub_scaled_into(ring, f, c, g, out);
  return out;
}

Polynomial mul_term(const Polynomial& f, const Term& u) {
  std::vector<Monomial> monos;
  monos.reserve(f.size());
  for (const Monomial& m : f.monomials()) {
    monos.push_back({m.coeff, term_mul(m.term, u)});
  }
  return Polynomial::from_sorted_unchecked(std::move(monos));
}

Polynomial scale(const Ring& ring, const Polynomial& f, FieldElement c) {
  if (c.is_zero()) return Polynomial();
  std::vector<Monomial> monos;
  monos.reserve(f.size());
  for (const Monomial& m : f.monomials()) {
    monos.push_back({ring.field.mul(m.coeff, c), m.term});
  }
  return Polynomial::from_sorted_unchecked(std::move(monos));
}

Polynomial make_monic(const Ring& ring, const Polynomial& f) {
  if (f.is_zero() || f.leading_coeff() == ring.field.one()) return f;
  return scale(ring, f, ring.field.inv(f.leading_coeff()));
}

Polynomial renormalize(const Ring& ring, const Polynomial& f) {
  std::vector<Monomial> monos(f.monomials().begin(), f.monomials().end());
  return Polynomial::from_monomials(ring, std::move(monos));
}

FieldElement evaluate(const Ring& ring, const Polynomial& f, std::span<const FieldElement> point) {
  if (point.size() != ring.nvars) {
    throw std::invalid_argument("evaluation point has wrong dimension");
  }
  FieldElement acc = ring.field.zero();
  for (const Monomial& m : f.monomials()) {
    FieldElement v = m.coeff;
    for (uint32_t i = 0; i < ring.nvars; ++i) {
      uint16_t e = m.term.exponent(i);
      if (e != 0) v = ring.field.mul(v, ring.field.pow(point[i], e));
    }
    acc = ring.field.add(acc, v);
  }
  return acc;
}

FieldElement coeff_of(const Ring& ring, const Polynomial& f, const Term& t) {
  auto span = f.monomials();
  auto it = std::lower_bound(span.begin(), span.end(), t, [&](const Monomial& m, const Term& key) {
    return cmp_terms(ring.order, m.term, key) == std::strong_ordering::greater;
  });
  if (it != span.end() && it->term == t) return it->coeff;
  return ring.field.zero();
}

GeoBucket::GeoBucket(const Ring& ring, std::span<const Monomial> init) : ring_(ring) {
  if (!init.empty()) push(std::vector<Monomial>(init.begin(), init.end()));
}

const Monomial* GeoBucket::peek() {
  if (head_) return &*head_;
  while (true) {
    const Term* best = nullptr;
    for (const Run& r : runs_) {
      if (r.head == r.monos.size()) continue;
      const Term& t = r.monos[r.head].term;
      if (best == nullptr || cmp_terms(ring_.order, t, *best) == std::strong_ordering::greater) {
        best = &t;
      }
    }
    if (best == nullptr) return nullptr;
    const Term t = *best;  // copied: the heads holding it may advance below
    FieldElement sum = ring_.field.zero();
    for (const Run& r : runs_) {
      if (r.head < r.monos.size() && r.monos[r.head].term == t) {
        sum = ring_.field.add(sum, r.monos[r.head].coeff);
      }
    }
    if (sum.is_zero()) {
      advance(t);  // the runs cancelled each other here; the term is dead
      continue;
    }
    head_ = Monomial{sum, t};
    return &*head_;
  }
}

void GeoBucket::pop() {
  advance(head_->term);
  head_.reset();
}

void GeoBucket::add_scaled(std::span<const Monomial> p, FieldElement c) {
  if (p.empty() || c.is_zero()) return;
  std::vector<Monomial> run;
  run.reserve(p.size());
  for (const Monomial& m : p) run.push_back({ring_.field.mul(c, m.coeff), m.term});
  push(std::move(run));
  head_.reset();
}

void GeoBucket::add_scaled_mul(std::span<const Monomial> p, const Term& u, FieldElement c) {
  if (p.empty() || c.is_zero()) return;
  std::vector<Monomial> run;
  run.reserve(p.size());
  for (const Monomial& m : p) run.push_back({ring_.field.mul(c, m.coeff), term_mul(m.term, u)});
  push(std::move(run));
  head_.reset();
}

std::vector<Monomial> GeoBucket::drain() {
  std::vector<Monomial> out;
  while (const Monomial* m = peek()) {
    out.push_back(*m);
    pop();
  }
  return out;
}

void GeoBucket::push(std::vector<Monomial> run) {
  size_t level = 0;
  while (cap(level) < run.size()) ++level;
  while (true) {
    if (level >= runs_.size()) runs_.resize(level + 1);
    Run& slot = runs_[level];
    if (slot.head == slot.monos.size()) {
      slot.monos = std::move(run);
      slot.head = 0;
      return;
    }
    run = merged(slot, run);
    slot.monos.clear();
    slot.head = 0;
    if (run.empty()) return;
    if (run.size() <= cap(level)) {
      slot.monos = std::move(run);
      return;
    }
    ++level;
  }
}

std::vector<Monomial> GeoBucket::merged(const Run& a, const std::vector<Monomial>& b) const {
  std::vector<Monomial> out;
  out.reserve((a.monos.size() - a.head) + b.size());
  size_t i = a.head, j = 0;
  while (i < a.monos.size() && j < b.size()) {
    auto cmp = cmp_terms(ring_.order, a.monos[i].term, b[j].term);
    if (cmp == std::strong_ordering::greater) {
      out.push_back(a.monos[i++]);
    } else if (cmp == std::strong_ordering::less) {
      out.push_back(b[j++]);
    } else {
      FieldElement v = ring_.field.add(a.monos[i].coeff, b[j].coeff);
      if (!v.is_zero()) out.push_back({v, a.monos[i].term});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.monos.begin() + static_cast<ptrdiff_t>(i), a.monos.end());
  out.insert(out.end(), b.begin() + static_cast<ptrdiff_t>(j), b.end());
  return out;
}

void GeoBucket::advance(const Term& t) {
  for (Run& r : runs_) {
    if (r.head < r.monos.size() && r.monos[r.head].term == t) ++r.head;
  }
}

// TEMPORARY instrumentation for performance work; stripped before release.
namespace accprobe {
unsigned long long upserts, claims, probe_steps, pushes, pops, tie_cmps, grows, peak_live;
struct Dump {
  ~Dump() {
    if (std::getenv("M5GB_PROBE") == nullptr) return;
    std::fprintf(stderr,
                 "accum: upserts=%llu claims=%llu probe_steps=%llu pushes=%llu pops=%llu "
                 "tie_cmps=%llu grows=%llu peak_live=%llu\n",
                 upserts, claims, probe_steps, pushes, pops, tie_cmps, grows, peak_live);
  }
} dump;
}  // namespace accprobe

Accumulator::Accumulator(const Ring& ring) : ring_(ring), slots_(1024) {}

Accumulator::Accumulator(const Ring& ring, std::span<const Monomial> init) : Accumulator(ring) {
  reset(init);
}

void Accumulator::reset(std::span<const Monomial> init) {
  if (++epoch_ == 0) {
    // The epoch counter wrapped; wipe the stale marks so old slots cannot
    // masquerade as live ones.
    for (Slot& s : slots_) s.epoch = 0;
    epoch_ = 1;
  }
  heap_.clear();
  live_ = 0;
  head_valid_ = false;
  add_scaled(init, ring_.field.one());
}

uint64_t Accumulator::order_key(const Term& t) const {
  // A coarsening of the ring order: key(a) > key(b) implies a > b, so only
  // equal keys need the exact comparison. Lex packs the leading exponents;
  // grevlex packs the saturated degree and the complemented trailing
  // exponents, where a smaller trailing exponent means a larger term.
  const uint32_t n = t.nvars();
  uint64_t key = 0;
  if (ring_.order == TermOrder::Lex) {
    for (uint32_t i = 0; i < 4; ++i) {
      key = key << 16 | (i < n ? t.exponent(i) : 0);
    }
    return key;
  }
  uint32_t deg = t.degree();
  key = deg < 0xffff ? deg : 0xffff;
  for (uint32_t i = 0; i < 3; ++i) {
    key = key << 16 | (i < n ? 0xffffu - t.exponent(n - 1 - i) : 0);
  }
  return key;
}

bool Accumulator::heap_below(const HeapEntry& a, const HeapEntry& b) const {
  if (a.key != b.key) return a.key < b.key;
  ++accprobe::tie_cmps;
  return cmp_terms(ring_.order, slots_[a.slot].key, slots_[b.slot].key) ==
         std::strong_ordering::less;
}

const Monomial* Accumulator::peek() {
  if (head_valid_) return &head_;
  auto below = [this](const HeapEntry& a, const HeapEntry& b) { return heap_below(a, b); };
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), below);
    ++accprobe::pops;
    const uint32_t i = heap_.back().slot;
    heap_.pop_back();
    Slot& s = slots_[i];
    s.queued = false;
    if (s.coeff.is_zero()) continue;  // cancelled while waiting in the heap
    head_ = Monomial{s.coeff, s.key};
    head_slot_ = i;
    head_valid_ = true;
    return &head_;
  }
  return nullptr;
}

void Accumulator::pop() {
  if (!head_valid_ && peek() == nullptr) return;
  // Consume the head. Everything added from here on lies strictly below it,
  // so the term never reappears and the slot can simply go dead.
  slots_[head_slot_].coeff = FieldElement{0};
  head_valid_ = false;
}

void Accumulator::add_scaled(std::span<const Monomial> p, FieldElement c) {
  for (const Monomial& m : p) {
    const uint32_t i = upsert(m.term);
    Slot& s = slots_[i];
    s.coeff = ring_.field.add(s.coeff, ring_.field.mul(m.coeff, c));
    if (!s.coeff.is_zero() && !s.queued) {
      s.queued = true;
      enqueue(i);
    }
  }
}

void Accumulator::add_scaled_mul(std::span<const Monomial> p, const Term& u, FieldElement c) {
  for (const Monomial& m : p) {
    const uint32_t i = upsert(term_mul(m.term, u));
    Slot& s = slots_[i];
    s.coeff = ring_.field.add(s.coeff, ring_.field.mul(m.coeff, c));
    if (!s.coeff.is_zero() && !s.queued) {
      s.queued = true;
      enqueue(i);
    }
  }
}

std::vector<Monomial> Accumulator::drain() {
  std::vector<Monomial> out;
  out.reserve(live_);
  while (const Monomial* h = peek()) {
    out.push_back(*h);
    pop();
  }
  return out;
}

uint32_t Accumulator::upsert(const Term& t) {
  ++accprobe::upserts;
  if ((live_ + 1) * 8 > slots_.size() * 5) grow();
  const size_t mask = slots_.size() - 1;
  size_t i = TermHash{}(t) & mask;
  for (;;) {
    ++accprobe::probe_steps;
    Slot& s = slots_[i];
    if (s.epoch != epoch_) {
      ++accprobe::claims;
      s.epoch = epoch_;
      s.key = t;
      s.coeff = FieldElement{0};
      s.queued = false;
      ++live_;
      if (live_ > accprobe::peak_live) accprobe::peak_live = live_;
      return static_cast<uint32_t>(i);
    }
    if (s.key == t) return static_cast<uint32_t>(i);
    i = (i + 1) & mask;
  }
}

void Accumulator::grow() {
  ++accprobe::grows;
  std::vector<Slot> old = std::move(slots_);
  slots_.assign(old.size() * 2, Slot{});
  std::vector<uint32_t> moved_to(old.size(), 0);
  const size_t mask = slots_.size() - 1;
  for (size_t k = 0; k < old.size(); ++k) {
    Slot& s = old[k];
    if (s.epoch != epoch_) continue;
    size_t i = TermHash{}(s.key) & mask;
    while (slots_[i].epoch == epoch_) i = (i + 1) & mask;
    slots_[i] = std::move(s);
    moved_to[k] = static_cast<uint32_t>(i);
  }
  // Slot indices moved; patch the heap (keys are unchanged, so the heap
  // shape stays valid) and the cached head.
  for (HeapEntry& e : heap_) e.slot = moved_to[e.slot];
  if (head_valid_) head_slot_ = moved_to[head_slot_];
}

void Accumulator::enqueue(uint32_t slot) {
  ++accprobe::pushes;
  heap_.push_back(HeapEntry{order_key(slots_[slot].key), slot});
  std::push_heap(heap_.begin(), heap_.end(),
                 [this](const HeapEntry& a, const HeapEntry& b) { return heap_below(a, b); });
}

namespace {

// Smallest leading term among divisors of t, ties broken by list position.
std::optional<size_t> pick_ordinary_divisor(const Ring& ring, const Term& t,
                                            std::span<const Polynomial> divisors) {
  std::optional<size_t> best;
  for (size_t k = 0; k < divisors.size(); ++k) {
    const Polynomial& g = divisors[k];
    if (!term_divides(g.leading_term(), t)) continue;
    if (!best ||
        cmp_terms(ring.order, g.leading_term(), divisors[*best].leading_term()) ==
            std::strong_ordering::less) {
      best = k;
    }
  }
  return best;
}

}  // namespace

Polynomial reduce_ordinary(const Ring& ring, const Polynomial& f,
                           std::span<const Polynomial> divisors,
                           ReduceTrace* trace, uint64_t* steps) {
  for (const Polynomial& g : divisors) {
    if (g.is_zero()) throw std::invalid_argument("zero polynomial among divisors");
  }
  // Settled monomials are irreducible and strictly above everything live.
  std::vector<Monomial> settled;
  settled.reserve(f.size());
  GeoBucket work(ring, f.monomials());
  while (const Monomial* head = work.peek()) {
    auto pick = pick_ordinary_divisor(ring, head->term, divisors);
    if (!pick) {
      settled.push_back(*head);
      work.pop();
      continue;
    }
    const Polynomial& g = divisors[*pick];
    Term u = term_quot(head->term, g.leading_term());
    FieldElement c = ring.field.div(head->coeff, g.leading_coeff());
    work.pop();  // the leads cancel exactly; fold -c*u*tail(g) into the rest
    work.add_scaled_mul(g.monomials().subspan(1), u, ring.field.neg(c));
    if (steps) ++*steps;
    if (trace) trace->push_back({*pick, std::move(u), c});
  }
  return Polynomial::from_sorted_unchecked(std::move(settled));
}

std::vector<Polynomial> interreduce(const Ring& ring, std::span<const Polynomial> basis) {
  std::vector<Polynomial> monic;
  for (const Polynomial& g : basis) {
    if (!g.is_zero()) monic.push_back(make_monic(ring, g));
  }
  // Minimalize: keep ascending by leading term, drop anything whose lead an
  // earlier keeper divides (a divisor's lead is never larger than a multiple's).
  std::sort(monic.begin(), monic.end(), [&](const Polynomial& a, const Polynomial& b) {
    return cmp_terms(ring.order, a.leading_term(), b.leading_term()) == std::strong_ordering::less;
  });
  std::vector<Polynomial> kept;
  for (const Polynomial& g : monic) {
    bool covered = false;
    for (const Polynomial& k : kept) {
      if (term_divides(k.leading_term(), g.leading_term())) {
        covered = true;
        break;
      }
    }
    if (!covered) kept.push_back(g);
  }
  // Tail-reduce each element against all the others; leads are untouched
  // because no kept lead divides another.
  std::vector<Polynomial> out;
  out.reserve(kept.size());
  for (size_t i = 0; i < kept.size(); ++i) {
    std::vector<Polynomial> others;
    others.reserve(kept.size() - 1);
    for (size_t j = 0; j < kept.size(); ++j) {
      if (j != i) others.push_back(kept[j]);
    }
    out.push_back(make_monic(ring, reduce_ordinary(ring, kept[i], others)));
  }
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return cmp_terms(ring.order, a.leading_term(), b.leading_term()) == std::strong_ordering::less;
  });
  return out;
}

}  // namespace m5gb
