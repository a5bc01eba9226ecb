#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "m5gb/field.hpp"
#include "m5gb/term.hpp"

namespace m5gb {

/// Ambient context shared by all polynomial operations: coefficient field,
/// variable count, and the monomial order polynomials are kept sorted under.
struct Ring {
  PrimeField field;
  uint32_t nvars;
  TermOrder order;

  Ring(PrimeField f, uint32_t n, TermOrder o);
};

struct Monomial {
  FieldElement coeff;
  Term term;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Sparse polynomial: monomials strictly descending under the ring order,
/// coefficients nonzero. The empty list is the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;

  /// Normalizing constructor: sorts, merges duplicate terms, drops zeros.
  /// Validates that every term has the ring's variable count.
  static Polynomial from_monomials(const Ring& ring, std::vector<Monomial> monos);

  /// Wraps a list that is already strictly descending with nonzero coefficients.
  static Polynomial from_sorted_unchecked(std::vector<Monomial> monos);

  bool is_zero() const { return monos_.empty(); }
  size_t size() const { return monos_.size(); }
  const Monomial& operator[](size_t i) const { return monos_[i]; }
  std::span<const Monomial> monomials() const { return monos_; }

  /// Leading data; throw std::logic_error on the zero polynomial.
  const Term& leading_term() const;
  FieldElement leading_coeff() const;

  /// Everything below the leading monomial.
  Polynomial tail() const;

  uint32_t degree() const;  // max term degree; throws on zero

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Monomial> monos_;
};

/// f - c*g via one linear merge.
Polynomial sub_scaled(const Ring& ring, const Polynomial& f, FieldElement c, const Polynomial& g);

/// Same, writing into `out` (which may not alias f or g). Exposed for hot loops.
void sub_scaled_into(const Ring& ring, const Polynomial& f, FieldElement c, const Polynomial& g,
                     Polynomial& out);

/// u * f; term overflow is a hard error. Order is preserved (the orders are
/// multiplicative), so no re-sort happens.
Polynomial mul_term(const Polynomial& f, const Term& u);

Polynomial scale(const Ring& ring, const Polynomial& f, FieldElement c);

/// f / lc(f); identity on zero.
Polynomial make_monic(const Ring& ring, const Polynomial& f);

/// Re-sorts a polynomial that was built under a different ring order.
Polynomial renormalize(const Ring& ring, const Polynomial& f);

FieldElement evaluate(const Ring& ring, const Polynomial& f, std::span<const FieldElement> point);

/// Coefficient of t in f, zero when absent. Binary search on the sorted list.
FieldElement coeff_of(const Ring& ring, const Polynomial& f, const Term& t);

/// Working state of a long reduction: the polynomial lives as a small stack of
/// sorted runs with geometrically growing capacities. Subtracting a multiple
/// costs its own length plus amortized carry merges instead of a rebuild of
/// the whole tail, which is what keeps large reductions affordable.
class GeoBucket {
 public:
  GeoBucket(const Ring& ring, std::span<const Monomial> init);

  /// Largest live term with its combined coefficient, nullptr when empty.
  /// Valid until the next pop or add.
  const Monomial* peek();
  /// Removes the monomial peek() returned.
  void pop();
  /// Adds c times a strictly descending monomial list.
  void add_scaled(std::span<const Monomial> p, FieldElement c);
  /// Adds c times u times the list, one term_mul per monomial.
  void add_scaled_mul(std::span<const Monomial> p, const Term& u, FieldElement c);
  /// Empties the bucket into one strictly descending list.
  std::vector<Monomial> drain();

 private:
  struct Run {
    std::vector<Monomial> monos;
    size_t head = 0;  // monos[head..] is live
  };

  static size_t cap(size_t level) { return size_t{1} << (2 * (level + 1)); }
  void push(std::vector<Monomial> run);
  std::vector<Monomial> merged(const Run& a, const std::vector<Monomial>& b) const;
  void advance(const Term& t);

  const Ring& ring_;
  std::vector<Run> runs_;  // runs_[i] holds at most cap(i) live monomials
  std::optional<Monomial> head_;
};

/// Working state of a long reduction, tuned for fat, repetitive tails:
/// coefficients accumulate in a flat hash table keyed by term, and a lazy
/// max-heap over the distinct terms restores order on demand. Each subtracted
/// monomial costs one table update instead of a pass over a sorted run, so the
/// price of a reduction follows the number of distinct terms, not the raw
/// volume of monomials that flow through it.
///
/// Contract shared with GeoBucket: heads come out in strictly descending
/// order, and every monomial list added after a pop lies strictly below the
/// popped term.
class Accumulator {
 public:
  explicit Accumulator(const Ring& ring);
  Accumulator(const Ring& ring, std::span<const Monomial> init);

  /// Rearms for a fresh reduction, keeping the allocated table and heap.
  void reset(std::span<const Monomial> init);

  /// Largest live term with its combined coefficient, nullptr when empty.
  /// Valid until the next pop.
  const Monomial* peek();
  /// Removes the monomial peek() returned.
  void pop();
  /// Adds c times the monomial list.
  void add_scaled(std::span<const Monomial> p, FieldElement c);
  /// Adds c times u times the list, one term_mul per monomial.
  void add_scaled_mul(std::span<const Monomial> p, const Term& u, FieldElement c);
  /// Empties the accumulator into one strictly descending list.
  std::vector<Monomial> drain();

 private:
  struct Slot {
    Term key;
    FieldElement coeff;
    uint32_t epoch = 0;
    bool queued = false;  // key currently sits in heap_
  };

  /// Heap entries stay small so sifts move 16 bytes, not whole terms: a
  /// monotone 64-bit prefix of the ring order plus the slot index. Equal
  /// prefixes fall back to the full term comparison.
  struct HeapEntry {
    uint64_t key;
    uint32_t slot;
  };

  uint64_t order_key(const Term& t) const;
  bool heap_below(const HeapEntry& a, const HeapEntry& b) const;

  /// Finds or claims the slot for t; may grow the table first.
  uint32_t upsert(const Term& t);
  void grow();
  void enqueue(uint32_t slot);

  const Ring& ring_;
  std::vector<Slot> slots_;      // open addressing, power-of-two size, linear probe
  std::vector<HeapEntry> heap_;  // max-heap under the ring order, lazily pruned
  size_t live_ = 0;              // slots claimed in the current epoch
  uint32_t epoch_ = 1;           // slots with a stale epoch count as empty
  Monomial head_;
  size_t head_slot_ = 0;
  bool head_valid_ = false;
};

/// One step of the division record: f_out = f_in - coeff * multiplier * divisors[divisor_index].
struct ReduceStep {
  size_t divisor_index;
  Term multiplier;
  FieldElement coeff;
};
using ReduceTrace = std::vector<ReduceStep>;

/// Ordinary (signature-free) normal form of f modulo the divisors: repeatedly
/// cancels the largest remaining reducible term. Among eligible divisors the
/// one with the smallest leading term wins, ties broken by list position.
/// Divisors must be nonzero. Optional outputs: the step trace and a step count.
Polynomial reduce_ordinary(const Ring& ring, const Polynomial& f,
                           std::span<const Polynomial> divisors,
                           ReduceTrace* trace = nullptr, uint64_t* steps = nullptr);

/// Unique reduced form of a basis: monic generators, no term of any element
/// divisible by another's leading term, sorted ascending by leading term.
/// Idempotent; on a Groebner basis this yields the reduced Groebner basis.
std::vector<Polynomial> interreduce(const Ring& ring, std::span<const Polynomial> basis);

}  // namespace m5gb
