#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>

#include "m5gb/poly.hpp"
#include "m5gb/term.hpp"

namespace m5gb {

/// Module term t*e_i: a monomial position in the free module over the input
/// generators. `index` is the 0-based generator slot. A reserved sentinel
/// index models the formal maximal element used by signature flags.
struct Signature {
  uint32_t index = 0;
  Term term;

  static constexpr uint32_t kInfiniteIndex = UINT32_MAX;

  static Signature infinity() {
    Signature s;
    s.index = kInfiniteIndex;
    return s;
  }
  bool is_infinite() const { return index == kInfiniteIndex; }

  friend bool operator==(const Signature& a, const Signature& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return a.index == b.index && a.term == b.term;
  }
};

enum class SigOrderKind { POT, TOP };

/// Module order extending a term order. POT compares generator slot first
/// (higher slot wins), TOP compares the term component first. Both restrict
/// to the wrapped term order within a slot, so they are compatible:
/// a < b implies u*a < u*b, and u*a >= a.
struct SigOrder {
  SigOrderKind kind;
  TermOrder term_order;
};

/// Strict total order with the infinite signature as maximum.
std::strong_ordering cmp_sig(const SigOrder& order, const Signature& a, const Signature& b);

/// u * (t*e_i) = (u*t)*e_i. Finite input required.
Signature sig_mul(const Term& u, const Signature& s);

/// Whether a | b: same slot and term component divides. Finite inputs required.
bool sig_divides(const Signature& a, const Signature& b);

/// b / a as a plain term. Requires sig_divides(a, b).
Term sig_quot(const Signature& b, const Signature& a);

/// Basis element labeled with an upper bound on its module signature.
/// The bound is exact for elements produced by regular reductions.
struct SigPoly {
  Signature sig;
  Polynomial poly;
};

/// Queue entry: the signature a future basis element would carry, plus where
/// it came from (an input generator, or a critical pair with its multipliers).
struct SPairRecord {
  struct Input {
    uint32_t index;
  };
  struct Pair {
    uint32_t f_index;
    uint32_t g_index;
    Term u;  // multiplier on f
    Term v;  // multiplier on g
  };

  Signature sig;
  std::variant<Input, Pair> origin;
};

/// Critical pair of two basis elements. Returns nullopt when the pair is
/// singular (both sides reach the lcm with the same signature); regular pairs
/// carry the larger side as their signature.
std::optional<SPairRecord> make_spair(const SigOrder& order, const SigPoly& f, uint32_t f_index,
                                      const SigPoly& g, uint32_t g_index);

struct RewriterChoice {
  uint32_t basis_index;
  Term u;  // s / sig(basis[basis_index])
};

/// Latest-inserted basis element whose signature divides s. Insertion order is
/// the rewrite preference: later elements rewrite earlier ones. Returns
/// nullopt when no basis signature divides s (the caller falls back to the
/// input generator of s).
std::optional<RewriterChoice> canonical_rewriter(const SigOrder& order,
                                                 std::span<const SigPoly> basis,
                                                 const Signature& s);

}  // namespace m5gb
