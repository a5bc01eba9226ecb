#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <span>

namespace m5gb {

/// Hard cap on the number of ring variables; keeps terms flat and allocation-free.
inline constexpr uint32_t kMaxVars = 32;

enum class TermOrder { Grevlex, Lex };

namespace detail {

static_assert(std::endian::native == std::endian::little,
              "word-wise exponent scans assume little-endian lane order");

/// Number of 64-bit words that cover the first nvars 16-bit exponent slots.
inline constexpr size_t term_words(uint32_t nvars) {
  return (size_t{nvars} * sizeof(uint16_t) + sizeof(uint64_t) - 1) / sizeof(uint64_t);
}

inline uint64_t word_at(const uint16_t* exps, size_t w) {
  uint64_t v;
  std::memcpy(&v, reinterpret_cast<const char*>(exps) + w * sizeof(uint64_t), sizeof(v));
  return v;
}

[[noreturn]] void throw_width_mismatch();

}  // namespace detail

/// Power product x1^e1 * ... * xn^en with cached total degree.
/// Exponents are 16-bit; products that overflow a slot are a hard error.
/// Slots at or beyond nvars are kept at zero so equality and hashing can
/// scan the fixed-size array without consulting nvars.
class Term {
 public:
  Term() = default;
  /// The term 1 in n variables. Throws unless 1 <= n <= kMaxVars.
  explicit Term(uint32_t nvars);
  /// Build from an exponent list; nvars is the list length.
  static Term from(std::initializer_list<uint16_t> exps);
  static Term from(std::span<const uint16_t> exps);

  uint32_t nvars() const { return nvars_; }
  uint32_t degree() const { return degree_; }
  uint16_t exponent(uint32_t i) const { return exps_[i]; }
  void set_exponent(uint32_t i, uint16_t e);
  bool is_one() const { return degree_ == 0; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.degree_ != b.degree_ || a.nvars_ != b.nvars_) return false;
    for (size_t w = 0, n = detail::term_words(a.nvars_); w < n; ++w) {
      if (detail::word_at(a.exps_.data(), w) != detail::word_at(b.exps_.data(), w)) return false;
    }
    return true;
  }

 private:
  // 8-byte aligned so comparisons and hashing can read 64-bit words.
  alignas(8) std::array<uint16_t, kMaxVars> exps_{};
  uint32_t degree_ = 0;
  uint32_t nvars_ = 0;

  friend std::strong_ordering cmp_terms(TermOrder, const Term&, const Term&);
  friend bool term_divides(const Term&, const Term&);
  friend Term term_mul(const Term&, const Term&);
  friend Term term_quot(const Term&, const Term&);
  friend Term term_lcm(const Term&, const Term&);
  friend struct TermHash;
};

/// Strict total order on same-width terms. Grevlex: higher degree wins, ties
/// broken by the smaller trailing exponent difference. Lex: leftmost variable
/// dominates. Both have x1 > x2 > ... > xn. Throws on mismatched nvars.
/// Inline because reduction queues and bucket merges call this in their
/// innermost loops; the scan covers only the words that hold live exponents.
inline std::strong_ordering cmp_terms(TermOrder order, const Term& a, const Term& b) {
  if (a.nvars_ != b.nvars_) detail::throw_width_mismatch();
  if (order == TermOrder::Lex) {
    // Find the first differing exponent by 64-bit words: the lowest differing
    // 16-bit lane of the lowest differing word.
    for (size_t w = 0, n = detail::term_words(a.nvars_); w < n; ++w) {
      uint64_t wa = detail::word_at(a.exps_.data(), w);
      uint64_t wb = detail::word_at(b.exps_.data(), w);
      if (wa == wb) continue;
      unsigned lane = static_cast<unsigned>(std::countr_zero(wa ^ wb)) / 16;
      uint16_t ea = static_cast<uint16_t>(wa >> (16 * lane));
      uint16_t eb = static_cast<uint16_t>(wb >> (16 * lane));
      return ea <=> eb;
    }
    return std::strong_ordering::equal;
  }
  // Grevlex: compare total degree, then reverse-scan for the last difference;
  // the term with the smaller trailing exponent is the larger one.
  if (a.degree_ != b.degree_) {
    return a.degree_ <=> b.degree_;
  }
  for (size_t w = detail::term_words(a.nvars_); w-- > 0;) {
    uint64_t wa = detail::word_at(a.exps_.data(), w);
    uint64_t wb = detail::word_at(b.exps_.data(), w);
    if (wa == wb) continue;
    unsigned lane = (63 - static_cast<unsigned>(std::countl_zero(wa ^ wb))) / 16;
    uint16_t ea = static_cast<uint16_t>(wa >> (16 * lane));
    uint16_t eb = static_cast<uint16_t>(wb >> (16 * lane));
    return eb <=> ea;
  }
  return std::strong_ordering::equal;
}

/// Whether a divides b (componentwise <=). Throws on mismatched nvars.
bool term_divides(const Term& a, const Term& b);

/// Componentwise sum; throws std::overflow_error when a slot exceeds 16 bits.
Term term_mul(const Term& a, const Term& b);

/// t / u. Requires u | t; throws std::invalid_argument otherwise.
Term term_quot(const Term& t, const Term& u);

/// Componentwise max.
Term term_lcm(const Term& a, const Term& b);

/// Monotone 64-bit coarsening of the term order: order_prefix(a) > order_prefix(b)
/// implies a > b, so sorted containers can compare prefixes first and fall back
/// to cmp_terms only on equal prefixes. Lex packs the four leading exponents.
/// Grevlex packs the full degree and the two trailing exponents complemented,
/// since a smaller trailing exponent means a larger term.
inline uint64_t order_prefix(TermOrder order, const Term& t) {
  const uint32_t n = t.nvars();
  uint64_t key = 0;
  if (order == TermOrder::Lex) {
    for (uint32_t i = 0; i < 4; ++i) {
      key = key << 16 | (i < n ? t.exponent(i) : 0);
    }
    return key;
  }
  key = t.degree();
  for (uint32_t i = 0; i < 2; ++i) {
    key = key << 16 | (i < n ? 0xffffu - t.exponent(n - 1 - i) : 0);
  }
  return key;
}

struct TermHash {
  size_t operator()(const Term& t) const {
    // FNV-1a over the live exponent words; slots past nvars are always zero.
    uint64_t h = 1469598103934665603ull;
    for (size_t w = 0, n = detail::term_words(t.nvars_); w < n; ++w) {
      h ^= detail::word_at(t.exps_.data(), w);
      h *= 1099511628211ull;
    }
    h ^= t.nvars_;
    // Avalanche finish so every exponent reaches the low index bits; the raw
    // fold leaves them a near-function of the first lanes, which power-of-two
    // tables turn into pathological probe chains.
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ull;
    h ^= h >> 33;
    return static_cast<size_t>(h);
  }
};

}  // namespace m5gb
