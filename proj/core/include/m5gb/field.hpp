#pragma once

#include <cstdint>

namespace m5gb {

/// Element of a prime field in canonical form: a value in [0, p).
/// The modulus lives in the ambient PrimeField context, not in the element.
struct FieldElement {
  uint32_t value = 0;

  bool is_zero() const { return value == 0; }
  friend bool operator==(FieldElement, FieldElement) = default;
};

/// Arithmetic context for F_p with an odd prime p < 2^31.
/// The modulus is validated once at construction; element operations assume
/// canonical inputs and return canonical results.
class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is an odd prime below 2^31.
  explicit PrimeField(uint32_t p);

  uint32_t p() const { return p_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  /// Canonical representative of an arbitrary signed value.
  FieldElement normalize(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += static_cast<int64_t>(p_);
    return {static_cast<uint32_t>(r)};
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    uint32_t s = a.value + b.value;  // no overflow: both < p < 2^31
    if (s >= p_) s -= p_;
    return {s};
  }

  FieldElement sub(FieldElement a, FieldElement b) const {
    return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
  }

  FieldElement neg(FieldElement a) const {
    return {a.value == 0 ? 0 : p_ - a.value};
  }

  FieldElement mul(FieldElement a, FieldElement b) const {
    // Barrett reduction: one 128-bit multiply and at most two corrections
    // instead of a hardware division.
    uint64_t prod = static_cast<uint64_t>(a.value) * b.value;
    uint64_t q = static_cast<uint64_t>(
        (static_cast<unsigned __int128>(prod) * barrett_) >> 64);
    uint64_t r = prod - q * p_;
    if (r >= p_) r -= p_;
    if (r >= p_) r -= p_;
    return {static_cast<uint32_t>(r)};
  }

  /// Multiplicative inverse via the extended Euclidean algorithm.
  /// Throws std::domain_error("division by zero") when a = 0.
  FieldElement inv(FieldElement a) const;

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  FieldElement pow(FieldElement a, uint64_t e) const {
    FieldElement acc = one();
    FieldElement base = a;
    while (e != 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  uint32_t p_;
  uint64_t barrett_ = 0;  // floor(2^64 / p), set at construction
};

}  // namespace m5gb
