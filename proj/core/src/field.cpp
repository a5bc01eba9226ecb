#include "m5gb/field.hpp"

#include <stdexcept>
#include <string>

namespace m5gb {

namespace {

bool is_odd_prime(uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (uint32_t d = 3; d <= p / d; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (p == 2) {
    throw std::invalid_argument("characteristic 2 is not supported");
  }
  if (p >= (1u << 31)) {
    throw std::invalid_argument("modulus must be below 2^31, got " + std::to_string(p));
  }
  if (!is_odd_prime(p)) {
    throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(p));
  }
  // floor(2^64 / p); p is odd, so dividing the all-ones word rounds the same.
  barrett_ = ~uint64_t{0} / p;
}

FieldElement PrimeField::inv(FieldElement a) const {
  if (a.value == 0) {
    throw std::domain_error("division by zero");
  }
  // Extended Euclid on (a, p); invariant a*x0 == r0, a*x1 == r1 (mod p).
  int64_t r0 = a.value, r1 = p_;
  int64_t x0 = 1, x1 = 0;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1;
    int64_t x2 = x0 - q * x1;
    r0 = r1;
    r1 = r2;
    x0 = x1;
    x1 = x2;
  }
  int64_t x = x0 % static_cast<int64_t>(p_);
  if (x < 0) x += p_;
  return {static_cast<uint32_t>(x)};
}

}  // namespace m5gb
