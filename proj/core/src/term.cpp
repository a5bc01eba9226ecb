#include "m5gb/term.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>

namespace m5gb {

namespace detail {

void throw_width_mismatch() {
  throw std::invalid_argument("terms from rings with different variable counts");
}

}  // namespace detail

namespace {

void require_same_width(const Term& a, const Term& b) {
  if (a.nvars() != b.nvars()) detail::throw_width_mismatch();
}

}  // namespace

Term::Term(uint32_t nvars) {
  if (nvars < 1 || nvars > kMaxVars) {
    throw std::invalid_argument("variable count must be in [1, " +
                                std::to_string(kMaxVars) + "], got " + std::to_string(nvars));
  }
  nvars_ = nvars;
}

Term Term::from(std::initializer_list<uint16_t> exps) {
  return from(std::span<const uint16_t>(exps.begin(), exps.size()));
}

Term Term::from(std::span<const uint16_t> exps) {
  Term t(static_cast<uint32_t>(exps.size()));
  uint32_t deg = 0;
  for (size_t i = 0; i < exps.size(); ++i) {
    t.exps_[i] = exps[i];
    deg += exps[i];
  }
  t.degree_ = deg;
  return t;
}

void Term::set_exponent(uint32_t i, uint16_t e) {
  if (i >= nvars_) {
    throw std::out_of_range("variable index out of range");
  }
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
}

// The arithmetic below runs over the full fixed-width array with branch-free
// bodies so the compiler can vectorize; slots at or beyond nvars are zero and
// stay zero.

bool term_divides(const Term& a, const Term& b) {
  require_same_width(a, b);
  if (a.degree_ > b.degree_) return false;
  uint32_t bad = 0;
  for (uint32_t i = 0; i < kMaxVars; ++i) {
    bad |= static_cast<uint32_t>(a.exps_[i] > b.exps_[i]);
  }
  return bad == 0;
}

Term term_mul(const Term& a, const Term& b) {
  require_same_width(a, b);
  Term r(a.nvars_);
  uint32_t over = 0;
  for (uint32_t i = 0; i < kMaxVars; ++i) {
    uint32_t e = static_cast<uint32_t>(a.exps_[i]) + b.exps_[i];
    over |= e >> 16;
    r.exps_[i] = static_cast<uint16_t>(e);
  }
  if (over != 0) {
    throw std::overflow_error("exponent overflow in term product");
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

Term term_quot(const Term& t, const Term& u) {
  require_same_width(t, u);
  Term r(t.nvars_);
  uint32_t under = 0;
  for (uint32_t i = 0; i < kMaxVars; ++i) {
    under |= static_cast<uint32_t>(u.exps_[i] > t.exps_[i]);
    r.exps_[i] = static_cast<uint16_t>(t.exps_[i] - u.exps_[i]);
  }
  if (under != 0) {
    throw std::invalid_argument("term quotient of a non-multiple");
  }
  r.degree_ = t.degree_ - u.degree_;
  return r;
}

Term term_lcm(const Term& a, const Term& b) {
  require_same_width(a, b);
  Term r(a.nvars_);
  uint32_t deg = 0;
  for (uint32_t i = 0; i < kMaxVars; ++i) {
    r.exps_[i] = a.exps_[i] > b.exps_[i] ? a.exps_[i] : b.exps_[i];
    deg += r.exps_[i];
  }
  r.degree_ = deg;
  return r;
}

}  // namespace m5gb
