#include "m5gb/verify.hpp"

namespace m5gb {

bool is_groebner(const Ring& ring, const std::vector<Polynomial>& basis) {
  if (basis.empty()) return false;
  for (const Polynomial& f : basis) {
    if (f.is_zero()) return false;
  }
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      const Polynomial& f = basis[i];
      const Polynomial& g = basis[j];
      Term l = term_lcm(f.leading_term(), g.leading_term());
      Polynomial uf =
          scale(ring, mul_term(f, term_quot(l, f.leading_term())), ring.field.inv(f.leading_coeff()));
      Polynomial spoly =
          sub_scaled(ring, uf, ring.field.inv(g.leading_coeff()),
                     mul_term(g, term_quot(l, g.leading_term())));
      if (!reduce_ordinary(ring, spoly, basis).is_zero()) return false;
    }
  }
  return true;
}

bool reduced_gb_equal(const Ring& ring, const std::vector<Polynomial>& a,
                      const std::vector<Polynomial>& b) {
  return interreduce(ring, a) == interreduce(ring, b);
}

bool vanishes_at(const Ring& ring, const std::vector<Polynomial>& system,
                 const std::vector<FieldElement>& point) {
  for (const Polynomial& f : system) {
    if (!evaluate(ring, f, point).is_zero()) return false;
  }
  return true;
}

}  // namespace m5gb
