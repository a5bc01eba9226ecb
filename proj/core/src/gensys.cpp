#include "m5gb/gensys.hpp"

#include <limits>
#include <stdexcept>

namespace m5gb {

uint64_t SplitMix64::uniform_below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below(0)");
  const uint64_t limit = (std::numeric_limits<uint64_t>::max() / bound) * bound;
  uint64_t r = next();
  while (r >= limit) r = next();
  return r % bound;
}

GeneratedSystem gen_system(const Ring& ring, uint32_t count, uint64_t seed) {
  if (count == 0) throw std::invalid_argument("empty system requested");
  const uint32_t n = ring.nvars;
  const uint64_t p = ring.field.p();
  SplitMix64 rng(seed);

  GeneratedSystem out;
  out.point.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    out.point.push_back(FieldElement{static_cast<uint32_t>(rng.uniform_below(p))});
  }

  const size_t quad_count = static_cast<size_t>(n) * (n + 1) / 2;
  std::vector<uint32_t> quad(quad_count);
  out.polys.reserve(count);
  for (uint32_t k = 0; k < count; ++k) {
    bool all_zero = true;
    do {
      all_zero = true;
      for (size_t q = 0; q < quad_count; ++q) {
        quad[q] = static_cast<uint32_t>(rng.uniform_below(p));
        if (quad[q] != 0) all_zero = false;
      }
    } while (all_zero);  // keep every polynomial honestly quadratic

    std::vector<Monomial> monos;
    monos.reserve(quad_count + n + 1);
    FieldElement value{};  // evaluation at the point, accumulated as we draw
    size_t q = 0;
    for (uint32_t i = 0; i < n; ++i) {
      for (uint32_t j = i; j < n; ++j, ++q) {
        if (quad[q] == 0) continue;
        FieldElement c{quad[q]};
        Term t(n);
        t.set_exponent(i, i == j ? 2 : 1);
        if (i != j) t.set_exponent(j, 1);
        monos.push_back({c, t});
        value = ring.field.add(value,
                               ring.field.mul(c, ring.field.mul(out.point[i], out.point[j])));
      }
    }
    for (uint32_t i = 0; i < n; ++i) {
      FieldElement c{static_cast<uint32_t>(rng.uniform_below(p))};
      if (c.is_zero()) continue;
      Term t(n);
      t.set_exponent(i, 1);
      monos.push_back({c, t});
      value = ring.field.add(value, ring.field.mul(c, out.point[i]));
    }
    FieldElement constant = ring.field.neg(value);
    if (!constant.is_zero()) monos.push_back({constant, Term(n)});
    out.polys.push_back(Polynomial::from_monomials(ring, monos));
  }
  return out;
}

}  // namespace m5gb
