#include "m5gb/sig.hpp"

#include <stdexcept>

namespace m5gb {

std::strong_ordering cmp_sig(const SigOrder& order, const Signature& a, const Signature& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return (a.is_infinite() ? 1 : 0) <=> (b.is_infinite() ? 1 : 0);
  }
  if (order.kind == SigOrderKind::POT) {
    if (a.index != b.index) return a.index <=> b.index;
    return cmp_terms(order.term_order, a.term, b.term);
  }
  auto cmp = cmp_terms(order.term_order, a.term, b.term);
  if (cmp != std::strong_ordering::equal) return cmp;
  return a.index <=> b.index;
}

Signature sig_mul(const Term& u, const Signature& s) {
  if (s.is_infinite()) throw std::invalid_argument("multiple of the infinite signature");
  return {s.index, term_mul(u, s.term)};
}

bool sig_divides(const Signature& a, const Signature& b) {
  if (a.is_infinite() || b.is_infinite()) {
    throw std::invalid_argument("divisibility on the infinite signature");
  }
  return a.index == b.index && term_divides(a.term, b.term);
}

Term sig_quot(const Signature& b, const Signature& a) {
  if (!sig_divides(a, b)) throw std::invalid_argument("signature quotient of a non-multiple");
  return term_quot(b.term, a.term);
}

std::optional<SPairRecord> make_spair(const SigOrder& order, const SigPoly& f, uint32_t f_index,
                                      const SigPoly& g, uint32_t g_index) {
  const Term& lf = f.poly.leading_term();
  const Term& lg = g.poly.leading_term();
  Term l = term_lcm(lf, lg);
  Term u = term_quot(l, lf);
  Term v = term_quot(l, lg);
  Signature su = sig_mul(u, f.sig);
  Signature sv = sig_mul(v, g.sig);
  auto cmp = cmp_sig(order, su, sv);
  if (cmp == std::strong_ordering::equal) return std::nullopt;  // singular pair
  SPairRecord rec;
  rec.sig = cmp == std::strong_ordering::greater ? su : sv;
  rec.origin = SPairRecord::Pair{f_index, g_index, u, v};
  return rec;
}

std::optional<RewriterChoice> canonical_rewriter(const SigOrder& order,
                                                 std::span<const SigPoly> basis,
                                                 const Signature& s) {
  (void)order;  // the preference is insertion order; the module order does not enter
  for (size_t k = basis.size(); k-- > 0;) {
    if (sig_divides(basis[k].sig, s)) {
      return RewriterChoice{static_cast<uint32_t>(k), sig_quot(s, basis[k].sig)};
    }
  }
  return std::nullopt;
}

}  // namespace m5gb
