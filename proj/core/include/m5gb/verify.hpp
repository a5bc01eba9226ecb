#pragma once

#include "m5gb/poly.hpp"

namespace m5gb {

/// Buchberger's criterion, checked in full: every pairwise S-polynomial must
/// reduce to zero against the candidate basis. No pair is skipped, so this is
/// slow and trustworthy. Empty bases and bases with zero polynomials fail.
bool is_groebner(const Ring& ring, const std::vector<Polynomial>& basis);

/// Whether the two generating sets have the same reduced basis, i.e. generate
/// the same ideal provided both are in fact bases for their ideals.
bool reduced_gb_equal(const Ring& ring, const std::vector<Polynomial>& a,
                      const std::vector<Polynomial>& b);

/// Whether every polynomial of the system evaluates to zero at the point.
bool vanishes_at(const Ring& ring, const std::vector<Polynomial>& system,
                 const std::vector<FieldElement>& point);

}  // namespace m5gb
