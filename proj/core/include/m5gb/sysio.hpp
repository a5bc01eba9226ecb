#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "m5gb/poly.hpp"
#include "m5gb/stats.hpp"

namespace m5gb {

/// Error with the 1-based line it was detected on. Line 0 means the problem is
/// not tied to a line (truncated file, unreadable stream).
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

/// A parsed system file. The text format is one header line `p <prime> vars
/// <n>` followed by one polynomial per line (blank lines are skipped). A
/// polynomial is monomials joined by ` + `; a monomial is a coefficient in
/// [1, p) optionally followed by `*x<i>` or `*x<i>^<e>` factors with 1-based
/// variable indices. Repeated variables multiply together. There is no minus
/// sign: coefficients are canonical residues.
struct SystemFile {
  uint64_t p = 0;
  uint32_t nvars = 0;
  std::vector<Polynomial> polys;
};

SystemFile read_system(std::istream& in, TermOrder order);
SystemFile read_system_file(const std::string& path, TermOrder order);

/// One polynomial as a format line, monomials in stored (descending) order.
std::string format_poly(const Ring& ring, const Polynomial& poly);

/// Header plus one line per polynomial, in the given order.
void write_system(std::ostream& out, const Ring& ring, const std::vector<Polynomial>& polys);
void write_system_file(const std::string& path, const Ring& ring,
                       const std::vector<Polynomial>& polys);

/// Canonical basis emission: each polynomial made monic, lines sorted
/// ascending by leading term. Re-readable with read_system.
void write_basis(std::ostream& out, const Ring& ring, const std::vector<Polynomial>& basis);
void write_basis_file(const std::string& path, const Ring& ring,
                      const std::vector<Polynomial>& basis);

/// Point files hold one line of space-separated integers, one per variable;
/// values are normalized into [0, p).
std::vector<FieldElement> read_point(std::istream& in, const PrimeField& field, uint32_t nvars);
std::vector<FieldElement> read_point_file(const std::string& path, const PrimeField& field,
                                          uint32_t nvars);
void write_point(std::ostream& out, const std::vector<FieldElement>& point);
void write_point_file(const std::string& path, const std::vector<FieldElement>& point);

/// Run counters as a JSON object string (instance parameters included; seed is
/// null when the system did not come from the generator).
std::string format_stats_json(const RunStats& stats, std::string_view algorithm, uint32_t nvars,
                              uint32_t count, uint64_t p, std::optional<uint64_t> seed);

}  // namespace m5gb
