#include "m5gb/sysio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace m5gb {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

uint64_t parse_uint(std::string_view tok, size_t line, const char* what) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

Polynomial parse_poly(const Ring& ring, std::string_view text, size_t line) {
  std::vector<Monomial> monos;
  for (std::string_view mono_text : split(text, '+')) {
    mono_text = trim(mono_text);
    if (mono_text.empty()) throw ParseError(line, "empty monomial");
    std::vector<std::string_view> factors = split(mono_text, '*');
    uint64_t coeff = parse_uint(trim(factors[0]), line, "a coefficient");
    if (coeff == 0) throw ParseError(line, "zero coefficient");
    if (coeff >= ring.field.p()) {
      throw ParseError(line, "coefficient " + std::to_string(coeff) + " not below the modulus");
    }
    std::array<uint32_t, kMaxVars> exps{};
    for (size_t f = 1; f < factors.size(); ++f) {
      std::string_view factor = trim(factors[f]);
      if (factor.size() < 2 || factor[0] != 'x') {
        throw ParseError(line, "expected a variable factor, got '" + std::string(factor) + "'");
      }
      std::string_view rest = factor.substr(1);
      std::string_view index_text = rest;
      uint64_t exp = 1;
      if (size_t caret = rest.find('^'); caret != std::string_view::npos) {
        index_text = rest.substr(0, caret);
        exp = parse_uint(rest.substr(caret + 1), line, "an exponent");
        if (exp == 0) throw ParseError(line, "zero exponent");
      }
      uint64_t index = parse_uint(index_text, line, "a variable index");
      if (index < 1 || index > ring.nvars) {
        throw ParseError(line, "variable index " + std::to_string(index) + " out of range");
      }
      exps[index - 1] += static_cast<uint32_t>(std::min<uint64_t>(exp, 1u << 20));
      if (exps[index - 1] > 0xFFFF || exp > 0xFFFF) {
        throw ParseError(line, "exponent too large");
      }
    }
    Term t(ring.nvars);
    for (uint32_t i = 0; i < ring.nvars; ++i) {
      t.set_exponent(i, static_cast<uint16_t>(exps[i]));
    }
    monos.push_back({FieldElement{static_cast<uint32_t>(coeff)}, t});
  }
  Polynomial p = Polynomial::from_monomials(ring, monos);
  if (p.is_zero()) throw ParseError(line, "monomials cancel to the zero polynomial");
  return p;
}

}  // namespace

SystemFile read_system(std::istream& in, TermOrder order) {
  std::string raw;
  size_t line_no = 0;
  std::string_view header;
  while (std::getline(in, raw)) {
    ++line_no;
    header = trim(raw);
    if (!header.empty()) break;
  }
  if (header.empty()) throw ParseError(0, "missing header line");
  {
    std::vector<std::string_view> tok;
    for (std::string_view part : split(header, ' ')) {
      part = trim(part);
      if (!part.empty()) tok.push_back(part);
    }
    if (tok.size() != 4 || tok[0] != "p" || tok[2] != "vars") {
      throw ParseError(line_no, "header must be 'p <prime> vars <n>'");
    }
    SystemFile out;
    out.p = parse_uint(tok[1], line_no, "a prime");
    uint64_t nvars = parse_uint(tok[3], line_no, "a variable count");
    if (nvars < 1 || nvars > kMaxVars) {
      throw ParseError(line_no, "variable count " + std::to_string(nvars) + " out of range");
    }
    out.nvars = static_cast<uint32_t>(nvars);
    Ring ring = [&] {
      try {
        return Ring(PrimeField(out.p), out.nvars, order);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    }();
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view text = trim(raw);
      if (text.empty()) continue;
      out.polys.push_back(parse_poly(ring, text, line_no));
    }
    return out;
  }
}

SystemFile read_system_file(const std::string& path, TermOrder order) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_system(in, order);
}

std::string format_poly(const Ring& ring, const Polynomial& poly) {
  if (poly.is_zero()) throw std::invalid_argument("zero polynomial has no format line");
  std::string out;
  bool first = true;
  for (const Monomial& m : poly.monomials()) {
    if (!first) out += " + ";
    first = false;
    out += std::to_string(m.coeff.value);
    for (uint32_t i = 0; i < ring.nvars; ++i) {
      uint16_t e = m.term.exponent(i);
      if (e == 0) continue;
      out += "*x" + std::to_string(i + 1);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

void write_system(std::ostream& out, const Ring& ring, const std::vector<Polynomial>& polys) {
  out << "p " << ring.field.p() << " vars " << ring.nvars << "\n";
  for (const Polynomial& f : polys) out << format_poly(ring, f) << "\n";
}

void write_system_file(const std::string& path, const Ring& ring,
                       const std::vector<Polynomial>& polys) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_system(out, ring, polys);
}

void write_basis(std::ostream& out, const Ring& ring, const std::vector<Polynomial>& basis) {
  std::vector<Polynomial> sorted;
  sorted.reserve(basis.size());
  for (const Polynomial& f : basis) sorted.push_back(make_monic(ring, f));
  std::sort(sorted.begin(), sorted.end(), [&](const Polynomial& a, const Polynomial& b) {
    return cmp_terms(ring.order, a.leading_term(), b.leading_term()) == std::strong_ordering::less;
  });
  write_system(out, ring, sorted);
}

void write_basis_file(const std::string& path, const Ring& ring,
                      const std::vector<Polynomial>& basis) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_basis(out, ring, basis);
}

std::vector<FieldElement> read_point(std::istream& in, const PrimeField& field, uint32_t nvars) {
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view text = trim(raw);
    if (text.empty()) continue;
    std::vector<FieldElement> point;
    for (std::string_view tok : split(text, ' ')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      int64_t value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "expected an integer, got '" + std::string(tok) + "'");
      }
      point.push_back(field.normalize(value));
    }
    if (point.size() != nvars) {
      throw ParseError(line_no, "expected " + std::to_string(nvars) + " coordinates, got " +
                                    std::to_string(point.size()));
    }
    return point;
  }
  throw ParseError(0, "missing point line");
}

std::vector<FieldElement> read_point_file(const std::string& path, const PrimeField& field,
                                          uint32_t nvars) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_point(in, field, nvars);
}

void write_point(std::ostream& out, const std::vector<FieldElement>& point) {
  for (size_t i = 0; i < point.size(); ++i) {
    if (i) out << ' ';
    out << point[i].value;
  }
  out << "\n";
}

void write_point_file(const std::string& path, const std::vector<FieldElement>& point) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_point(out, point);
}

std::string format_stats_json(const RunStats& stats, std::string_view algorithm, uint32_t nvars,
                              uint32_t count, uint64_t p, std::optional<uint64_t> seed) {
  nlohmann::json j;
  j["algorithm"] = std::string(algorithm);
  j["n"] = nvars;
  j["m"] = count;
  j["p"] = p;
  if (seed) {
    j["seed"] = *seed;
  } else {
    j["seed"] = nullptr;
  }
  j["wall_time_ms"] = stats.wall_time_ms;
  j["basis_size"] = stats.basis_size;
  j["reduction_steps"] = stats.reduction_steps;
  j["spairs_processed"] = stats.spairs_processed;
  j["spairs_skipped_syzygy"] = stats.spairs_skipped_syzygy;
  j["spairs_skipped_duplicate"] = stats.spairs_skipped_duplicate;
  j["zero_reductions"] = stats.zero_reductions;
  return j.dump(2) + "\n";
}

}  // namespace m5gb
