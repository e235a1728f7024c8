#pragma once

// Exact scalars: arbitrary-precision integers and rationals in lowest terms.
// Thin aliases over Boost.Multiprecision plus strict string conversion in
// the "p" / "p/q" format used by all JSON inputs and reports.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "gradual/errors.hpp"

namespace gradual {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Accepts an optional leading '-', digits, and an optional "/digits" part.
// Anything else (whitespace, empty numerator, zero denominator) is rejected.
inline Rat parse_rat(const std::string& s) {
  auto bad = [&]() -> Rat { fail(ErrorKind::InvalidInput, "malformed rational '" + s + "'"); };
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = (s[pos++] == '-');
  auto digits = [&](Int& out) {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return false;
    out = Int(s.substr(start, pos - start));
    return true;
  };
  Int num, den = 1;
  if (!digits(num)) return bad();
  if (pos < s.size()) {
    if (s[pos] != '/') return bad();
    ++pos;
    if (!digits(den) || pos != s.size()) return bad();
    if (den == 0) return bad();
  }
  Rat r(num, den);
  return neg ? Rat(-r) : r;
}

inline std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace gradual
