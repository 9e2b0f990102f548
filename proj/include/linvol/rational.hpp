#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

#include "linvol/errors.hpp"

namespace linvol {

// Exact rational scalar used for all length/suspension arithmetic.
// Connections are equality events; floating point cannot detect them robustly.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Parses "num", "num/den" or "-num/den". Throws ParseError on malformed input.
inline Rat rat_parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational");
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
    if (!ok) throw ParseError("malformed rational '" + text + "'");
  }
  try {
    Rat r(text);
    return r;
  } catch (const std::exception&) {
    throw ParseError("malformed rational '" + text + "'");
  }
}

inline std::string rat_str(const Rat& r) { return r.str(); }

}  // namespace linvol
