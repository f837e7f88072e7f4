#pragma once

// Exact integer arithmetic used throughout. Group elements are never bounded:
// kernel searches exponentiate, so machine words are not an option.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace selfsim {

using Int = boost::multiprecision::cpp_int;

// Floor division and the matching nonnegative remainder. cpp_int's built-in
// / and % truncate toward zero, which is wrong for residue reduction.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
  Int r = a - floor_div(a, b) * b;
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline std::string int_str(const Int& v) { return v.str(); }

inline Int parse_int(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw std::runtime_error("not an integer: '" + s + "'");
  }
}

}  // namespace selfsim
