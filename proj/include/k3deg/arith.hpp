#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace k3deg {

// All lattice arithmetic is exact: arbitrary-precision integers and
// rationals throughout, no floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Vec = std::vector<Int>;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

inline int sign(const Int& a) { return a.sign(); }

inline int sign(const Rat& a) { return a.sign(); }

/// Floor of a/b for b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

/// Nearest integer to a/b, ties toward -inf; keeps remainders small in
/// the elimination loops.
inline Int round_div(const Int& a, const Int& b) { return floor_div(2 * a + b, 2 * b); }

inline Int floor_rat(const Rat& q) {
  return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

/// Canonical representative of q modulo 2Z in [0,2).
inline Rat mod2(const Rat& q) {
  Int f = floor_rat(q / 2);
  return q - 2 * Rat(f);
}

inline Int gcd_of(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& q) {
  Int n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace k3deg
