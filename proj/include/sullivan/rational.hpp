#ifndef SULLIVAN_RATIONAL_HPP
#define SULLIVAN_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace sullivan {

/// Exact rational number, always canonicalized (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "num/den", or just "num" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace sullivan

#endif  // SULLIVAN_RATIONAL_HPP
