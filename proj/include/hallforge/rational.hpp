#pragma once

#include <gmpxx.h>

#include <string>

namespace hallforge {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" in lowest terms; integers print without a denominator.
inline std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Accepts "p", "-p", "p/q".
Rational parse_rational(const std::string& text);

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace hallforge
