#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace jetvar {

/// Exact rational number, always kept in lowest terms.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

} // namespace jetvar
