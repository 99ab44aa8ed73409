#pragma once

#include <gmpxx.h>
#include <string>

namespace ospfield {

/// Exact rational coefficients. mpq_class keeps values canonical
/// (reduced, positive denominator) under arithmetic.
using Scalar = mpq_class;

inline Scalar scalar(long num, long den = 1) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }
inline bool is_one(const Scalar& s) { return s == 1; }

/// Renders as "n" or "n/d".
inline std::string render(const Scalar& s) { return s.get_str(); }

}  // namespace ospfield
