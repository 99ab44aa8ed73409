#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

namespace ospfield {

/// Ordered PBW monomial: one exponent per generator position.
/// Negative exponents are only ever produced for invertible generators.
/// The all-zero vector is the unit.
struct Monomial {
  std::vector<int32_t> exp;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exp(n, 0) {}

  std::size_t size() const { return exp.size(); }
  bool is_unit() const {
    for (int32_t e : exp)
      if (e != 0) return false;
    return true;
  }

  /// Total degree: every exponent counts with weight |e|.
  int degree() const {
    int d = 0;
    for (int32_t e : exp) d += std::abs(e);
    return d;
  }

  /// Exponent-sum product in the associated graded algebra.
  Monomial graded_product(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] += o.exp[i];
    return r;
  }

  bool operator==(const Monomial& o) const { return exp == o.exp; }
};

/// Term order: total degree first, then exponent vectors compared from the
/// highest generator position down. Used for term maps, rendering and
/// echelon pivots.
inline int compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.exp.size(); i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? -1 : 1;
  }
  return 0;
}

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }
};

/// Position-lexicographic order (highest position most significant),
/// ignoring degree. Additive under exponent sums, which makes leading
/// terms multiplicative in graded domains; the division routines rely
/// on this.
inline int compare_poslex(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.exp.size(); i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace ospfield
