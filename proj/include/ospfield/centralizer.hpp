#pragma once

#include <string>
#include <vector>

#include "ospfield/presentation.hpp"

namespace ospfield {

enum class CentralizerMode { Commute, Supercommute };

struct CentralizerQuery {
  const Presentation* presentation;
  std::vector<Element> constraints;  // nonempty
  int degree = 4;
  CentralizerMode mode = CentralizerMode::Commute;
};

/// All monomials of total degree <= d, ascending term order.
/// Polynomial presentations only: C(n+d, d) monomials for n generators.
std::vector<Monomial> monomial_basis(const Presentation& p, int d);

/// Reduced-echelon basis (leading coefficient 1, pivots in monomial
/// order) of { c : deg c <= d, [c,s] = 0 for all s in S }.
std::vector<Element> centralizer_basis(const CentralizerQuery& q);

struct CentralityReport {
  bool central = true;
  std::vector<std::pair<std::string, Element>> residuals;  // per generator
};

CentralityReport is_central(const Presentation& p, const Element& c);

/// Per-degree dimension table 0..d plus the printed basis at d.
std::string render_center_report(const Presentation& p, int d);

}  // namespace ospfield
