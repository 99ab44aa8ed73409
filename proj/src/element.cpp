#include "ospfield/element.hpp"

#include <sstream>

namespace ospfield {

std::string render_monomial(const Monomial& m,
                            const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.exp.size(); ++i) {
    if (m.exp[i] == 0) continue;
    if (!first) os << "*";
    os << names[i];
    if (m.exp[i] != 1) os << "^" << m.exp[i];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

std::string Element::render(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending term order, explicit coefficients: "-1*b+*b- + 2*k".
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << " + ";
    if (m.is_unit())
      os << ospfield::render(c);
    else
      os << ospfield::render(c) << "*" << render_monomial(m, names);
    first = false;
  }
  return os.str();
}

}  // namespace ospfield
