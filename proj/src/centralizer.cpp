#include "ospfield/centralizer.hpp"

#include <map>
#include <sstream>

namespace ospfield {

std::vector<Monomial> monomial_basis(const Presentation& p, int d) {
  for (const auto& g : p.generators())
    if (g.invertible)
      throw EngineError(ErrorKind::LocalizedPresentationUnsupported,
                        "monomial basis needs a polynomial presentation");
  std::vector<Monomial> out;
  Monomial cur(p.ngens());
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos == p.ngens()) {
      out.push_back(cur);
      return;
    }
    // square-ruled odd generators only appear with exponent 0 or 1
    int cap = p.self_rule(static_cast<int>(pos)) ? 1 : remaining;
    for (int e = 0; e <= std::min(cap, remaining); ++e) {
      cur.exp[pos] = e;
      self(self, pos + 1, remaining - e);
    }
    cur.exp[pos] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return compare(a, b) < 0; });
  return out;
}

std::vector<Element> centralizer_basis(const CentralizerQuery& q) {
  const Presentation& p = *q.presentation;
  if (q.constraints.empty())
    throw EngineError(ErrorKind::InvalidParameters,
                      "centralizer query needs constraints");
  auto basis = monomial_basis(p, q.degree);
  int cols = static_cast<int>(basis.size());

  // Row index space: (constraint, result monomial).
  std::vector<std::vector<Scalar>> rows;
  std::map<Monomial, int, MonomialLess> row_of;
  Budget budget{p.budget_limit() * 4};
  auto parities = p.parities();

  int base_row = 0;
  for (const Element& s : q.constraints) {
    row_of.clear();
    std::vector<std::vector<Scalar>> block;
    for (int c = 0; c < cols; ++c) {
      Element m = Element::monomial(basis[c], Scalar(1));
      Element r;
      if (q.mode == CentralizerMode::Commute) {
        r = p.bracket(m, s, BracketKind::Comm, budget);
      } else {
        auto pm = m.parity(parities);
        auto ps = s.parity(parities);
        if (pm && ps && *pm == 1 && *ps == 1)
          r = p.bracket(m, s, BracketKind::Acomm, budget);
        else
          r = p.bracket(m, s, BracketKind::Comm, budget);
      }
      for (const auto& [mono, coeff] : r.terms()) {
        auto [it, ins] = row_of.try_emplace(mono, static_cast<int>(block.size()));
        if (ins) block.emplace_back(cols, Scalar(0));
        block[it->second][c] = coeff;
      }
    }
    for (auto& row : block) rows.push_back(std::move(row));
    base_row = static_cast<int>(rows.size());
  }
  (void)base_row;

  // Exact nullspace via Gauss-Jordan.
  int nrows = static_cast<int>(rows.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < nrows; ++c) {
    int sel = -1;
    for (int i = r; i < nrows; ++i)
      if (!is_zero(rows[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    Scalar inv = Scalar(1) / rows[r][c];
    for (int j = c; j < cols; ++j) rows[r][j] *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || is_zero(rows[i][c])) continue;
      Scalar f = rows[i][c];
      for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  // Free columns give the reduced-echelon nullspace basis.
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Element> out;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Element e;
    e.add_term(basis[c], Scalar(1));
    for (int i = 0; i < r; ++i)
      if (!is_zero(rows[i][c])) e.add_term(basis[pivot_col[i]], -rows[i][c]);
    out.push_back(std::move(e));
  }
  return out;
}

CentralityReport is_central(const Presentation& p, const Element& c) {
  CentralityReport rep;
  Budget budget{p.budget_limit() * 4};
  for (std::size_t g = 0; g < p.ngens(); ++g) {
    Element r = p.bracket(c, p.generator_element(static_cast<int>(g)),
                          BracketKind::Comm, budget);
    if (!r.is_zero()) {
      rep.central = false;
      rep.residuals.push_back({p.gen(static_cast<int>(g)).name, std::move(r)});
    }
  }
  return rep;
}

std::string render_center_report(const Presentation& p, int d) {
  std::ostringstream os;
  std::vector<Element> gens;
  for (std::size_t g = 0; g < p.ngens(); ++g)
    gens.push_back(p.generator_element(static_cast<int>(g)));
  os << "center of " << p.name() << " up to degree " << d << "\n";
  std::vector<Element> basis;
  for (int k = 0; k <= d; ++k) {
    CentralizerQuery q{&p, gens, k, CentralizerMode::Commute};
    basis = centralizer_basis(q);
    os << "degree <= " << k << ": dimension " << basis.size() << "\n";
  }
  os << "basis:\n";
  for (const auto& e : basis) os << "  " << p.render(e) << "\n";
  return os.str();
}

}  // namespace ospfield
