#include "ospfield/liesuper.hpp"

#include <algorithm>
#include <sstream>

namespace ospfield {

LieSuperAlgebra::LieSuperAlgebra(
    std::string name, std::vector<std::pair<std::string, int>> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
  table_.assign(basis_.size(), std::vector<LinComb>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (index_.count(basis_[i].first))
      throw EngineError(ErrorKind::InvalidParameters,
                        "duplicate basis name " + basis_[i].first);
    index_[basis_[i].first] = static_cast<int>(i);
  }
}

int LieSuperAlgebra::index(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int LieSuperAlgebra::require_index(const std::string& name) const {
  int i = index(name);
  if (i < 0)
    throw EngineError(ErrorKind::UnknownGenerator,
                      "no basis element '" + name + "' in " + name_);
  return i;
}

void LieSuperAlgebra::set_bracket(int i, int j, LinComb v) {
  table_.at(i).at(j) = std::move(v);
}

const LinComb& LieSuperAlgebra::bracket(int i, int j) const {
  return table_.at(i).at(j);
}

LinComb LieSuperAlgebra::bracket(const LinComb& a, int, const LinComb& b,
                                 int) const {
  LinComb out;
  for (const auto& [i, ci] : a.c)
    for (const auto& [j, cj] : b.c) out.add(table_[i][j], ci * cj);
  return out;
}

std::vector<std::string> LieSuperAlgebra::structural_violations() const {
  std::vector<std::string> out;
  int n = static_cast<int>(dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // super-antisymmetry: [x_i,x_j} = -(-1)^{p_i p_j} [x_j,x_i}
      LinComb expect = table_[j][i];
      Scalar s = (parity(i) && parity(j)) ? Scalar(1) : Scalar(-1);
      LinComb lhs = table_[i][j];
      LinComb rhs;
      rhs.add(expect, s);
      if (!(lhs == rhs))
        out.push_back("antisymmetry fails at (" + basis_name(i) + "," +
                      basis_name(j) + ")");
      // bracket parity
      int pij = (parity(i) + parity(j)) & 1;
      for (const auto& [k, c] : table_[i][j].c)
        if (parity(k) != pij)
          out.push_back("parity fails at (" + basis_name(i) + "," +
                        basis_name(j) + ")");
    }
  return out;
}

std::string LieSuperAlgebra::render_lincomb(const LinComb& v) const {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v.c) {
    Scalar a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    if (!is_one(a)) os << render(a) << "*";
    os << basis_name(i);
    first = false;
  }
  return os.str();
}

std::string LieSuperAlgebra::render_bracket(int i, int j) const {
  bool anti = parity(i) && parity(j);
  std::ostringstream os;
  os << (anti ? "{" : "[") << basis_name(i) << "," << basis_name(j)
     << (anti ? "}" : "]") << " = " << render_lincomb(table_[i][j]);
  return os.str();
}

std::string LieSuperAlgebra::render_table(const std::vector<int>& subset) const {
  std::ostringstream os;
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a; b < subset.size(); ++b) {
      int i = subset[a], j = subset[b];
      if (i == j && !parity(i)) continue;  // [x,x] = 0 for even x
      os << render_bracket(i, j) << "\n";
    }
  return os.str();
}

std::string LieSuperAlgebra::render_table() const {
  std::vector<int> all(dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return render_table(all);
}

// ---------------------------------------------------------------------
// parabose construction

namespace {

// One odd letter b_i^xi, xi in {+1,-1}.
struct BLetter {
  int i;
  int xi;
};

struct PairKey {
  int idx;       // basis index of (1/2){b_x, b_y}
  Scalar coeff;  // always 2: {b_x,b_y} = 2 * basis element
};

}  // namespace

LieSuperAlgebra build_osp(int n) {
  if (n < 1)
    throw EngineError(ErrorKind::InvalidParameters, "build_osp needs n >= 1");

  auto bname = [&](int i, int xi) {
    return "b" + std::to_string(i + 1) + (xi > 0 ? "p" : "m");
  };
  auto short_names = (n == 2);
  auto pair_name = [&](char base, int i, int j, int sign) {
    // a_{ij}^+/-, s_{ij}, t_{ij}; short names for n = 2.
    std::string tag;
    if (base == 'a')
      tag = short_names ? std::string("a") + (sign > 0 ? "p" : "m")
                        : "a" + std::to_string(i + 1) + std::to_string(j + 1) +
                              (sign > 0 ? "p" : "m");
    else
      tag = short_names ? std::string(1, base)
                        : std::string(1, base) + std::to_string(i + 1) +
                              std::to_string(j + 1);
    return tag;
  };

  std::vector<std::pair<std::string, int>> basis;
  // b_1^+..b_n^+, b_1^-..b_n^-, k_1..k_n, c_i^+, c_i^-, then pair elements.
  for (int i = 0; i < n; ++i) basis.push_back({bname(i, +1), 1});
  for (int i = 0; i < n; ++i) basis.push_back({bname(i, -1), 1});
  for (int i = 0; i < n; ++i) basis.push_back({"k" + std::to_string(i + 1), 0});
  for (int i = 0; i < n; ++i)
    basis.push_back({"c" + std::to_string(i + 1) + "p", 0});
  for (int i = 0; i < n; ++i)
    basis.push_back({"c" + std::to_string(i + 1) + "m", 0});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      basis.push_back({pair_name('a', i, j, +1), 0});
      basis.push_back({pair_name('a', i, j, -1), 0});
      basis.push_back({pair_name('s', i, j, 0), 0});
      basis.push_back({pair_name('t', i, j, 0), 0});
    }

  LieSuperAlgebra L("osp(1," + std::to_string(2 * n) + ")", std::move(basis));

  auto b_index = [&](int i, int xi) { return L.require_index(bname(i, xi)); };
  // (1/2){b_x^a, b_y^b} as a basis element: returns (index, 2) meaning
  // {b_x^a, b_y^b} = 2 * basis[idx].
  auto pair_elt = [&](int x, int a, int y, int b) -> PairKey {
    if (x > y) {
      std::swap(x, y);
      std::swap(a, b);
    }
    std::string nm;
    if (x == y) {
      if (a == b)
        nm = "c" + std::to_string(x + 1) + (a > 0 ? "p" : "m");
      else
        nm = "k" + std::to_string(x + 1);
    } else if (a > 0 && b > 0) {
      nm = pair_name('a', x, y, +1);
    } else if (a < 0 && b < 0) {
      nm = pair_name('a', x, y, -1);
    } else if (a < 0 && b > 0) {
      nm = pair_name('s', x, y, 0);
    } else {
      nm = pair_name('t', x, y, 0);
    }
    return {L.require_index(nm), Scalar(2)};
  };

  // Each even basis element is (1/2){b_j^xi, b_k^eta}.
  struct EvenDesc {
    int j, xi, k, eta;
  };
  std::map<int, EvenDesc> even_desc;
  for (int i = 0; i < n; ++i) {
    even_desc[L.require_index("k" + std::to_string(i + 1))] = {i, -1, i, +1};
    even_desc[L.require_index("c" + std::to_string(i + 1) + "p")] = {i, +1, i,
                                                                     +1};
    even_desc[L.require_index("c" + std::to_string(i + 1) + "m")] = {i, -1, i,
                                                                     -1};
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      even_desc[L.require_index(pair_name('a', i, j, +1))] = {i, +1, j, +1};
      even_desc[L.require_index(pair_name('a', i, j, -1))] = {i, -1, j, -1};
      even_desc[L.require_index(pair_name('s', i, j, 0))] = {i, -1, j, +1};
      even_desc[L.require_index(pair_name('t', i, j, 0))] = {i, +1, j, -1};
    }

  int dim = static_cast<int>(L.dim());
  for (int I = 0; I < dim; ++I)
    for (int J = 0; J < dim; ++J) {
      LinComb v;
      bool oddI = L.parity(I) == 1, oddJ = L.parity(J) == 1;
      if (oddI && oddJ) {
        // {b_x^a, b_y^b} = 2 * pair element
        // recover letters from names
        auto descI = [&] {
          for (int i = 0; i < n; ++i)
            for (int xi : {+1, -1})
              if (b_index(i, xi) == I) return BLetter{i, xi};
          return BLetter{-1, 0};
        }();
        auto descJ = [&] {
          for (int i = 0; i < n; ++i)
            for (int xi : {+1, -1})
              if (b_index(i, xi) == J) return BLetter{i, xi};
          return BLetter{-1, 0};
        }();
        PairKey pk = pair_elt(descI.i, descI.xi, descJ.i, descJ.xi);
        v.add(pk.idx, pk.coeff);
      } else if (!oddI && oddJ) {
        // [E, b_l^eps] with E = (1/2){b_j^xi, b_k^eta}
        EvenDesc d = even_desc.at(I);
        BLetter l = [&] {
          for (int i = 0; i < n; ++i)
            for (int xi : {+1, -1})
              if (b_index(i, xi) == J) return BLetter{i, xi};
          return BLetter{-1, 0};
        }();
        // [{b_j,b_k}, b_l] = (eps-xi) delta_jl b_k + (eps-eta) delta_kl b_j
        if (d.j == l.i)
          v.add(b_index(d.k, d.eta), scalar(l.xi - d.xi) * scalar(1, 2));
        if (d.k == l.i)
          v.add(b_index(d.j, d.xi), scalar(l.xi - d.eta) * scalar(1, 2));
      } else if (oddI && !oddJ) {
        // [b, E] = -[E, b] (mixed parity commutator)
        EvenDesc d = even_desc.at(J);
        BLetter l = [&] {
          for (int i = 0; i < n; ++i)
            for (int xi : {+1, -1})
              if (b_index(i, xi) == I) return BLetter{i, xi};
          return BLetter{-1, 0};
        }();
        if (d.j == l.i)
          v.add(b_index(d.k, d.eta), scalar(-(l.xi - d.xi)) * scalar(1, 2));
        if (d.k == l.i)
          v.add(b_index(d.j, d.xi), scalar(-(l.xi - d.eta)) * scalar(1, 2));
      } else {
        // [(1/2){b_i^xi,b_j^eta}, (1/2){b_k^eps,b_l^phi}]
        EvenDesc A = even_desc.at(I), B = even_desc.at(J);
        int i = A.j, j = A.k, k = B.j, l = B.k;
        int xi = A.xi, eta = A.eta, eps = B.xi, phi = B.eta;
        auto addpair = [&](int coef, int x, int a, int y, int b) {
          if (coef == 0) return;
          PairKey pk = pair_elt(x, a, y, b);
          v.add(pk.idx, scalar(coef) * pk.coeff * scalar(1, 4));
        };
        if (j == k) addpair(eps - eta, i, xi, l, phi);
        if (i == k) addpair(eps - xi, j, eta, l, phi);
        if (j == l) addpair(phi - eta, i, xi, k, eps);
        if (i == l) addpair(phi - xi, j, eta, k, eps);
      }
      L.set_bracket(I, J, std::move(v));
    }
  return L;
}

ValidationReport validate_jacobi(const LieSuperAlgebra& L) {
  ValidationReport rep;
  int n = static_cast<int>(L.dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // (-1)^{p_i p_k} [[x_i,x_j},x_k} + (-1)^{p_j p_i} [[x_j,x_k},x_i}
        //   + (-1)^{p_k p_j} [[x_k,x_i},x_j} = 0
        auto term = [&](int a, int b, int c) {
          LinComb inner = L.bracket(a, b);
          LinComb out;
          int pin = (L.parity(a) + L.parity(b)) & 1;
          LinComb unit_c;
          unit_c.add(c, Scalar(1));
          out = L.bracket(inner, pin, unit_c, L.parity(c));
          return out;
        };
        LinComb total;
        Scalar s1 = (L.parity(i) && L.parity(k)) ? Scalar(-1) : Scalar(1);
        Scalar s2 = (L.parity(j) && L.parity(i)) ? Scalar(-1) : Scalar(1);
        Scalar s3 = (L.parity(k) && L.parity(j)) ? Scalar(-1) : Scalar(1);
        total.add(term(i, j, k), s1);
        total.add(term(j, k, i), s2);
        total.add(term(k, i, j), s3);
        if (!total.is_zero()) rep.violations.push_back({i, j, k, total});
      }
  return rep;
}

std::variant<LieSuperAlgebra, ClosureFailureInfo> subalgebra(
    const LieSuperAlgebra& L, const std::vector<std::string>& names) {
  std::vector<int> idx;
  for (const auto& nm : names) idx.push_back(L.require_index(nm));
  std::map<int, int> reindex;
  for (std::size_t i = 0; i < idx.size(); ++i)
    reindex[idx[i]] = static_cast<int>(i);

  std::vector<std::pair<std::string, int>> basis;
  for (int i : idx) basis.push_back({L.basis_name(i), L.parity(i)});
  LieSuperAlgebra S(L.name() + ":" + std::to_string(idx.size()) + "sub",
                    std::move(basis));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      const LinComb& v = L.bracket(idx[a], idx[b]);
      LinComb w;
      for (const auto& [k, c] : v.c) {
        auto it = reindex.find(k);
        if (it == reindex.end()) {
          LinComb esc;
          for (const auto& [k2, c2] : v.c)
            if (!reindex.count(k2)) esc.add(k2, c2);
          return ClosureFailureInfo{idx[a], idx[b], esc};
        }
        w.add(it->second, c);
      }
      S.set_bracket(static_cast<int>(a), static_cast<int>(b), std::move(w));
    }
  return S;
}

LieSuperAlgebra require_subalgebra(const LieSuperAlgebra& L,
                                   const std::vector<std::string>& names) {
  auto r = subalgebra(L, names);
  if (auto* fail = std::get_if<ClosureFailureInfo>(&r))
    throw EngineError(ErrorKind::ClosureFailure,
                      "not bracket-closed: [" + L.basis_name(fail->i) + "," +
                          L.basis_name(fail->j) + "} escapes with " +
                          L.render_lincomb(fail->escaping));
  return std::get<LieSuperAlgebra>(std::move(r));
}

namespace {

Presentation enveloping_impl(
    const LieSuperAlgebra& L, const std::string& pres_name,
    const std::vector<std::string>& order,
    const std::map<std::string, std::string>& eliminated,
    bool require_jacobi) {
  if (require_jacobi) {
    auto jac = validate_jacobi(L);
    if (!jac.passed())
      throw EngineError(ErrorKind::InvalidParameters,
                        "Jacobi validation fails for " + L.name() + " (" +
                            std::to_string(jac.violations.size()) +
                            " violating triples)");
  }

  std::vector<GeneratorInfo> gens;
  std::vector<int> basis_of_gen;
  for (const auto& nm : order) {
    int bi = L.require_index(nm);
    gens.push_back({nm, L.parity(bi), false});
    basis_of_gen.push_back(bi);
  }
  Presentation p(pres_name, std::move(gens));

  // Image of each basis element inside the presentation.
  std::vector<Element> image(L.dim());
  std::vector<bool> have(L.dim(), false);
  for (std::size_t g = 0; g < basis_of_gen.size(); ++g) {
    image[basis_of_gen[g]] = p.generator_element(static_cast<int>(g));
    have[basis_of_gen[g]] = true;
  }
  for (const auto& [elim, expr] : eliminated) {
    int bi = L.require_index(elim);
    // expr is "name^2" style: parse NAME and optional ^2
    auto caret = expr.find('^');
    std::string base = expr.substr(0, caret);
    int pow = caret == std::string::npos
                  ? 1
                  : std::atoi(expr.c_str() + caret + 1);
    image[bi] = p.generator_element(p.require_position(base), pow);
    have[bi] = true;
  }
  auto lincomb_elt = [&](const LinComb& v) {
    Element e;
    for (const auto& [i, c] : v.c) {
      if (!have[i])
        throw EngineError(ErrorKind::InvalidParameters,
                          "bracket escapes the generating set at " +
                              L.basis_name(i));
      e.add(image[i], c);
    }
    return e;
  };

  int n = static_cast<int>(order.size());
  for (int hi = 0; hi < n; ++hi)
    for (int lo = 0; lo < hi; ++lo) {
      int bi = basis_of_gen[hi], bj = basis_of_gen[lo];
      Scalar q = (L.parity(bi) && L.parity(bj)) ? Scalar(-1) : Scalar(1);
      p.set_rule(hi, lo, q, lincomb_elt(L.bracket(bi, bj)));
    }
  // Odd squares: x^2 = (1/2){x,x} when the self-bracket stays a generator
  // relation (skipped when {x,x}/2 is literally x^2, the eliminated case).
  for (int g = 0; g < n; ++g) {
    int bi = basis_of_gen[g];
    if (L.parity(bi) != 1) continue;
    LinComb self = L.bracket(bi, bi);
    if (self.is_zero()) {
      p.set_self_rule(g, Element());
      continue;
    }
    Element target = lincomb_elt(self) * scalar(1, 2);
    Element square = p.generator_element(g, 2);
    if (target == square) continue;  // c eliminated as the square itself
    p.set_self_rule(g, std::move(target));
  }
  p.set_validated(true);
  return p;
}

}  // namespace

Presentation enveloping(const LieSuperAlgebra& L,
                        const std::vector<std::string>& order,
                        bool require_jacobi) {
  return enveloping_impl(L, "U(" + L.name() + ")", order, {}, require_jacobi);
}

Presentation enveloping_reduced(
    const LieSuperAlgebra& L, const std::string& pres_name,
    const std::vector<std::string>& order,
    const std::map<std::string, std::string>& eliminated,
    bool require_jacobi) {
  return enveloping_impl(L, pres_name, order, eliminated, require_jacobi);
}

// ---------------------------------------------------------------------
// dictionary tables

namespace {

/// Solves sum_k x_k * img_k = v over the basis coordinates; nullopt when
/// v escapes the span or the images are dependent in a way that blocks a
/// unique answer on this vector.
std::optional<std::vector<Scalar>> solve_in_span(
    const std::vector<LinComb>& images, const LinComb& v, int dim) {
  int rows = dim, cols = static_cast<int>(images.size());
  std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(cols + 1));
  for (int c = 0; c < cols; ++c)
    for (const auto& [i, s] : images[c].c) m[i][c] = s;
  for (const auto& [i, s] : v.c) m[i][cols] = s;

  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (!ospfield::is_zero(m[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    Scalar inv = Scalar(1) / m[r][c];
    for (int j = c; j <= cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || ospfield::is_zero(m[i][c])) continue;
      Scalar f = m[i][c];
      for (int j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  // Inconsistent rows mean v is outside the span.
  for (int i = r; i < rows; ++i)
    if (!ospfield::is_zero(m[i][cols])) return std::nullopt;
  std::vector<Scalar> x(cols, Scalar(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = m[i][cols];
  return x;
}

}  // namespace

std::map<std::string, std::string> parse_table_lines(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    // trim
    auto l = line.find_first_not_of(" \t\r");
    if (l == std::string::npos) continue;
    auto rtrim = line.find_last_not_of(" \t\r");
    line = line.substr(l, rtrim - l + 1);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto strip = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    out[strip(key)] = strip(val);
  }
  return out;
}

DiffReport compare_table(const LieSuperAlgebra& L, const DictionaryTable& d) {
  DiffReport rep;
  std::vector<LinComb> images;
  std::vector<std::string> new_names;
  std::vector<int> new_parity;
  for (const auto& e : d.renaming) {
    images.push_back(e.image);
    new_names.push_back(e.new_name);
    int par = -1;
    for (const auto& [i, c] : e.image.c) {
      if (par < 0)
        par = L.parity(i);
      else if (par != L.parity(i))
        throw EngineError(ErrorKind::InvalidParameters,
                          "mixed-parity dictionary image " + e.new_name);
    }
    new_parity.push_back(par < 0 ? 0 : par);
  }
  int dim = static_cast<int>(L.dim());

  auto render_combo = [&](const std::vector<Scalar>& x) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (ospfield::is_zero(x[i])) continue;
      Scalar a = x[i];
      if (first) {
        if (sgn(a) < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (sgn(a) < 0 ? " - " : " + ");
        if (sgn(a) < 0) a = -a;
      }
      if (!is_one(a)) os << render(a) << "*";
      os << new_names[i];
      first = false;
    }
    if (first) os << "0";
    return os.str();
  };

  std::ostringstream table;
  auto expected_lines = parse_table_lines(d.expected);
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a; b < images.size(); ++b) {
      bool anti = new_parity[a] && new_parity[b];
      if (a == b && !anti) continue;
      LinComb v = L.bracket(images[a], new_parity[a], images[b], new_parity[b]);
      std::string pair = std::string(anti ? "{" : "[") + new_names[a] + "," +
                         new_names[b] + (anti ? "}" : "]");
      std::string computed;
      auto x = solve_in_span(images, v, dim);
      if (!x) {
        computed = "<outside span: " + L.render_lincomb(v) + ">";
      } else {
        computed = render_combo(*x);
      }
      table << pair << " = " << computed << "\n";
      auto it = expected_lines.find(pair);
      std::string expect = it == expected_lines.end() ? "<missing>" : it->second;
      if (computed != expect) rep.diffs.push_back({pair, computed, expect});
    }
  rep.computed_table = table.str();
  // Expected lines with no computed counterpart are diffs too.
  auto computed_lines = parse_table_lines(rep.computed_table);
  for (const auto& [pair, val] : expected_lines)
    if (!computed_lines.count(pair))
      rep.diffs.push_back({pair, "<missing>", val});
  return rep;
}

LieSuperAlgebra lie_from_table(
    const std::string& name,
    const std::vector<std::pair<std::string, int>>& basis,
    const std::string& table_text) {
  LieSuperAlgebra L(name, basis);
  auto lines = parse_table_lines(table_text);
  auto parse_side = [&](const std::string& s) -> LinComb {
    // linear combinations: term (+|-) term, term = [coeff *] name
    LinComb v;
    std::size_t i = 0;
    int sign = 1;
    auto skip = [&] {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };
    skip();
    if (i < s.size() && s[i] == '0' && i + 1 >= s.size()) return v;
    while (i < s.size()) {
      skip();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
        skip();
      }
      // coefficient
      Scalar c(sign);
      std::size_t j = i;
      while (j < s.size() && (isdigit(s[j]) || s[j] == '/')) ++j;
      if (j > i && (j < s.size() && s[j] == '*')) {
        Scalar mag(s.substr(i, j - i));
        mag.canonicalize();
        c = Scalar(sign) * mag;
        i = j + 1;
      }
      j = i;
      while (j < s.size() && (isalnum(s[j]) || s[j] == '_')) ++j;
      std::string nm = s.substr(i, j - i);
      if (nm.empty())
        throw EngineError(ErrorKind::SyntaxError, "bad table term: " + s);
      v.add(L.require_index(nm), c);
      i = j;
      skip();
      sign = 1;
    }
    return v;
  };
  for (const auto& [pair, val] : lines) {
    // pair is "[x,y]" or "{x,y}"
    auto comma = pair.find(',');
    std::string x = pair.substr(1, comma - 1);
    std::string y = pair.substr(comma + 1, pair.size() - comma - 2);
    int i = L.require_index(x), j = L.require_index(y);
    LinComb v = parse_side(val);
    L.set_bracket(i, j, v);
    LinComb w;
    Scalar s = (L.parity(i) && L.parity(j)) ? Scalar(1) : Scalar(-1);
    w.add(v, s);
    if (i != j) L.set_bracket(j, i, std::move(w));
  }
  return L;
}

}  // namespace ospfield
