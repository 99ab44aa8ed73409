#include "ospfield/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace ospfield {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::NegativePowerOfNonInvertible:
      return "NegativePowerOfNonInvertible";
    case ErrorKind::ReductionBudgetExceeded: return "ReductionBudgetExceeded";
    case ErrorKind::NonHomogeneousOperand: return "NonHomogeneousOperand";
    case ErrorKind::MissingImage: return "MissingImage";
    case ErrorKind::UnregisteredInverse: return "UnregisteredInverse";
    case ErrorKind::ClosureFailure: return "ClosureFailure";
    case ErrorKind::SigmaNormalityFailed: return "SigmaNormalityFailed";
    case ErrorKind::ConfluenceFailed: return "ConfluenceFailed";
    case ErrorKind::RecipeDidNotClear: return "RecipeDidNotClear";
    case ErrorKind::UnknownIdentityReference:
      return "UnknownIdentityReference";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::UnclassifiablePair: return "UnclassifiablePair";
    case ErrorKind::LocalizedPresentationUnsupported:
      return "LocalizedPresentationUnsupported";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::UseBeforeDefine: return "UseBeforeDefine";
    case ErrorKind::InvalidRule: return "InvalidRule";
  }
  return "EngineError";
}

long default_budget_limit() {
  if (const char* env = std::getenv("OSPFIELD_BUDGET")) {
    long v = std::atol(env);
    if (v > 0) return v;
  }
  return 1'000'000;
}

Presentation::Presentation(std::string name, std::vector<GeneratorInfo> gens)
    : name_(std::move(name)),
      gens_(std::move(gens)),
      budget_limit_(default_budget_limit()) {
  rules_.resize(gens_.size());
  for (std::size_t hi = 0; hi < gens_.size(); ++hi) rules_[hi].resize(hi);
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (index_.count(gens_[i].name))
      throw EngineError(ErrorKind::InvalidParameters,
                        "duplicate generator name " + gens_[i].name);
    index_[gens_[i].name] = static_cast<int>(i);
  }
}

std::vector<std::string> Presentation::names() const {
  std::vector<std::string> out;
  out.reserve(gens_.size());
  for (const auto& g : gens_) out.push_back(g.name);
  return out;
}

std::vector<int> Presentation::parities() const {
  std::vector<int> out;
  out.reserve(gens_.size());
  for (const auto& g : gens_) out.push_back(g.parity);
  return out;
}

int Presentation::position(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int Presentation::require_position(const std::string& name) const {
  int p = position(name);
  if (p < 0)
    throw EngineError(ErrorKind::UnknownGenerator,
                      "unknown generator '" + name + "' in " + name_);
  return p;
}

void Presentation::add_alias(const std::string& alias,
                             const std::string& name) {
  index_[alias] = require_position(name);
}

void Presentation::rename_generator(const std::string& from,
                                    const std::string& to) {
  int pos = require_position(from);
  gens_[pos].name = to;
  index_[to] = pos;  // keep the old name as an alias
}

void Presentation::validate_tail(int hi, int lo, const Element& tail) const {
  // Each tail monomial must sit strictly below the ordered pair word in
  // (total degree, position-lex): degree < 2, or degree 2 and smaller
  // than g_lo*g_hi position-lexicographically.
  Monomial pair(ngens());
  pair.exp[lo] += 1;
  pair.exp[hi] += 1;
  for (const auto& [m, c] : tail.terms()) {
    for (std::size_t i = 0; i < m.exp.size(); ++i)
      if (m.exp[i] < 0)
        throw EngineError(ErrorKind::InvalidRule,
                          "rule tail with negative exponent in " + name_);
    int d = m.degree();
    if (d < 2) continue;
    if (d == 2 && compare_poslex(m, pair) < 0) continue;
    throw EngineError(ErrorKind::InvalidRule,
                      "rule tail not below the pair " + gens_[lo].name + "*" +
                          gens_[hi].name + " in " + name_);
  }
  // Parity consistency keeps the Z2-grading of products intact.
  int pp = (gens_[hi].parity + gens_[lo].parity) & 1;
  auto tp = tail.parity(parities());
  if (!tail.is_zero() && (!tp || *tp != pp))
    throw EngineError(ErrorKind::InvalidRule,
                      "rule tail parity mismatch in " + name_);
}

void Presentation::set_rule(int hi, int lo, Scalar q, Element tail) {
  if (!(hi > lo) || hi >= static_cast<int>(ngens()) || lo < 0)
    throw EngineError(ErrorKind::InvalidParameters, "bad rule pair");
  if (ospfield::is_zero(q))
    throw EngineError(ErrorKind::InvalidRule, "rule with zero q");
  validate_tail(hi, lo, tail);
  rules_[hi][lo] = PairRule{std::move(q), std::move(tail)};
}

const PairRule& Presentation::rule(int hi, int lo) const {
  const auto& r = rules_.at(hi).at(lo);
  if (!r)
    throw EngineError(ErrorKind::InvalidParameters,
                      "missing rule (" + gens_[hi].name + "," +
                          gens_[lo].name + ") in " + name_);
  return *r;
}

void Presentation::set_self_rule(int pos, Element tail) {
  if (gens_[pos].parity != 1)
    throw EngineError(ErrorKind::InvalidRule,
                      "square rule on even generator " + gens_[pos].name);
  Monomial sq(ngens());
  sq.exp[pos] = 2;
  for (const auto& [m, c] : tail.terms()) {
    if (!(m.degree() < 2 || (m.degree() == 2 && compare_poslex(m, sq) < 0)))
      throw EngineError(ErrorKind::InvalidRule,
                        "square-rule tail not below " + gens_[pos].name + "^2");
  }
  auto tp = tail.parity(parities());
  if (!tail.is_zero() && (!tp || *tp != 0))
    throw EngineError(ErrorKind::InvalidRule, "square-rule tail parity");
  self_rules_[pos] = std::move(tail);
}

const Element* Presentation::self_rule(int pos) const {
  auto it = self_rules_.find(pos);
  return it == self_rules_.end() ? nullptr : &it->second;
}

bool Presentation::rules_complete() const {
  for (std::size_t hi = 1; hi < ngens(); ++hi)
    for (std::size_t lo = 0; lo < hi; ++lo)
      if (!rules_[hi][lo]) return false;
  return true;
}

void Presentation::mark_invertible(const std::string& name) {
  int pos = require_position(name);
  if (self_rules_.count(pos))
    throw EngineError(ErrorKind::SigmaNormalityFailed,
                      name + " carries a square rule; not invertible");
  for (std::size_t other = 0; other < ngens(); ++other) {
    if (static_cast<int>(other) == pos || !gens_[other].invertible) continue;
    int hi = std::max<int>(pos, other), lo = std::min<int>(pos, other);
    if (!rule(hi, lo).tail.is_zero())
      throw EngineError(
          ErrorKind::SigmaNormalityFailed,
          "tailed rule between invertible generators " + name + ", " +
              gens_[other].name);
  }
  gens_[pos].invertible = true;
}

void Presentation::validate_power(int pos, int32_t power) const {
  if (power < 0 && !gens_.at(pos).invertible)
    throw EngineError(ErrorKind::NegativePowerOfNonInvertible,
                      "negative power of non-invertible generator " +
                          gens_[pos].name);
}

Word Presentation::monomial_word(const Monomial& m) const {
  Word w;
  for (std::size_t i = 0; i < m.exp.size(); ++i)
    if (m.exp[i] != 0) w.push_back({static_cast<int>(i), m.exp[i]});
  return w;
}

std::vector<std::pair<Scalar, Word>> element_words(const Element& e) {
  std::vector<std::pair<Scalar, Word>> out;
  out.reserve(e.term_count());
  for (const auto& [m, c] : e.terms()) {
    Word w;
    for (std::size_t i = 0; i < m.exp.size(); ++i)
      if (m.exp[i] != 0) w.push_back({static_cast<int>(i), m.exp[i]});
    out.emplace_back(c, std::move(w));
  }
  return out;
}

// g_hi^sa * g_lo^sb with sa,sb in {+1,-1}: rewritten toward normal order.
void Presentation::expand_unit_pair(
    int hi, int sa, int lo, int sb,
    std::vector<std::pair<Scalar, Word>>& out) const {
  const PairRule& r = rule(hi, lo);
  const Scalar& q = r.q;
  Scalar qinv = Scalar(1) / q;
  auto tail_words = element_words(r.tail);
  out.clear();
  if (sa > 0 && sb > 0) {
    out.push_back({q, {{lo, 1}, {hi, 1}}});
    for (auto& [c, w] : tail_words) out.push_back({c, w});
  } else if (sa > 0 && sb < 0) {
    // h g^-1 = q^-1 g^-1 h - q^-1 g^-1 T g^-1
    out.push_back({qinv, {{lo, -1}, {hi, 1}}});
    for (auto& [c, w] : tail_words) {
      Word nw;
      nw.push_back({lo, -1});
      nw.insert(nw.end(), w.begin(), w.end());
      nw.push_back({lo, -1});
      out.push_back({-qinv * c, std::move(nw)});
    }
  } else if (sa < 0 && sb > 0) {
    // h^-1 g = q^-1 g h^-1 - q^-1 h^-1 T h^-1
    out.push_back({qinv, {{lo, 1}, {hi, -1}}});
    for (auto& [c, w] : tail_words) {
      Word nw;
      nw.push_back({hi, -1});
      nw.insert(nw.end(), w.begin(), w.end());
      nw.push_back({hi, -1});
      out.push_back({-qinv * c, std::move(nw)});
    }
  } else {
    // h^-1 g^-1 = q g^-1 h^-1, only for tail-free pairs; adjunction
    // rejects tailed rules between two invertible generators.
    if (!r.tail.is_zero())
      throw EngineError(ErrorKind::UnregisteredInverse,
                        "inverse pair with tailed rule (" + gens_[hi].name +
                            "," + gens_[lo].name + ")");
    out.push_back({q, {{lo, -1}, {hi, -1}}});
  }
}

Element Presentation::normalize_words(
    std::vector<std::pair<Scalar, Word>> work, Budget& budget) const {
  Element out;
  std::vector<std::pair<Scalar, Word>> expansion;
  while (!work.empty()) {
    auto [coeff, w] = std::move(work.back());
    work.pop_back();
    if (ospfield::is_zero(coeff)) continue;

    // Merge adjacent letters of equal position; drop zero exponents.
    Word merged;
    merged.reserve(w.size());
    for (const Letter& l : w) {
      if (l.exp == 0) continue;
      if (!merged.empty() && merged.back().pos == l.pos) {
        merged.back().exp += l.exp;
        if (merged.back().exp == 0) merged.pop_back();
      } else {
        merged.push_back(l);
      }
    }

    // Locate the first reducible spot: a square-ruled power or an
    // out-of-order adjacent pair.
    int square_at = -1, swap_at = -1;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      validate_power(merged[i].pos, merged[i].exp);
      if (square_at < 0 && merged[i].exp >= 2 &&
          self_rules_.count(merged[i].pos)) {
        square_at = static_cast<int>(i);
      }
    }
    for (std::size_t i = 0; square_at < 0 && i + 1 < merged.size(); ++i) {
      if (merged[i].pos > merged[i + 1].pos) {
        swap_at = static_cast<int>(i);
        break;
      }
    }

    if (square_at < 0 && swap_at < 0) {
      Monomial m(ngens());
      for (const Letter& l : merged) m.exp[l.pos] = l.exp;
      out.add_term(std::move(m), coeff);
      continue;
    }

    budget.tick();
    if (square_at >= 0) {
      // g^e = g^(e-2) * T
      int i = square_at;
      const Element& tail = self_rules_.at(merged[i].pos);
      for (const auto& [c, tw] : element_words(tail)) {
        Word nw(merged.begin(), merged.begin() + i);
        if (merged[i].exp > 2) nw.push_back({merged[i].pos, merged[i].exp - 2});
        nw.insert(nw.end(), tw.begin(), tw.end());
        nw.insert(nw.end(), merged.begin() + i + 1, merged.end());
        work.push_back({coeff * c, std::move(nw)});
      }
      continue;
    }

    int i = swap_at;
    const Letter A = merged[i], B = merged[i + 1];
    int sa = A.exp > 0 ? 1 : -1, sb = B.exp > 0 ? 1 : -1;
    expand_unit_pair(A.pos, sa, B.pos, sb, expansion);
    for (auto& [c, mid] : expansion) {
      Word nw(merged.begin(), merged.begin() + i);
      if (A.exp != sa) nw.push_back({A.pos, A.exp - sa});
      nw.insert(nw.end(), mid.begin(), mid.end());
      if (B.exp != sb) nw.push_back({B.pos, B.exp - sb});
      nw.insert(nw.end(), merged.begin() + i + 2, merged.end());
      work.push_back({coeff * c, std::move(nw)});
    }
  }
  return out;
}

Element Presentation::normalize_word(const Word& w, Budget& budget) const {
  return normalize_words({{Scalar(1), w}}, budget);
}

Element Presentation::multiply(const Element& a, const Element& b,
                               Budget& budget) const {
  std::vector<std::pair<Scalar, Word>> work;
  work.reserve(a.term_count() * b.term_count());
  for (const auto& [ma, ca] : a.terms()) {
    Word wa = monomial_word(ma);
    for (const auto& [mb, cb] : b.terms()) {
      Word w = wa;
      for (const auto& l : monomial_word(mb)) w.push_back(l);
      work.push_back({ca * cb, std::move(w)});
    }
  }
  return normalize_words(std::move(work), budget);
}

Element Presentation::multiply(const Element& a, const Element& b) const {
  Budget budget{budget_limit_};
  return multiply(a, b, budget);
}

Element Presentation::power(const Element& a, int n, Budget& budget) const {
  if (n < 0) {
    // Only monomial powers of invertible generators invert syntactically.
    if (a.term_count() == 1) {
      const auto& [m, c] = *a.terms().begin();
      int nz = -1;
      bool single = true;
      for (std::size_t i = 0; i < m.exp.size(); ++i) {
        if (m.exp[i] != 0) {
          if (nz >= 0) single = false;
          nz = static_cast<int>(i);
        }
      }
      if (m.is_unit()) {
        Scalar inv = Scalar(1) / c;
        Element r = constant(1);
        r *= inv;
        return power(r, -n, budget);
      }
      if (single && gens_[nz].invertible) {
        Element base = Element::monomial(
            [&] {
              Monomial mm(ngens());
              mm.exp[nz] = -m.exp[nz];
              return mm;
            }(),
            Scalar(1) / c);
        return power(base, -n, budget);
      }
    }
    throw EngineError(ErrorKind::UnregisteredInverse,
                      "negative power of a non-invertible element");
  }
  Element r = constant(Scalar(1));
  for (int i = 0; i < n; ++i) r = multiply(r, a, budget);
  return r;
}

Element Presentation::bracket(const Element& a, const Element& b,
                              BracketKind kind, Budget& budget) const {
  bool anti = false;
  if (kind == BracketKind::Acomm) {
    anti = true;
  } else if (kind == BracketKind::Super) {
    auto pa = a.parity(parities()), pb = b.parity(parities());
    if (!pa || !pb)
      throw EngineError(ErrorKind::NonHomogeneousOperand,
                        "super bracket needs parity-homogeneous operands");
    anti = (*pa == 1 && *pb == 1);
  }
  Element ab = multiply(a, b, budget);
  Element ba = multiply(b, a, budget);
  return anti ? ab + ba : ab - ba;
}

Element Presentation::bracket(const Element& a, const Element& b,
                              BracketKind kind) const {
  Budget budget{budget_limit_};
  return bracket(a, b, kind, budget);
}

std::optional<Element> Presentation::divide_left(const Element& x,
                                                 const Element& e,
                                                 Budget& budget) const {
  if (e.is_zero()) return std::nullopt;
  if (x.is_zero()) return Element();
  const Monomial lead_e = e.leading_poslex()->first;
  Element r = x, y;
  long steps = 0;
  while (!r.is_zero()) {
    if (++steps > 4096) return std::nullopt;
    const auto* lr = r.leading_poslex();
    const Monomial lead_r = lr->first;
    const Scalar coeff_r = lr->second;
    Monomial q(ngens());
    for (std::size_t i = 0; i < q.exp.size(); ++i) {
      q.exp[i] = lead_r.exp[i] - lead_e.exp[i];
      if (q.exp[i] < 0 && !gens_[i].invertible) return std::nullopt;
    }
    Element t = multiply(e, Element::monomial(q, Scalar(1)), budget);
    const auto* lt = t.leading_poslex();
    if (!lt || !(lt->first == lead_r)) return std::nullopt;
    Scalar c = coeff_r / lt->second;
    y.add_term(q, c);
    r -= t * c;
    const auto* lr2 = r.leading_poslex();
    if (lr2 && compare_poslex(lr2->first, lead_r) >= 0) return std::nullopt;
  }
  return y;
}

std::optional<Element> Presentation::divide_right(const Element& x,
                                                  const Element& e,
                                                  Budget& budget) const {
  if (e.is_zero()) return std::nullopt;
  if (x.is_zero()) return Element();
  const Monomial lead_e = e.leading_poslex()->first;
  Element r = x, y;
  long steps = 0;
  while (!r.is_zero()) {
    if (++steps > 4096) return std::nullopt;
    const auto* lr = r.leading_poslex();
    const Monomial lead_r = lr->first;
    const Scalar coeff_r = lr->second;
    Monomial q(ngens());
    for (std::size_t i = 0; i < q.exp.size(); ++i) {
      q.exp[i] = lead_r.exp[i] - lead_e.exp[i];
      if (q.exp[i] < 0 && !gens_[i].invertible) return std::nullopt;
    }
    Element t = multiply(Element::monomial(q, Scalar(1)), e, budget);
    const auto* lt = t.leading_poslex();
    if (!lt || !(lt->first == lead_r)) return std::nullopt;
    Scalar c = coeff_r / lt->second;
    y.add_term(q, c);
    r -= t * c;
    const auto* lr2 = r.leading_poslex();
    if (lr2 && compare_poslex(lr2->first, lead_r) >= 0) return std::nullopt;
  }
  return y;
}

ConfluenceReport Presentation::check_confluence(int max_degree,
                                                Budget& budget) const {
  if (!rules_complete())
    throw EngineError(ErrorKind::InvalidParameters,
                      "rule table incomplete in " + name_);
  ConfluenceReport report;
  int n = static_cast<int>(ngens());

  auto reduce_two_ways = [&](const Word& w) {
    // Left strategy: rewrite at the leftmost position first; right
    // strategy: rewrite the suffix first, then attach the prefix.
    Element left = normalize_word(w, budget);
    Word suffix(w.begin() + 1, w.end());
    Element tail_nf = normalize_word(suffix, budget);
    Element head = Element::generator(ngens(), w[0].pos, w[0].exp);
    Element right = multiply(head, tail_nf, budget);
    report.words_checked++;
    if (!(left == right))
      report.mismatches.push_back({w, std::move(left), std::move(right)});
  };

  // Ordered triples of positive letters (covers pair/pair and
  // square/pair overlaps).
  std::vector<Word> words;
  for (int c = 0; c < n; ++c)
    for (int b = 0; b <= c; ++b)
      for (int a = 0; a <= b; ++a)
        words.push_back({{c, 1}, {b, 1}, {a, 1}});

  // Length-3 words involving at least one inverse letter.
  std::vector<Letter> alphabet;
  for (int i = 0; i < n; ++i) {
    alphabet.push_back({i, 1});
    if (gens_[i].invertible) alphabet.push_back({i, -1});
  }
  bool has_inverse = false;
  for (const auto& g : gens_) has_inverse |= g.invertible;
  if (has_inverse) {
    for (const Letter& x : alphabet)
      for (const Letter& y : alphabet)
        for (const Letter& z : alphabet) {
          if (x.exp > 0 && y.exp > 0 && z.exp > 0) continue;
          words.push_back({x, y, z});
        }
  }

  // Longer positive overlap words when a deeper bound is requested.
  if (max_degree >= 4) {
    for (int c = 0; c < n; ++c)
      for (int b = 0; b <= c; ++b)
        for (int a = 0; a <= b; ++a)
          for (int z = 0; z <= a; ++z)
            words.push_back({{c, 1}, {b, 1}, {a, 1}, {z, 1}});
  }

  for (const Word& w : words) reduce_two_ways(w);
  return report;
}

ConfluenceReport Presentation::check_confluence(int max_degree) const {
  Budget budget{budget_limit_ * 4};
  return check_confluence(max_degree, budget);
}

std::string Presentation::render(const Element& e) const {
  return e.render(names());
}

std::string Presentation::render_rules() const {
  std::ostringstream os;
  auto nm = names();
  for (std::size_t hi = 1; hi < ngens(); ++hi)
    for (std::size_t lo = 0; lo < hi; ++lo) {
      const PairRule& r = rule(hi, lo);
      os << nm[hi] << "*" << nm[lo] << " = ";
      Element lead = Element::monomial(
          [&] {
            Monomial m(ngens());
            m.exp[lo] = 1;
            m.exp[hi] = 1;
            return m;
          }(),
          r.q);
      Element rhs = lead + r.tail;
      os << rhs.render(nm) << "\n";
    }
  for (const auto& [pos, tail] : self_rules_) {
    os << nm[pos] << "^2 = " << tail.render(nm) << "\n";
  }
  return os.str();
}

}  // namespace ospfield
