#include "ospfield/localization.hpp"

#include <algorithm>
#include <sstream>

namespace ospfield {

WitnessReport verify_sigma_normal(const Presentation& p, const Element& e,
                                  const SigmaWitness& w, Budget& budget) {
  WitnessReport rep;
  if (e.is_zero()) {
    rep.issues.push_back({"witness element is zero", Element()});
    return rep;
  }
  auto check = [&](const Element& key, const Element& image,
                   const std::string& label) {
    Element lhs = p.multiply(e, key, budget);
    Element rhs = p.multiply(image, e, budget);
    Element r = lhs - rhs;
    if (!r.is_zero()) rep.issues.push_back({"e*" + label + " != conj*e", r});
  };
  for (const auto& [g, img] : w.conj)
    check(p.generator_element(g), img, p.gen(g).name);
  for (const auto& [key, img] : w.extra) check(key, img, p.render(key));
  // conj_inv o conj = id and conj o conj_inv = id on tabled generators.
  for (const auto& [g, img] : w.conj_inv) {
    auto it = w.conj.find(g);
    if (it == w.conj.end()) {
      rep.issues.push_back(
          {"conj_inv tabled for " + p.gen(g).name + " without conj",
           Element()});
      continue;
    }
    // conj(conj_inv(g)) = g: substitute conj into conj_inv's image.
    // Images are elements; composition is checked through e:
    // e * conj_inv(g) = g * e  must follow from the table.
    Element lhs = p.multiply(e, img, budget);
    Element rhs = p.multiply(p.generator_element(g), e, budget);
    Element r = lhs - rhs;
    if (!r.is_zero())
      rep.issues.push_back(
          {"conj_inv(" + p.gen(g).name + ") fails e*inv = g*e", r});
  }
  // Multiplicativity on generator pairs: e*g*h = conj(g)*conj(h)*e.
  std::vector<int> tabled;
  for (const auto& [g, img] : w.conj) tabled.push_back(g);
  for (int g : tabled)
    for (int h : tabled) {
      Element lhs = p.multiply(
          p.multiply(e, p.generator_element(g), budget),
          p.generator_element(h), budget);
      Element rhs = p.multiply(
          p.multiply(w.conj.at(g), w.conj.at(h), budget), e, budget);
      Element r = lhs - rhs;
      if (!r.is_zero())
        rep.issues.push_back({"sigma not multiplicative on (" + p.gen(g).name +
                                  "," + p.gen(h).name + ")",
                              r});
    }
  return rep;
}

int LocContext::atom_id(const std::string& name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].name == name) return static_cast<int>(i);
  return -1;
}

int LocContext::register_atom(const std::string& name, Element value,
                              std::optional<SigmaWitness> w) {
  int id = atom_id(name);
  if (id >= 0) return id;
  if (value.is_zero())
    throw EngineError(ErrorKind::UnregisteredInverse,
                      "cannot invert the zero element " + name);
  atoms_.push_back({name, std::move(value), std::move(w)});
  return static_cast<int>(atoms_.size()) - 1;
}

LocExpr LocExpr::from_element(Element e) {
  LocExpr x;
  x.poly_ = std::move(e);
  return x;
}

LocExpr LocExpr::from_atom(int atom_id) {
  LocExpr x;
  Chain c;
  Piece p;
  p.atom = atom_id;
  c.push_back(std::move(p));
  x.chains_.push_back(std::move(c));
  return x;
}

namespace {

/// Normalizes a single chain in place. Returns false when the chain died
/// (a zero element) and leaves a fully merged chain otherwise.
bool normalize_chain(Chain& chain, const LocContext& ctx, Budget& budget) {
  const Presentation& p = ctx.presentation();
  bool changed = true;
  while (changed) {
    changed = false;
    budget.tick();

    // Merge adjacent elements, drop units between other pieces.
    for (std::size_t i = 0; i + 1 < chain.size();) {
      if (!chain[i].is_atom() && !chain[i + 1].is_atom()) {
        chain[i].elem = p.multiply(chain[i].elem, chain[i + 1].elem, budget);
        chain.erase(chain.begin() + i + 1);
        changed = true;
      } else {
        ++i;
      }
    }
    for (const Piece& pc : chain)
      if (!pc.is_atom() && pc.elem.is_zero()) return false;
    // Drop scalar-1 elements adjacent to atoms (pure noise).
    for (std::size_t i = 0; i < chain.size();) {
      if (!chain[i].is_atom() && chain.size() > 1 &&
          chain[i].elem == Element::constant(p.ngens(), Scalar(1))) {
        chain.erase(chain.begin() + i);
        changed = true;
      } else {
        ++i;
      }
    }
    if (changed) continue;

    // Cancellation by exact division.
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (!chain[i].is_atom() && chain[i + 1].is_atom()) {
        const Element& e = ctx.atom(chain[i + 1].atom).value;
        if (auto q = p.divide_right(chain[i].elem, e, budget)) {
          chain[i].elem = std::move(*q);
          chain.erase(chain.begin() + i + 1);
          changed = true;
          break;
        }
      } else if (chain[i].is_atom() && !chain[i + 1].is_atom()) {
        const Element& e = ctx.atom(chain[i].atom).value;
        if (auto q = p.divide_left(chain[i + 1].elem, e, budget)) {
          chain[i].atom = -1;
          chain[i].elem = std::move(*q);
          chain.erase(chain.begin() + i + 1);
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    // Atoms bubble left past elements: X * inv(e) = inv(e) * (e X e^-1)
    // whenever e X e^-1 is polynomial.
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (!chain[i].is_atom() && chain[i + 1].is_atom()) {
        const Element& e = ctx.atom(chain[i + 1].atom).value;
        Element ex = p.multiply(e, chain[i].elem, budget);
        if (auto w = p.divide_right(ex, e, budget)) {
          Piece atom = chain[i + 1];
          chain[i + 1].atom = -1;
          chain[i + 1].elem = std::move(*w);
          chain[i] = std::move(atom);
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    // Adjacent atoms in id order when the values q-commute.
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (chain[i].is_atom() && chain[i + 1].is_atom() &&
          chain[i].atom > chain[i + 1].atom) {
        const Element& ea = ctx.atom(chain[i].atom).value;
        const Element& eb = ctx.atom(chain[i + 1].atom).value;
        Element ab = p.multiply(ea, eb, budget);
        Element ba = p.multiply(eb, ea, budget);
        if (auto nu = ab.proportional_to(ba)) {
          std::swap(chain[i], chain[i + 1]);
          // inv(a) inv(b) = nu * inv(b) inv(a); fold nu into a neighbor.
          Piece scale;
          scale.elem = Element::constant(p.ngens(), *nu);
          chain.insert(chain.begin() + i, std::move(scale));
          changed = true;
          break;
        }
      }
    }
  }
  return true;
}

}  // namespace

void LocExpr::push_chain(Chain c, const LocContext& ctx, Budget& budget) {
  if (!normalize_chain(c, ctx, budget)) return;  // zero chain
  if (c.empty()) {
    poly_.add(Element::constant(ctx.presentation().ngens(), Scalar(1)));
    return;
  }
  if (c.size() == 1 && !c[0].is_atom()) {
    poly_.add(c[0].elem);
    return;
  }
  // Merge with an existing chain equal except for the final element.
  auto same_prefix = [&](const Chain& a, const Chain& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      if (a[i].is_atom() != b[i].is_atom()) return false;
      if (a[i].is_atom() && a[i].atom != b[i].atom) return false;
      if (!a[i].is_atom() && !(a[i].elem == b[i].elem)) return false;
    }
    if (a.back().is_atom() != b.back().is_atom()) return false;
    if (a.back().is_atom()) return a.back().atom == b.back().atom;
    return true;  // both end in elements: mergeable
  };
  for (auto it = chains_.begin(); it != chains_.end(); ++it) {
    if (!same_prefix(*it, c)) continue;
    if (!c.back().is_atom()) {
      it->back().elem += c.back().elem;
      Chain merged = std::move(*it);
      chains_.erase(it);
      push_chain(std::move(merged), ctx, budget);
      return;
    }
    // Identical chains ending in an atom: coefficient 2; fold by
    // prepending a scalar 2 piece.
    Chain merged = std::move(*it);
    chains_.erase(it);
    Piece two;
    two.elem = Element::constant(ctx.presentation().ngens(), Scalar(2));
    merged.insert(merged.begin(), std::move(two));
    push_chain(std::move(merged), ctx, budget);
    return;
  }
  chains_.push_back(std::move(c));
}

namespace {

Chain scaled_chain(Chain ch, const Scalar& c, std::size_t ngens) {
  for (auto& pc : ch)
    if (!pc.is_atom()) {
      pc.elem *= c;
      return ch;
    }
  Piece s;
  s.elem = Element::constant(ngens, c);
  ch.insert(ch.begin(), std::move(s));
  return ch;
}

}  // namespace

LocExpr LocExpr::add(const LocExpr& o, const Scalar& c,
                     const LocContext& ctx) const {
  LocExpr out = *this;
  out.poly_.add(o.poly_, c);
  std::size_t n = ctx.presentation().ngens();
  for (const Chain& ch : o.chains_) {
    Chain copy = ospfield::is_one(c) ? ch : scaled_chain(ch, c, n);
    out.chains_.push_back(std::move(copy));
  }
  return out;
}

LocExpr LocExpr::scale(const Scalar& c, const LocContext& ctx) const {
  LocExpr out;
  if (ospfield::is_zero(c)) return out;
  out.poly_ = poly_;
  out.poly_ *= c;
  std::size_t n = ctx.presentation().ngens();
  for (const Chain& ch : chains_)
    out.chains_.push_back(scaled_chain(ch, c, n));
  return out;
}

LocExpr LocExpr::mul(const LocExpr& o, const LocContext& ctx,
                     Budget& budget) const {
  const Presentation& p = ctx.presentation();
  LocExpr out;
  // poly * poly
  if (!poly_.is_zero() && !o.poly_.is_zero())
    out.poly_.add(p.multiply(poly_, o.poly_, budget));
  auto poly_piece = [&](const Element& e) {
    Piece pc;
    pc.elem = e;
    return pc;
  };
  // poly * chain and chain * poly and chain * chain
  for (const Chain& cb : o.chains_) {
    if (poly_.is_zero()) break;
    Chain c;
    c.push_back(poly_piece(poly_));
    c.insert(c.end(), cb.begin(), cb.end());
    out.push_chain(std::move(c), ctx, budget);
  }
  for (const Chain& ca : chains_) {
    if (!o.poly_.is_zero()) {
      Chain c = ca;
      c.push_back(poly_piece(o.poly_));
      out.push_chain(std::move(c), ctx, budget);
    }
    for (const Chain& cb : o.chains_) {
      Chain c = ca;
      c.insert(c.end(), cb.begin(), cb.end());
      out.push_chain(std::move(c), ctx, budget);
    }
  }
  out.normalize(ctx, budget);
  return out;
}

LocExpr LocExpr::power(int n, const LocContext& ctx, Budget& budget) const {
  if (n < 0)
    throw EngineError(ErrorKind::UnregisteredInverse,
                      "negative power of a compound expression");
  LocExpr out = LocExpr::from_element(
      Element::constant(ctx.presentation().ngens(), Scalar(1)));
  for (int i = 0; i < n; ++i) out = out.mul(*this, ctx, budget);
  return out;
}

void LocExpr::normalize(const LocContext& ctx, Budget& budget) {
  std::vector<Chain> pending = std::move(chains_);
  chains_.clear();
  for (Chain& c : pending) push_chain(std::move(c), ctx, budget);
}

std::string LocExpr::render(const LocContext& ctx) const {
  const Presentation& p = ctx.presentation();
  std::ostringstream os;
  bool first = true;
  if (!poly_.is_zero() || chains_.empty()) {
    os << p.render(poly_);
    first = false;
  }
  for (const Chain& c : chains_) {
    if (!first) os << " + ";
    bool inner = true;
    for (const Piece& pc : c) {
      if (!inner) os << "*";
      if (pc.is_atom())
        os << "inv(" << ctx.atom(pc.atom).name << ")";
      else
        os << "(" << p.render(pc.elem) << ")";
      inner = false;
    }
    first = false;
  }
  return os.str();
}

ClearOutcome clear_and_verify(const LocContext& ctx, const LocExpr& lhs,
                              const LocExpr& rhs,
                              const std::vector<RecipeStepValue>& steps,
                              Budget& budget) {
  LocExpr d = lhs.add(rhs, Scalar(-1), ctx);
  d.normalize(ctx, budget);
  for (const auto& step : steps) {
    switch (step.kind) {
      case RecipeStepValue::Kind::LMul:
        d = step.operand.mul(d, ctx, budget);
        break;
      case RecipeStepValue::Kind::RMul:
        d = d.mul(step.operand, ctx, budget);
        break;
      case RecipeStepValue::Kind::Use:
      case RecipeStepValue::Kind::Cancel:
        d.normalize(ctx, budget);
        break;
    }
  }
  ClearOutcome out;
  out.cleared = d.is_polynomial();
  out.zero = d.is_zero();
  if (out.cleared) out.residual = d.poly();
  out.rendered = d.render(ctx);
  return out;
}

}  // namespace ospfield
