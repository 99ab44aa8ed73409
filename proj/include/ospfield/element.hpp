#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ospfield/monomial.hpp"
#include "ospfield/scalar.hpp"

namespace ospfield {

/// Finite map PBW monomial -> nonzero rational. The empty map is the
/// unique zero; equality is syntactic on this canonical form.
class Element {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialLess>;

  Element() = default;

  static Element zero() { return Element(); }
  static Element constant(std::size_t ngens, const Scalar& c) {
    Element e;
    e.add_term(Monomial(ngens), c);
    return e;
  }
  static Element monomial(Monomial m, const Scalar& c) {
    Element e;
    e.add_term(std::move(m), c);
    return e;
  }
  static Element generator(std::size_t ngens, std::size_t pos,
                           int32_t power = 1) {
    Monomial m(ngens);
    m.exp[pos] = power;
    return monomial(std::move(m), Scalar(1));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(Monomial m, const Scalar& c) {
    if (ospfield::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (ospfield::is_zero(it->second)) terms_.erase(it);
    }
  }

  void add(const Element& o, const Scalar& c = Scalar(1)) {
    for (const auto& [m, v] : o.terms_) add_term(m, v * c);
  }

  Element& operator+=(const Element& o) {
    add(o);
    return *this;
  }
  Element& operator-=(const Element& o) {
    add(o, Scalar(-1));
    return *this;
  }
  Element& operator*=(const Scalar& c) {
    if (ospfield::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }

  bool operator==(const Element& o) const { return terms_ == o.terms_; }

  int degree() const {
    int d = 0;
    for (const auto& [m, v] : terms_) d = std::max(d, m.degree());
    return d;
  }

  /// Leading term under the position-lex order (for division).
  const std::pair<const Monomial, Scalar>* leading_poslex() const {
    const std::pair<const Monomial, Scalar>* best = nullptr;
    for (const auto& t : terms_) {
      if (!best || compare_poslex(best->first, t.first) < 0) best = &t;
    }
    return best;
  }

  /// c if this == c * o for a single nonzero scalar c.
  std::optional<Scalar> proportional_to(const Element& o) const {
    if (is_zero() || o.is_zero()) return std::nullopt;
    if (terms_.size() != o.terms_.size()) return std::nullopt;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    Scalar ratio = it->second / jt->second;
    for (; it != terms_.end(); ++it, ++jt) {
      if (!(it->first == jt->first)) return std::nullopt;
      if (it->second != jt->second * ratio) return std::nullopt;
    }
    return ratio;
  }

  /// 0 for even, 1 for odd, nullopt if mixed. Parity of a monomial is the
  /// sum of odd-generator exponents mod 2.
  std::optional<int> parity(const std::vector<int>& gen_parity) const {
    std::optional<int> p;
    for (const auto& [m, v] : terms_) {
      int q = 0;
      for (std::size_t i = 0; i < m.exp.size(); ++i)
        q += gen_parity[i] * std::abs(m.exp[i]);
      q &= 1;
      if (!p)
        p = q;
      else if (*p != q)
        return std::nullopt;
    }
    return p ? p : std::optional<int>(0);
  }

  /// Terms in descending order, coefficients as reduced fractions:
  /// "-1*b+*b- + 2*k", "b1p^-2*t" renders with explicit exponents.
  std::string render(const std::vector<std::string>& names) const;

 private:
  Terms terms_;
};

std::string render_monomial(const Monomial& m,
                            const std::vector<std::string>& names);

}  // namespace ospfield
