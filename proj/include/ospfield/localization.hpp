#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ospfield/presentation.hpp"

namespace ospfield {

/// Conjugation table certifying e*g = conj(g)*e. `conj`/`conj_inv` cover
/// generator positions; `extra` carries entries keyed by arbitrary
/// elements (for witnesses declared against named elements).
struct SigmaWitness {
  std::map<int, Element> conj;
  std::map<int, Element> conj_inv;
  std::vector<std::pair<Element, Element>> extra;  // e*key = image*e
  bool covers_all_generators = false;
};

struct WitnessIssue {
  std::string what;
  Element residual;
};

struct WitnessReport {
  std::vector<WitnessIssue> issues;
  bool passed() const { return issues.empty(); }
};

/// Checks e*g - conj(g)*e = 0 for every table entry, conj_inv o conj = id,
/// and multiplicativity on generator pairs.
WitnessReport verify_sigma_normal(const Presentation& p, const Element& e,
                                  const SigmaWitness& w, Budget& budget);

/// An adjoined inverse symbol inv(e) for a named element of the base
/// presentation. Atoms without a witness are cleared by recipes only.
struct AtomInfo {
  std::string name;
  Element value;
  std::optional<SigmaWitness> witness;
};

/// Localization context on top of an immutable presentation: the set of
/// registered inverse atoms.
class LocContext {
 public:
  explicit LocContext(const Presentation* p) : p_(p) {}
  const Presentation& presentation() const { return *p_; }
  void rebind(const Presentation* p) { p_ = p; }

  int atom_id(const std::string& name) const;
  const AtomInfo& atom(int id) const { return atoms_.at(id); }
  int register_atom(const std::string& name, Element value,
                    std::optional<SigmaWitness> w);
  std::size_t atom_count() const { return atoms_.size(); }

 private:
  const Presentation* p_;
  std::vector<AtomInfo> atoms_;
};

/// One factor of a chain: either a normalized Element of the base
/// presentation or an inverse atom.
struct Piece {
  int atom = -1;  // >= 0: atom id; -1: element
  Element elem;
  bool is_atom() const { return atom >= 0; }
};

using Chain = std::vector<Piece>;

/// Linear combination of chains over the localized algebra. Kept
/// canonical: pure-element chains are folded into the polynomial part,
/// atoms bubble left past elements via exact division, adjacent
/// element/atom pairs cancel when division succeeds.
class LocExpr {
 public:
  LocExpr() = default;
  static LocExpr from_element(Element e);
  static LocExpr from_atom(int atom_id);

  bool is_polynomial() const { return chains_.empty(); }
  const Element& poly() const { return poly_; }
  bool is_zero() const { return chains_.empty() && poly_.is_zero(); }
  const std::vector<Chain>& chains() const { return chains_; }

  LocExpr add(const LocExpr& o, const Scalar& c, const LocContext& ctx) const;
  LocExpr mul(const LocExpr& o, const LocContext& ctx, Budget& budget) const;
  LocExpr scale(const Scalar& c, const LocContext& ctx) const;
  LocExpr power(int n, const LocContext& ctx, Budget& budget) const;

  void normalize(const LocContext& ctx, Budget& budget);
  std::string render(const LocContext& ctx) const;

 private:
  void push_chain(Chain c, const LocContext& ctx, Budget& budget);

  Element poly_;
  std::vector<Chain> chains_;
};

/// Recipe steps, already evaluated to concrete multipliers.
struct RecipeStepValue {
  enum class Kind { LMul, RMul, Use, Cancel } kind;
  LocExpr operand;   // LMul/RMul
  std::string name;  // Use
};

struct ClearOutcome {
  bool cleared = false;  // no atoms survived
  bool zero = false;     // cleared and the residual element is 0
  Element residual;      // meaningful when cleared
  std::string rendered;  // residual (or remaining chains) for reports
};

/// Applies recipe steps to lhs - rhs and decides zero-ness. Sound: zero
/// is only reported when the cleared element is exactly 0.
ClearOutcome clear_and_verify(const LocContext& ctx, const LocExpr& lhs,
                              const LocExpr& rhs,
                              const std::vector<RecipeStepValue>& steps,
                              Budget& budget);

}  // namespace ospfield
