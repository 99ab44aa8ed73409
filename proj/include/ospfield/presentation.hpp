#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ospfield/element.hpp"

namespace ospfield {

enum class ErrorKind {
  UnknownGenerator,
  NegativePowerOfNonInvertible,
  ReductionBudgetExceeded,
  NonHomogeneousOperand,
  MissingImage,
  UnregisteredInverse,
  ClosureFailure,
  SigmaNormalityFailed,
  ConfluenceFailed,
  RecipeDidNotClear,
  UnknownIdentityReference,
  InvalidParameters,
  UnclassifiablePair,
  LocalizedPresentationUnsupported,
  SyntaxError,
  UnknownBuiltin,
  UseBeforeDefine,
  InvalidRule,
};

class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

const char* error_kind_name(ErrorKind k);

/// Rule-application budget. Exceeding it is an error, never a wrong answer.
struct Budget {
  long limit = 1'000'000;
  long used = 0;
  void tick() {
    if (++used > limit)
      throw EngineError(ErrorKind::ReductionBudgetExceeded,
                        "reduction budget exceeded (" + std::to_string(limit) +
                            " rule applications)");
  }
};

long default_budget_limit();  // honors OSPFIELD_BUDGET

struct GeneratorInfo {
  std::string name;
  int parity = 0;  // 0 even, 1 odd
  bool invertible = false;
};

/// g_hi * g_lo = q * g_lo * g_hi + tail, with hi > lo.
struct PairRule {
  Scalar q = Scalar(1);
  Element tail;
};

/// One letter of a word: generator position and a nonzero exponent.
struct Letter {
  int pos;
  int32_t exp;
};
using Word = std::vector<Letter>;

enum class BracketKind { Comm, Acomm, Super };

struct ConfluenceMismatch {
  Word word;
  Element left;   // reduce leftmost pair first
  Element right;  // reduce rightmost pair first
};

struct ConfluenceReport {
  std::vector<ConfluenceMismatch> mismatches;
  long words_checked = 0;
  bool passed() const { return mismatches.empty(); }
};

/// A PBW-type presentation: ordered generators with one straightening rule
/// per out-of-order pair, plus optional odd-square rules g^2 -> tail.
/// Immutable after validation; all operations are pure.
class Presentation {
 public:
  Presentation(std::string name, std::vector<GeneratorInfo> gens);

  const std::string& name() const { return name_; }
  std::size_t ngens() const { return gens_.size(); }
  const std::vector<GeneratorInfo>& generators() const { return gens_; }
  const GeneratorInfo& gen(int pos) const { return gens_.at(pos); }
  std::vector<std::string> names() const;
  std::vector<int> parities() const;

  int position(const std::string& name) const;  // -1 if absent
  int require_position(const std::string& name) const;
  void add_alias(const std::string& alias, const std::string& name);
  void rename_generator(const std::string& from, const std::string& to);

  /// Rules must cover every pair hi > lo before use.
  void set_rule(int hi, int lo, Scalar q, Element tail);
  bool has_rule(int hi, int lo) const { return bool(rules_[hi][lo]); }
  const PairRule& rule(int hi, int lo) const;
  void set_self_rule(int pos, Element tail);  // g_pos^2 -> tail
  const Element* self_rule(int pos) const;
  bool rules_complete() const;

  void set_validated(bool v) { validated_ = v; }
  bool validated() const { return validated_; }

  /// Marks a generator invertible. Rejects tailed rules against other
  /// invertible generators and generators carrying a square rule.
  void mark_invertible(const std::string& name);

  // --- straightening -------------------------------------------------

  Element normalize_word(const Word& w, Budget& budget) const;
  Element normalize_words(std::vector<std::pair<Scalar, Word>> words,
                          Budget& budget) const;

  Element multiply(const Element& a, const Element& b, Budget& budget) const;
  Element multiply(const Element& a, const Element& b) const;

  Element power(const Element& a, int n, Budget& budget) const;

  Element bracket(const Element& a, const Element& b, BracketKind kind,
                  Budget& budget) const;
  Element bracket(const Element& a, const Element& b, BracketKind kind) const;

  Element constant(const Scalar& c) const {
    return Element::constant(ngens(), c);
  }
  Element generator_element(int pos, int32_t power = 1) const {
    validate_power(pos, power);
    return Element::generator(ngens(), pos, power);
  }

  Word monomial_word(const Monomial& m) const;

  /// Exact one-sided division in the presented algebra: X = e * Y
  /// (left) or X = Y * e (right). Returns nullopt when no quotient
  /// exists or a leading-term step fails to be multiplicative.
  std::optional<Element> divide_left(const Element& x, const Element& e,
                                     Budget& budget) const;
  std::optional<Element> divide_right(const Element& x, const Element& e,
                                      Budget& budget) const;

  /// Reduces overlap words by both critical strategies and compares.
  /// Covers all ordered triples of positive letters and, when inverses
  /// exist, every length-3 word containing an inverse letter. max_degree
  /// beyond 3 extends to longer words over the positive alphabet.
  ConfluenceReport check_confluence(int max_degree, Budget& budget) const;
  ConfluenceReport check_confluence(int max_degree = 3) const;

  std::string render(const Element& e) const;
  std::string render_rules() const;

  long budget_limit() const { return budget_limit_; }
  void set_budget_limit(long l) { budget_limit_ = l; }

 private:
  void validate_power(int pos, int32_t power) const;
  void validate_tail(int hi, int lo, const Element& tail) const;
  // Expands g_hi^sa * g_lo^sb (unit exponents) into ordered-ward words.
  void expand_unit_pair(int hi, int sa, int lo, int sb,
                        std::vector<std::pair<Scalar, Word>>& out) const;

  std::string name_;
  std::vector<GeneratorInfo> gens_;
  std::vector<std::vector<std::optional<PairRule>>> rules_;  // [hi][lo], hi>lo
  std::map<int, Element> self_rules_;
  std::unordered_map<std::string, int> index_;
  long budget_limit_;
  bool validated_ = false;
};

/// Words of tail monomials, smallest-position first.
std::vector<std::pair<Scalar, Word>> element_words(const Element& e);

}  // namespace ospfield
