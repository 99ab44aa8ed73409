#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ospfield/presentation.hpp"

namespace ospfield {

/// Linear combination of basis vectors, by basis index.
struct LinComb {
  std::map<int, Scalar> c;

  bool is_zero() const { return c.empty(); }
  void add(int i, const Scalar& v) {
    if (ospfield::is_zero(v)) return;
    auto [it, ins] = c.try_emplace(i, v);
    if (!ins) {
      it->second += v;
      if (ospfield::is_zero(it->second)) c.erase(it);
    }
  }
  void add(const LinComb& o, const Scalar& s = Scalar(1)) {
    for (const auto& [i, v] : o.c) add(i, v * s);
  }
  bool operator==(const LinComb& o) const { return c == o.c; }
};

struct JacobiViolation {
  int i, j, k;
  LinComb residual;
};

struct ValidationReport {
  std::vector<JacobiViolation> violations;
  bool passed() const { return violations.empty(); }
};

struct ClosureFailureInfo {
  int i, j;          // offending pair (indices in the parent)
  LinComb escaping;  // the part of [x_i,x_j} outside the span
};

/// Basis with parities and super structure constants. [x_i,x_j} is the
/// anticommutator when both entries are odd, the commutator otherwise.
class LieSuperAlgebra {
 public:
  LieSuperAlgebra(std::string name,
                  std::vector<std::pair<std::string, int>> basis);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::pair<std::string, int>>& basis() const {
    return basis_;
  }
  int parity(int i) const { return basis_.at(i).second; }
  const std::string& basis_name(int i) const { return basis_.at(i).first; }
  int index(const std::string& name) const;
  int require_index(const std::string& name) const;

  void set_bracket(int i, int j, LinComb v);
  const LinComb& bracket(int i, int j) const;
  LinComb bracket(const LinComb& a, int pa, const LinComb& b, int pb) const;

  /// Super-antisymmetry and bracket-parity checks over all pairs.
  std::vector<std::string> structural_violations() const;

  std::string render_bracket(int i, int j) const;
  /// One line per pair (i <= j in basis order; diagonal only for odd i):
  /// "[x,y] = expr" or "{x,y} = expr".
  std::string render_table(const std::vector<int>& subset) const;
  std::string render_table() const;

  std::string render_lincomb(const LinComb& v) const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, int>> basis_;
  std::vector<std::vector<LinComb>> table_;  // full matrix
  std::map<std::string, int> index_;
};

/// osp(1,2n) from the parabose relations; dimension 2n^2 + 3n.
LieSuperAlgebra build_osp(int n);

ValidationReport validate_jacobi(const LieSuperAlgebra& L);

std::variant<LieSuperAlgebra, ClosureFailureInfo> subalgebra(
    const LieSuperAlgebra& L, const std::vector<std::string>& names);

LieSuperAlgebra require_subalgebra(const LieSuperAlgebra& L,
                                   const std::vector<std::string>& names);

/// Full-basis enveloping presentation: one rule per ordered pair plus
/// square rules for odd generators with nonzero self-bracket.
Presentation enveloping(const LieSuperAlgebra& L,
                        const std::vector<std::string>& order,
                        bool require_jacobi = true);

/// Enveloping presentation on a generating subset; eliminated basis
/// elements are substituted by the given expressions over the kept
/// generators (e.g. c_i^+ -> (b_i^+)^2).
Presentation enveloping_reduced(
    const LieSuperAlgebra& L, const std::string& pres_name,
    const std::vector<std::string>& order,
    const std::map<std::string, std::string>& eliminated,
    bool require_jacobi = true);

struct DictionaryEntry {
  std::string new_name;
  LinComb image;  // over the old basis
};

struct DictionaryTable {
  std::vector<DictionaryEntry> renaming;
  std::string expected;  // rendered table text under the new names
};

struct TableDiff {
  std::string pair;  // "[x,y]" or "{x,y}"
  std::string computed;
  std::string expected;
};

struct DiffReport {
  std::vector<TableDiff> diffs;
  std::string computed_table;
  bool passed() const { return diffs.empty(); }
};

/// Recomputes all brackets of the renamed family, re-expresses them in the
/// new names (exact linear solve) and diffs against the expected table.
DiffReport compare_table(const LieSuperAlgebra& L, const DictionaryTable& d);

/// Parses a rendered table back into lines keyed by pair, for diffing.
std::map<std::string, std::string> parse_table_lines(const std::string& text);

/// 7-dimensional Lie algebra tables frozen as golden data.
LieSuperAlgebra lie_from_table(const std::string& name,
                               const std::vector<std::pair<std::string, int>>& basis,
                               const std::string& table_text);

}  // namespace ospfield
