#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ospfield/expr.hpp"
#include "ospfield/liesuper.hpp"
#include "ospfield/localization.hpp"
#include "ospfield/presentation.hpp"

namespace ospfield {

struct RecipeStepSyntax {
  enum class Kind { LMul, RMul, Use, Cancel } kind;
  ExprPtr expr;      // lmul/rmul operand
  std::string name;  // use target
};

struct WitnessClause {
  std::string generator;
  ExprPtr expr;
  std::vector<RecipeStepSyntax> recipe;
};

struct Statement {
  enum class Kind {
    Algebra,
    Let,
    AssertZero,
    AssertEq,
    AssertCommute,
    AssertAnticommute,
    AssertCentral,
    SigmaNormal,
    AdjoinInverse,
    Represent,
    CenterDim,
    CompareTable,
  };
  Kind kind;
  int line = 0;
  std::string label;  // optional "name:" prefix, referenced by use(name)

  // Algebra
  std::string bind_name, builtin;
  std::vector<int> args;
  // Let / AdjoinInverse / SigmaNormal subject
  std::string name;
  ExprPtr expr;  // Let value, AssertZero/AssertCentral operand, lhs of binary
  ExprPtr rhs;   // AssertEq/Commute/Anticommute second operand
  std::vector<RecipeStepSyntax> recipe;
  std::vector<std::pair<std::string, ExprPtr>> entries;  // sigma table, dict
  // Represent
  std::vector<std::string> rep_gens;
  std::vector<WitnessClause> witnesses;
  // CenterDim
  int degree = 0, expect = 0;
  // CompareTable
  std::string golden;
};

struct ClaimScript {
  std::string name;
  std::vector<Statement> statements;
};

ClaimScript parse_claims(const std::string& name, const std::string& text);
std::string render_claims(const ClaimScript& script);

struct StatementResult {
  enum class Status { Pass, Fail, Error };
  int line = 0;
  std::string kind;
  std::string text;    // one-line statement summary
  Status status = Status::Pass;
  std::string detail;  // residual / error message
  long micros = 0;
};

struct ClaimReport {
  std::string script;
  std::vector<StatementResult> results;
  long wall_micros = 0;
  bool passed() const {
    for (const auto& r : results)
      if (r.status != StatementResult::Status::Pass) return false;
    return true;
  }
  int count(StatementResult::Status s) const {
    int n = 0;
    for (const auto& r : results) n += (r.status == s);
    return n;
  }
  std::string render_text() const;
  std::string render_json() const;  // schema_version field included
};

/// Executes statements in order; later statements run even after
/// failures. `golden_lookup` resolves compare_table golden names.
ClaimReport run_claims(
    const ClaimScript& script,
    const std::function<std::string(const std::string&)>& golden_lookup);
ClaimReport run_claims(const ClaimScript& script);

/// Runs with a mutated osp(1,2) table substituted for the osp builtin
/// (failure-isolation tests).
ClaimReport run_claims_with_lie_override(const ClaimScript& script,
                                         const LieSuperAlgebra& osp12_override);

struct CorpusFile {
  std::string name;
  std::string content;
};

const std::vector<CorpusFile>& corpus_files();    // embedded claim scripts
const std::vector<CorpusFile>& corpus_goldens();  // embedded golden tables
std::string corpus_golden(const std::string& name);

std::vector<std::pair<std::string, ClaimScript>> corpus();

}  // namespace ospfield
