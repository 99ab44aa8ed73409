#include "ospfield/claims.hpp"

#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ospfield/builtins.hpp"
#include "ospfield/centralizer.hpp"

namespace ospfield {

namespace {

// ---------------------------------------------------------------- parsing

struct LogicalLine {
  int line;  // 1-based first physical line
  std::string text;
};

std::vector<LogicalLine> logical_lines(const std::string& text) {
  std::vector<LogicalLine> out;
  std::istringstream is(text);
  std::string phys;
  int lineno = 0;
  int start = 0;
  std::string acc;
  bool joining = false;
  while (std::getline(is, phys)) {
    ++lineno;
    if (!phys.empty() && phys.back() == '\r') phys.pop_back();
    auto hash = phys.find('#');
    if (hash != std::string::npos) phys = phys.substr(0, hash);
    bool cont = false;
    auto last = phys.find_last_not_of(" \t");
    if (last != std::string::npos && phys[last] == '\\') {
      cont = true;
      phys = phys.substr(0, last);
    }
    if (!joining) {
      acc = phys;
      start = lineno;
    } else {
      acc += " " + phys;
    }
    joining = cont;
    if (!joining) {
      auto a = acc.find_first_not_of(" \t");
      if (a != std::string::npos)
        out.push_back({start, acc.substr(a, acc.find_last_not_of(" \t") - a + 1)});
      acc.clear();
    }
  }
  if (joining) {
    auto a = acc.find_first_not_of(" \t");
    if (a != std::string::npos) out.push_back({start, acc.substr(a)});
  }
  return out;
}

struct LineParser {
  const std::string& s;
  std::size_t i = 0;
  int line;

  [[noreturn]] void fail(const std::string& msg) const {
    throw EngineError(ErrorKind::SyntaxError,
                      "line " + std::to_string(line) + ", column " +
                          std::to_string(i + 1) + ": " + msg);
  }
  void ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    ws();
    return i >= s.size();
  }
  bool try_char(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_char(c)) fail(std::string("expected '") + c + "'");
  }
  bool try_word(const std::string& w) {
    ws();
    if (s.compare(i, w.size(), w) != 0) return false;
    std::size_t j = i + w.size();
    if (j < s.size() && (std::isalnum(s[j]) || s[j] == '_')) return false;
    i = j;
    return true;
  }
  std::string ident(bool allow_sign = true) {
    ws();
    std::size_t j = i;
    if (j >= s.size() || !(std::isalpha(s[j]) || s[j] == '_'))
      fail("expected name");
    while (j < s.size() && (std::isalnum(s[j]) || s[j] == '_')) ++j;
    if (allow_sign && j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    std::string out = s.substr(i, j - i);
    i = j;
    return out;
  }
  int integer() {
    ws();
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    std::size_t k = j;
    while (k < s.size() && std::isdigit(s[k])) ++k;
    if (k == j) fail("expected integer");
    int v = std::atoi(s.substr(i, k - i).c_str());
    i = k;
    return v;
  }
  std::string token() {  // up to whitespace
    ws();
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    std::string out = s.substr(i, j - i);
    i = j;
    return out;
  }
};

class ScriptParser {
 public:
  explicit ScriptParser(std::string name) : name_(std::move(name)) {
    known_.insert("inv");
    known_.insert("comm");
    known_.insert("acomm");
  }

  ClaimScript parse(const std::string& text) {
    ClaimScript script;
    script.name = name_;
    for (const auto& ll : logical_lines(text)) {
      LineParser lp{ll.text, 0, ll.line};
      script.statements.push_back(statement(lp));
    }
    return script;
  }

 private:
  SymbolOracle oracle() {
    return [this](const std::string& n) { return known_.count(n) > 0; };
  }

  ExprPtr expr(LineParser& lp, const std::vector<std::string>& stop) {
    lp.ws();
    try {
      return parse_expr_prefix(lp.s, lp.i, oracle(), stop);
    } catch (const EngineError& e) {
      throw EngineError(ErrorKind::SyntaxError,
                        "line " + std::to_string(lp.line) + ", column " +
                            std::to_string(lp.i + 1) + ": " + e.what());
    }
  }

  std::vector<RecipeStepSyntax> recipe(LineParser& lp) {
    std::vector<RecipeStepSyntax> steps;
    if (!lp.try_word("via")) return steps;
    while (true) {
      RecipeStepSyntax st;
      if (lp.try_word("lmul") || lp.try_word("LMul")) {
        st.kind = RecipeStepSyntax::Kind::LMul;
        lp.expect('(');
        st.expr = expr(lp, {});
        lp.expect(')');
      } else if (lp.try_word("rmul") || lp.try_word("RMul")) {
        st.kind = RecipeStepSyntax::Kind::RMul;
        lp.expect('(');
        st.expr = expr(lp, {});
        lp.expect(')');
      } else if (lp.try_word("use") || lp.try_word("UseIdentity")) {
        st.kind = RecipeStepSyntax::Kind::Use;
        lp.expect('(');
        st.name = lp.ident();
        lp.expect(')');
      } else if (lp.try_word("cancel") || lp.try_word("CancelAdjacentInverses")) {
        st.kind = RecipeStepSyntax::Kind::Cancel;
      } else {
        lp.fail("expected recipe step (lmul/rmul/use/cancel)");
      }
      steps.push_back(std::move(st));
      if (!lp.try_char(';')) break;
    }
    return steps;
  }

  Statement statement(LineParser& lp) {
    Statement st;
    st.line = lp.line;

    // Optional label: IDENT ':' before a statement keyword.
    {
      std::size_t save = lp.i;
      std::string first;
      lp.ws();
      if (lp.i < lp.s.size() && (std::isalpha(lp.s[lp.i]) || lp.s[lp.i] == '_')) {
        std::size_t j = lp.i;
        while (j < lp.s.size() && (std::isalnum(lp.s[j]) || lp.s[j] == '_')) ++j;
        first = lp.s.substr(lp.i, j - lp.i);
        if (!is_keyword(first)) {
          std::size_t k = j;
          while (k < lp.s.size() && (lp.s[k] == ' ' || lp.s[k] == '\t')) ++k;
          if (k < lp.s.size() && lp.s[k] == ':') {
            st.label = first;
            lp.i = k + 1;
          } else {
            lp.i = save;
          }
        }
      }
    }

    if (lp.try_word("algebra")) {
      st.kind = Statement::Kind::Algebra;
      st.bind_name = lp.ident(false);
      lp.expect('=');
      st.builtin = lp.ident(false);
      if (lp.try_char('(')) {
        if (!lp.try_char(')')) {
          while (true) {
            st.args.push_back(lp.integer());
            if (lp.try_char(')')) break;
            lp.expect(',');
          }
        }
      }
      if (!lp.done()) lp.fail("trailing input after algebra statement");
      auto syms = builtin_symbols(st.builtin, st.args);
      known_.insert(syms.begin(), syms.end());
      return st;
    }
    if (lp.try_word("let")) {
      st.kind = Statement::Kind::Let;
      st.name = lp.ident(false);
      lp.expect('=');
      st.expr = expr(lp, {});
      if (!lp.done()) lp.fail("trailing input after let");
      known_.insert(st.name);
      return st;
    }
    if (lp.try_word("assert_zero")) {
      st.kind = Statement::Kind::AssertZero;
      st.expr = expr(lp, {"via"});
      st.recipe = recipe(lp);
      if (!lp.done()) lp.fail("trailing input after assert_zero");
      return st;
    }
    if (lp.try_word("assert_eq")) {
      st.kind = Statement::Kind::AssertEq;
      st.expr = expr(lp, {"via"});
      lp.expect(',');
      st.rhs = expr(lp, {"via"});
      st.recipe = recipe(lp);
      if (!lp.done()) lp.fail("trailing input after assert_eq");
      return st;
    }
    if (lp.try_word("assert_commute")) {
      st.kind = Statement::Kind::AssertCommute;
      st.expr = expr(lp, {"via"});
      lp.expect(',');
      st.rhs = expr(lp, {"via"});
      st.recipe = recipe(lp);
      if (!lp.done()) lp.fail("trailing input");
      return st;
    }
    if (lp.try_word("assert_anticommute")) {
      st.kind = Statement::Kind::AssertAnticommute;
      st.expr = expr(lp, {"via"});
      lp.expect(',');
      st.rhs = expr(lp, {"via"});
      st.recipe = recipe(lp);
      if (!lp.done()) lp.fail("trailing input");
      return st;
    }
    if (lp.try_word("assert_central")) {
      st.kind = Statement::Kind::AssertCentral;
      st.expr = expr(lp, {"via"});
      st.recipe = recipe(lp);
      if (!lp.done()) lp.fail("trailing input");
      return st;
    }
    if (lp.try_word("sigma_normal")) {
      st.kind = Statement::Kind::SigmaNormal;
      st.name = lp.ident();
      lp.expect(':');
      while (true) {
        std::string g = lp.ident();
        lp.ws();
        if (lp.s.compare(lp.i, 2, "->") != 0) lp.fail("expected '->'");
        lp.i += 2;
        ExprPtr img = expr(lp, {});
        st.entries.push_back({g, img});
        if (!lp.try_char(',')) break;
      }
      if (!lp.done()) lp.fail("trailing input after sigma_normal");
      return st;
    }
    if (lp.try_word("adjoin_inverse")) {
      st.kind = Statement::Kind::AdjoinInverse;
      st.name = lp.ident();
      if (!lp.done()) lp.fail("trailing input after adjoin_inverse");
      return st;
    }
    if (lp.try_word("represent")) {
      st.kind = Statement::Kind::Represent;
      if (!lp.try_word("target")) lp.fail("expected target=");
      lp.expect('=');
      st.builtin = lp.ident(false);
      lp.expect('(');
      if (!lp.try_char(')')) {
        while (true) {
          st.args.push_back(lp.integer());
          if (lp.try_char(')')) break;
          lp.expect(',');
        }
      }
      if (!lp.try_word("gens")) lp.fail("expected gens=(...)");
      lp.expect('=');
      lp.expect('(');
      while (true) {
        st.rep_gens.push_back(lp.ident());
        if (lp.try_char(')')) break;
        lp.expect(',');
      }
      st.recipe = recipe(lp);  // applies to every relation check
      while (lp.try_word("witness")) {
        WitnessClause w;
        w.generator = lp.ident();
        lp.expect('=');
        w.expr = expr(lp, {"witness", "via"});
        w.recipe = recipe(lp);
        st.witnesses.push_back(std::move(w));
      }
      if (!lp.done()) lp.fail("trailing input after represent");
      return st;
    }
    if (lp.try_word("center_dim")) {
      st.kind = Statement::Kind::CenterDim;
      if (!lp.try_word("d")) lp.fail("expected d=");
      lp.expect('=');
      st.degree = lp.integer();
      if (!lp.try_word("expect")) lp.fail("expected expect=");
      lp.expect('=');
      st.expect = lp.integer();
      if (!lp.done()) lp.fail("trailing input after center_dim");
      return st;
    }
    if (lp.try_word("compare_table")) {
      st.kind = Statement::Kind::CompareTable;
      if (!lp.try_word("dictionary")) lp.fail("expected dictionary=(...)");
      lp.expect('=');
      lp.expect('(');
      while (true) {
        std::string nm = lp.ident();
        lp.expect('=');
        ExprPtr e = expr(lp, {});
        st.entries.push_back({nm, e});
        if (lp.try_char(')')) break;
        lp.expect(',');
      }
      if (!lp.try_word("golden")) lp.fail("expected golden=FILE");
      lp.expect('=');
      st.golden = lp.token();
      if (!lp.done()) lp.fail("trailing input after compare_table");
      return st;
    }
    lp.fail("unknown statement");
  }

  static bool is_keyword(const std::string& w) {
    static const std::set<std::string> kw = {
        "algebra",        "let",           "assert_zero",
        "assert_eq",      "assert_commute", "assert_anticommute",
        "assert_central", "sigma_normal",  "adjoin_inverse",
        "represent",      "center_dim",    "compare_table"};
    return kw.count(w) > 0;
  }

  std::string name_;
  std::set<std::string> known_;
};

std::string render_recipe(const std::vector<RecipeStepSyntax>& steps) {
  if (steps.empty()) return "";
  std::ostringstream os;
  os << " via ";
  bool first = true;
  for (const auto& s : steps) {
    if (!first) os << "; ";
    switch (s.kind) {
      case RecipeStepSyntax::Kind::LMul:
        os << "lmul(" << render_expr(s.expr) << ")";
        break;
      case RecipeStepSyntax::Kind::RMul:
        os << "rmul(" << render_expr(s.expr) << ")";
        break;
      case RecipeStepSyntax::Kind::Use: os << "use(" << s.name << ")"; break;
      case RecipeStepSyntax::Kind::Cancel: os << "cancel"; break;
    }
    first = false;
  }
  return os.str();
}

}  // namespace

ClaimScript parse_claims(const std::string& name, const std::string& text) {
  ScriptParser p(name);
  return p.parse(text);
}

std::string render_statement(const Statement& st) {
  std::ostringstream os;
  if (!st.label.empty()) os << st.label << ": ";
  using K = Statement::Kind;
  switch (st.kind) {
    case K::Algebra: {
      os << "algebra " << st.bind_name << " = " << st.builtin << "(";
      for (std::size_t i = 0; i < st.args.size(); ++i)
        os << (i ? "," : "") << st.args[i];
      os << ")";
      break;
    }
    case K::Let:
      os << "let " << st.name << " = " << render_expr(st.expr);
      break;
    case K::AssertZero:
      os << "assert_zero " << render_expr(st.expr) << render_recipe(st.recipe);
      break;
    case K::AssertEq:
      os << "assert_eq " << render_expr(st.expr) << " , "
         << render_expr(st.rhs) << render_recipe(st.recipe);
      break;
    case K::AssertCommute:
      os << "assert_commute " << render_expr(st.expr) << " , "
         << render_expr(st.rhs) << render_recipe(st.recipe);
      break;
    case K::AssertAnticommute:
      os << "assert_anticommute " << render_expr(st.expr) << " , "
         << render_expr(st.rhs) << render_recipe(st.recipe);
      break;
    case K::AssertCentral:
      os << "assert_central " << render_expr(st.expr)
         << render_recipe(st.recipe);
      break;
    case K::SigmaNormal: {
      os << "sigma_normal " << st.name << " : ";
      for (std::size_t i = 0; i < st.entries.size(); ++i) {
        if (i) os << ", ";
        os << st.entries[i].first << " -> " << render_expr(st.entries[i].second);
      }
      break;
    }
    case K::AdjoinInverse:
      os << "adjoin_inverse " << st.name;
      break;
    case K::Represent: {
      os << "represent target=" << st.builtin << "(";
      for (std::size_t i = 0; i < st.args.size(); ++i)
        os << (i ? "," : "") << st.args[i];
      os << ") gens=(";
      for (std::size_t i = 0; i < st.rep_gens.size(); ++i)
        os << (i ? "," : "") << st.rep_gens[i];
      os << ")" << render_recipe(st.recipe);
      for (const auto& w : st.witnesses)
        os << " witness " << w.generator << " = " << render_expr(w.expr)
           << render_recipe(w.recipe);
      break;
    }
    case K::CenterDim:
      os << "center_dim d=" << st.degree << " expect=" << st.expect;
      break;
    case K::CompareTable: {
      os << "compare_table dictionary=(";
      for (std::size_t i = 0; i < st.entries.size(); ++i) {
        if (i) os << ", ";
        os << st.entries[i].first << "=" << render_expr(st.entries[i].second);
      }
      os << ") golden=" << st.golden;
      break;
    }
  }
  return os.str();
}

std::string render_claims(const ClaimScript& script) {
  std::ostringstream os;
  for (const auto& st : script.statements) os << render_statement(st) << "\n";
  return os.str();
}

// ------------------------------------------------------------------ runner

namespace {

struct RunState {
  std::unique_ptr<Presentation> pres;
  std::optional<LieSuperAlgebra> lie;
  std::unique_ptr<LocContext> loc;
  std::map<std::string, LocExpr> scope;
  std::map<std::string, SigmaWitness> witnesses;
  std::set<std::string> passed_labels;
  const LieSuperAlgebra* osp12_override = nullptr;

  bool has_algebra() const { return pres != nullptr; }
  Presentation& p() {
    if (!pres)
      throw EngineError(ErrorKind::UseBeforeDefine,
                        "no active algebra context");
    return *pres;
  }
};

LocExpr eval_expr(const ExprPtr& e, RunState& st, Budget& budget);

LocExpr resolve_negative_power(const std::string& name, int k, RunState& st,
                               Budget& budget) {
  Presentation& p = st.p();
  LocContext& ctx = *st.loc;
  int gpos = p.position(name);
  auto it = st.scope.find(name);
  if (it != st.scope.end() && it->second.is_polynomial()) {
    const Element& v = it->second.poly();
    // single invertible-generator monomials invert in place
    if (v.term_count() == 1) {
      const auto& [m, c] = *v.terms().begin();
      int nz = -1;
      bool single = true;
      for (std::size_t i = 0; i < m.exp.size(); ++i)
        if (m.exp[i] != 0) {
          if (nz >= 0) single = false;
          nz = static_cast<int>(i);
        }
      if (m.is_unit()) {
        return LocExpr::from_element(p.constant(Scalar(1) / c)).power(
            k, ctx, budget);
      }
      if (single && p.gen(nz).invertible) {
        Element base = Element::monomial(
            [&] {
              Monomial mm(p.ngens());
              mm.exp[nz] = -m.exp[nz];
              return mm;
            }(),
            Scalar(1) / c);
        return LocExpr::from_element(base).power(k, ctx, budget);
      }
    }
  } else if (it == st.scope.end() && gpos >= 0) {
    if (p.gen(gpos).invertible)
      return LocExpr::from_element(p.generator_element(gpos, -k));
    throw EngineError(ErrorKind::UnregisteredInverse,
                      "generator " + name + " has no adjoined inverse");
  }
  int aid = ctx.atom_id(name);
  if (aid >= 0) {
    LocExpr a = LocExpr::from_atom(aid);
    return a.power(k, ctx, budget);
  }
  throw EngineError(ErrorKind::UnregisteredInverse,
                    "no registered inverse for " + name);
}

LocExpr eval_expr(const ExprPtr& e, RunState& st, Budget& budget) {
  using K = ExprNode::Kind;
  Presentation& p = st.p();
  LocContext& ctx = *st.loc;
  switch (e->kind) {
    case K::Num:
      return LocExpr::from_element(p.constant(e->num));
    case K::Sym: {
      auto it = st.scope.find(e->name);
      if (it != st.scope.end()) return it->second;
      int pos = p.position(e->name);
      if (pos >= 0) return LocExpr::from_element(p.generator_element(pos));
      throw EngineError(ErrorKind::UseBeforeDefine,
                        "undefined name " + e->name);
    }
    case K::Neg:
      return eval_expr(e->a, st, budget).scale(Scalar(-1), ctx);
    case K::Add:
      return eval_expr(e->a, st, budget)
          .add(eval_expr(e->b, st, budget), Scalar(1), ctx);
    case K::Sub:
      return eval_expr(e->a, st, budget)
          .add(eval_expr(e->b, st, budget), Scalar(-1), ctx);
    case K::Mul:
      return eval_expr(e->a, st, budget)
          .mul(eval_expr(e->b, st, budget), ctx, budget);
    case K::Pow: {
      if (e->exponent >= 0)
        return eval_expr(e->a, st, budget).power(e->exponent, ctx, budget);
      if (e->a->kind == K::Sym)
        return resolve_negative_power(e->a->name, -e->exponent, st, budget);
      throw EngineError(ErrorKind::UnregisteredInverse,
                        "negative power of a compound expression");
    }
    case K::Inv:
      return resolve_negative_power(e->name, 1, st, budget);
    case K::Comm:
    case K::Acomm: {
      LocExpr a = eval_expr(e->a, st, budget);
      LocExpr b = eval_expr(e->b, st, budget);
      LocExpr ab = a.mul(b, ctx, budget);
      LocExpr ba = b.mul(a, ctx, budget);
      return ab.add(ba, e->kind == K::Comm ? Scalar(-1) : Scalar(1), ctx);
    }
  }
  throw EngineError(ErrorKind::SyntaxError, "bad expression node");
}

std::vector<RecipeStepValue> eval_recipe(
    const std::vector<RecipeStepSyntax>& steps, RunState& st, Budget& budget) {
  std::vector<RecipeStepValue> out;
  for (const auto& s : steps) {
    RecipeStepValue v;
    switch (s.kind) {
      case RecipeStepSyntax::Kind::LMul:
        v.kind = RecipeStepValue::Kind::LMul;
        v.operand = eval_expr(s.expr, st, budget);
        break;
      case RecipeStepSyntax::Kind::RMul:
        v.kind = RecipeStepValue::Kind::RMul;
        v.operand = eval_expr(s.expr, st, budget);
        break;
      case RecipeStepSyntax::Kind::Use:
        v.kind = RecipeStepValue::Kind::Use;
        v.name = s.name;
        if (!st.passed_labels.count(s.name))
          throw EngineError(ErrorKind::UnknownIdentityReference,
                            "use(" + s.name + ") has no verified claim");
        break;
      case RecipeStepSyntax::Kind::Cancel:
        v.kind = RecipeStepValue::Kind::Cancel;
        break;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Scalar> eval_scalar(const ExprPtr& e) {
  using K = ExprNode::Kind;
  switch (e->kind) {
    case K::Num: return e->num;
    case K::Neg: {
      auto v = eval_scalar(e->a);
      if (v) return Scalar(-*v);
      return std::nullopt;
    }
    case K::Mul: {
      auto a = eval_scalar(e->a), b = eval_scalar(e->b);
      if (a && b) return Scalar(*a * *b);
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

LinComb eval_lincomb(const ExprPtr& e, const LieSuperAlgebra& L) {
  using K = ExprNode::Kind;
  switch (e->kind) {
    case K::Sym: {
      LinComb v;
      v.add(L.require_index(e->name), Scalar(1));
      return v;
    }
    case K::Neg: {
      LinComb v = eval_lincomb(e->a, L);
      LinComb out;
      out.add(v, Scalar(-1));
      return out;
    }
    case K::Add: {
      LinComb v = eval_lincomb(e->a, L);
      v.add(eval_lincomb(e->b, L));
      return v;
    }
    case K::Sub: {
      LinComb v = eval_lincomb(e->a, L);
      v.add(eval_lincomb(e->b, L), Scalar(-1));
      return v;
    }
    case K::Mul: {
      if (auto c = eval_scalar(e->a)) {
        LinComb v = eval_lincomb(e->b, L);
        LinComb out;
        out.add(v, *c);
        return out;
      }
      if (auto c = eval_scalar(e->b)) {
        LinComb v = eval_lincomb(e->a, L);
        LinComb out;
        out.add(v, *c);
        return out;
      }
      throw EngineError(ErrorKind::SyntaxError,
                        "dictionary images must be linear");
    }
    default:
      throw EngineError(ErrorKind::SyntaxError,
                        "dictionary images must be linear combinations");
  }
}

struct Verdict {
  bool pass;
  std::string detail;
};

Verdict check_cleared(const LocContext& ctx, const ClearOutcome& out) {
  if (!out.cleared)
    return {false, "inverse symbols survive clearing: " + out.rendered};
  if (!out.zero) return {false, "residual " + out.rendered};
  return {true, ""};
}

Verdict run_represent(const Statement& st, RunState& state, Budget& budget) {
  BuiltinInstance target = make_builtin(st.builtin, st.args);
  const Presentation& tp = target.pres;
  if (st.rep_gens.size() != tp.ngens())
    throw EngineError(ErrorKind::InvalidParameters,
                      "represent needs " + std::to_string(tp.ngens()) +
                          " images for " + tp.name());
  LocContext& ctx = *state.loc;
  Presentation& sp = state.p();
  std::vector<LocExpr> img;
  for (const auto& nm : st.rep_gens) {
    auto it = state.scope.find(nm);
    if (it != state.scope.end()) {
      img.push_back(it->second);
    } else {
      int pos = sp.position(nm);
      if (pos < 0)
        throw EngineError(ErrorKind::MissingImage, "no image element " + nm);
      img.push_back(LocExpr::from_element(sp.generator_element(pos)));
    }
  }
  auto relation_steps = eval_recipe(st.recipe, state, budget);

  std::ostringstream detail;
  bool all_ok = true;
  auto subst_tail = [&](const Element& tail) {
    LocExpr acc = LocExpr::from_element(sp.constant(Scalar(0)));
    for (const auto& [m, c] : tail.terms()) {
      LocExpr term = LocExpr::from_element(sp.constant(c));
      for (std::size_t i = 0; i < m.exp.size(); ++i)
        for (int rep = 0; rep < m.exp[i]; ++rep)
          term = term.mul(img[i], ctx, budget);
      acc = acc.add(term, Scalar(1), ctx);
    }
    return acc;
  };
  int relations = 0, failures = 0;
  for (std::size_t hi = 1; hi < tp.ngens(); ++hi)
    for (std::size_t lo = 0; lo < hi; ++lo) {
      const PairRule& r = tp.rule(static_cast<int>(hi), static_cast<int>(lo));
      LocExpr lhs = img[hi].mul(img[lo], ctx, budget);
      LocExpr rhs = img[lo].mul(img[hi], ctx, budget).scale(r.q, ctx);
      rhs = rhs.add(subst_tail(r.tail), Scalar(1), ctx);
      auto out = clear_and_verify(ctx, lhs, rhs, relation_steps, budget);
      ++relations;
      auto v = check_cleared(ctx, out);
      if (!v.pass) {
        ++failures;
        all_ok = false;
        detail << "\n  relation " << tp.gen(hi).name << "*" << tp.gen(lo).name
               << ": " << v.detail;
      }
    }
  for (std::size_t g = 0; g < tp.ngens(); ++g) {
    if (const Element* tail = tp.self_rule(static_cast<int>(g))) {
      LocExpr lhs = img[g].mul(img[g], ctx, budget);
      LocExpr rhs = subst_tail(*tail);
      auto out = clear_and_verify(ctx, lhs, rhs, relation_steps, budget);
      ++relations;
      auto v = check_cleared(ctx, out);
      if (!v.pass) {
        ++failures;
        all_ok = false;
        detail << "\n  square relation " << tp.gen(g).name << ": " << v.detail;
      }
    }
  }
  int witness_fail = 0;
  for (const auto& w : st.witnesses) {
    int pos = sp.require_position(w.generator);
    LocExpr lhs = LocExpr::from_element(sp.generator_element(pos));
    LocExpr rhs = eval_expr(w.expr, state, budget);
    auto steps = eval_recipe(w.recipe, state, budget);
    auto out = clear_and_verify(ctx, lhs, rhs, steps, budget);
    auto v = check_cleared(ctx, out);
    if (!v.pass) {
      ++witness_fail;
      all_ok = false;
      detail << "\n  witness " << w.generator << ": " << v.detail;
    }
  }
  std::ostringstream head;
  head << relations << " relations";
  if (!st.witnesses.empty())
    head << ", " << st.witnesses.size() << " generation witnesses";
  else
    head << " (embedding: no generation witnesses)";
  head << " against " << tp.name();
  if (!all_ok) head << detail.str();
  return {all_ok, head.str()};
}

Verdict run_statement(const Statement& st, RunState& state) {
  Budget budget{state.has_algebra() ? state.p().budget_limit() * 64
                                    : default_budget_limit()};
  using K = Statement::Kind;
  LocContext* ctx = state.loc.get();
  switch (st.kind) {
    case K::Algebra: {
      BuiltinInstance inst = [&] {
        if (state.osp12_override && st.builtin == "osp" &&
            st.args.size() == 2 && st.args[1] == 2) {
          Presentation p = enveloping_reduced(
              *state.osp12_override, "U(osp(1,2))*", {"b1p", "k1", "b1m"},
              {{"c1p", "b1p^2"}, {"c1m", "b1m^2"}},
              /*require_jacobi=*/false);
          p.rename_generator("b1p", "b+");
          p.rename_generator("k1", "k");
          p.rename_generator("b1m", "b-");
          p.add_alias("bp", "b+");
          p.add_alias("bm", "b-");
          return BuiltinInstance{std::move(p), *state.osp12_override};
        }
        if (state.osp12_override && st.builtin == "ospfull" &&
            st.args.size() == 2 && st.args[1] == 2) {
          std::vector<std::string> order;
          for (const auto& [nm, par] : state.osp12_override->basis())
            order.push_back(nm);
          Presentation p = enveloping(*state.osp12_override, order,
                                      /*require_jacobi=*/false);
          return BuiltinInstance{std::move(p), *state.osp12_override};
        }
        return make_builtin(st.builtin, st.args);
      }();
      state.pres = std::make_unique<Presentation>(std::move(inst.pres));
      state.lie = std::move(inst.lie);
      state.loc = std::make_unique<LocContext>(state.pres.get());
      state.scope.clear();
      state.witnesses.clear();
      return {true, state.pres->name() + " bound to " + st.bind_name};
    }
    case K::Let: {
      LocExpr v = eval_expr(st.expr, state, budget);
      v.normalize(*state.loc, budget);
      state.scope[st.name] = std::move(v);
      return {true, ""};
    }
    case K::AssertZero: {
      LocExpr lhs = eval_expr(st.expr, state, budget);
      LocExpr zero;
      auto steps = eval_recipe(st.recipe, state, budget);
      return check_cleared(*ctx,
                           clear_and_verify(*ctx, lhs, zero, steps, budget));
    }
    case K::AssertEq: {
      LocExpr lhs = eval_expr(st.expr, state, budget);
      LocExpr rhs = eval_expr(st.rhs, state, budget);
      auto steps = eval_recipe(st.recipe, state, budget);
      return check_cleared(*ctx,
                           clear_and_verify(*ctx, lhs, rhs, steps, budget));
    }
    case K::AssertCommute:
    case K::AssertAnticommute: {
      LocExpr a = eval_expr(st.expr, state, budget);
      LocExpr b = eval_expr(st.rhs, state, budget);
      LocExpr ab = a.mul(b, *ctx, budget);
      LocExpr ba = b.mul(a, *ctx, budget);
      LocExpr d = ab.add(
          ba, st.kind == K::AssertCommute ? Scalar(-1) : Scalar(1), *ctx);
      LocExpr zero;
      auto steps = eval_recipe(st.recipe, state, budget);
      return check_cleared(*ctx,
                           clear_and_verify(*ctx, d, zero, steps, budget));
    }
    case K::AssertCentral: {
      LocExpr c = eval_expr(st.expr, state, budget);
      auto steps = eval_recipe(st.recipe, state, budget);
      Presentation& p = state.p();
      std::ostringstream bad;
      bool ok = true;
      for (std::size_t g = 0; g < p.ngens(); ++g) {
        LocExpr ge =
            LocExpr::from_element(p.generator_element(static_cast<int>(g)));
        LocExpr d = c.mul(ge, *ctx, budget)
                        .add(ge.mul(c, *ctx, budget), Scalar(-1), *ctx);
        LocExpr zero;
        auto v = check_cleared(
            *ctx, clear_and_verify(*ctx, d, zero, steps, budget));
        if (!v.pass) {
          ok = false;
          bad << "\n  [., " << p.gen(static_cast<int>(g)).name
              << "]: " << v.detail;
        }
      }
      return {ok, ok ? "" : "not central:" + bad.str()};
    }
    case K::SigmaNormal: {
      Presentation& p = state.p();
      Element e;
      auto it = state.scope.find(st.name);
      if (it != state.scope.end()) {
        if (!it->second.is_polynomial())
          throw EngineError(ErrorKind::SigmaNormalityFailed,
                            st.name + " is not polynomial");
        e = it->second.poly();
      } else {
        e = p.generator_element(p.require_position(st.name));
      }
      SigmaWitness w;
      for (const auto& [key, expr] : st.entries) {
        LocExpr img = eval_expr(expr, state, budget);
        if (!img.is_polynomial())
          throw EngineError(ErrorKind::SigmaNormalityFailed,
                            "conjugation image of " + key +
                                " is not polynomial");
        int pos = state.scope.count(key) ? -1 : p.position(key);
        if (pos >= 0) {
          w.conj[pos] = img.poly();
        } else {
          auto kit = state.scope.find(key);
          if (kit == state.scope.end())
            throw EngineError(ErrorKind::UseBeforeDefine,
                              "unknown sigma_normal key " + key);
          if (!kit->second.is_polynomial())
            throw EngineError(ErrorKind::SigmaNormalityFailed,
                              "sigma_normal key " + key + " not polynomial");
          w.extra.push_back({kit->second.poly(), img.poly()});
        }
      }
      w.covers_all_generators = true;
      for (std::size_t g = 0; g < p.ngens(); ++g)
        if (!w.conj.count(static_cast<int>(g)))
          w.covers_all_generators = false;
      // conj_inv derived by division where it exists.
      for (const auto& [g, imgel] : w.conj) {
        Element ge = p.multiply(p.generator_element(g), e, budget);
        if (auto q = p.divide_left(ge, e, budget)) w.conj_inv[g] = *q;
      }
      auto rep = verify_sigma_normal(p, e, w, budget);
      if (!rep.passed()) {
        std::ostringstream os;
        os << "conjugation table rejected:";
        for (const auto& issue : rep.issues)
          os << "\n  " << issue.what << " (residual "
             << p.render(issue.residual) << ")";
        return {false, os.str()};
      }
      state.witnesses[st.name] = std::move(w);
      return {true,
              std::to_string(st.entries.size()) + " conjugation entries hold"};
    }
    case K::AdjoinInverse: {
      Presentation& p = state.p();
      auto it = state.scope.find(st.name);
      if (it == state.scope.end() && p.position(st.name) >= 0) {
        p.mark_invertible(st.name);
        auto rep = p.check_confluence(3);
        if (!rep.passed())
          throw EngineError(ErrorKind::ConfluenceFailed,
                            "localized rewriting not confluent at degree 3 "
                            "after inverting " +
                                st.name);
        return {true, "generator " + st.name +
                          " invertible; confluence rechecked (" +
                          std::to_string(rep.words_checked) + " overlap words)"};
      }
      if (it == state.scope.end())
        throw EngineError(ErrorKind::UseBeforeDefine,
                          "unknown element " + st.name);
      if (!it->second.is_polynomial())
        throw EngineError(ErrorKind::UnregisteredInverse,
                          st.name + " is not a polynomial element");
      std::optional<SigmaWitness> w;
      auto wit = state.witnesses.find(st.name);
      if (wit != state.witnesses.end()) w = wit->second;
      state.loc->register_atom(st.name, it->second.poly(), std::move(w));
      return {true, "inverse symbol inv(" + st.name + ") registered" +
                        (w ? " with conjugation table"
                           : " (clearing-based verification only)")};
    }
    case K::Represent:
      return run_represent(st, state, budget);
    case K::CenterDim: {
      Presentation& p = state.p();
      std::vector<Element> gens;
      for (std::size_t g = 0; g < p.ngens(); ++g)
        gens.push_back(p.generator_element(static_cast<int>(g)));
      CentralizerQuery q{&p, gens, st.degree, CentralizerMode::Commute};
      auto basis = centralizer_basis(q);
      bool ok = static_cast<int>(basis.size()) == st.expect;
      std::ostringstream os;
      os << "degree " << st.degree << ": dimension " << basis.size()
         << " (expected " << st.expect << ")";
      return {ok, os.str()};
    }
    case K::CompareTable:
      // handled by the runner, which owns the golden lookup
      throw EngineError(ErrorKind::InvalidParameters,
                        "compare_table outside runner");
  }
  return {false, "unhandled statement"};
}

const char* kind_name(Statement::Kind k) {
  using K = Statement::Kind;
  switch (k) {
    case K::Algebra: return "algebra";
    case K::Let: return "let";
    case K::AssertZero: return "assert_zero";
    case K::AssertEq: return "assert_eq";
    case K::AssertCommute: return "assert_commute";
    case K::AssertAnticommute: return "assert_anticommute";
    case K::AssertCentral: return "assert_central";
    case K::SigmaNormal: return "sigma_normal";
    case K::AdjoinInverse: return "adjoin_inverse";
    case K::Represent: return "represent";
    case K::CenterDim: return "center_dim";
    case K::CompareTable: return "compare_table";
  }
  return "?";
}

}  // namespace

ClaimReport run_claims_impl(
    const ClaimScript& script,
    const std::function<std::string(const std::string&)>& golden_lookup,
    const LieSuperAlgebra* osp12_override) {
  ClaimReport report;
  report.script = script.name;
  RunState state;
  state.osp12_override = osp12_override;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& st : script.statements) {
    StatementResult res;
    res.line = st.line;
    res.kind = kind_name(st.kind);
    res.text = render_statement(st);
    auto s0 = std::chrono::steady_clock::now();
    try {
      Verdict v{false, ""};
      if (st.kind == Statement::Kind::CompareTable) {
        if (!state.lie)
          throw EngineError(ErrorKind::InvalidParameters,
                            "no Lie table behind the active algebra");
        DictionaryTable d;
        for (const auto& [nm, expr] : st.entries)
          d.renaming.push_back({nm, eval_lincomb(expr, *state.lie)});
        d.expected = golden_lookup(st.golden);
        DiffReport diff = compare_table(*state.lie, d);
        if (diff.passed()) {
          v = {true, std::to_string(d.renaming.size()) + " images, table matches " +
                         st.golden};
        } else {
          std::ostringstream os;
          os << diff.diffs.size() << " mismatches against " << st.golden << ":";
          for (const auto& m : diff.diffs)
            os << "\n  " << m.pair << ": computed " << m.computed
               << ", expected " << m.expected;
          v = {false, os.str()};
        }
      } else {
        v = run_statement(st, state);
      }
      res.status =
          v.pass ? StatementResult::Status::Pass : StatementResult::Status::Fail;
      res.detail = v.detail;
      if (v.pass && !st.label.empty()) state.passed_labels.insert(st.label);
    } catch (const EngineError& e) {
      res.status = StatementResult::Status::Error;
      res.detail = std::string(error_kind_name(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      res.status = StatementResult::Status::Error;
      res.detail = e.what();
    }
    auto s1 = std::chrono::steady_clock::now();
    res.micros =
        std::chrono::duration_cast<std::chrono::microseconds>(s1 - s0).count();
    report.results.push_back(std::move(res));
  }
  auto t1 = std::chrono::steady_clock::now();
  report.wall_micros =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
  return report;
}

ClaimReport run_claims(
    const ClaimScript& script,
    const std::function<std::string(const std::string&)>& golden_lookup) {
  return run_claims_impl(script, golden_lookup, nullptr);
}

ClaimReport run_claims(const ClaimScript& script) {
  return run_claims_impl(
      script, [](const std::string& n) { return corpus_golden(n); }, nullptr);
}

ClaimReport run_claims_with_lie_override(const ClaimScript& script,
                                         const LieSuperAlgebra& osp12) {
  return run_claims_impl(
      script, [](const std::string& n) { return corpus_golden(n); }, &osp12);
}

std::string ClaimReport::render_text() const {
  std::ostringstream os;
  os << "script " << script << "\n";
  for (const auto& r : results) {
    const char* tag = r.status == StatementResult::Status::Pass   ? "PASS"
                      : r.status == StatementResult::Status::Fail ? "FAIL"
                                                                  : "ERROR";
    os << "[" << tag << "] line " << r.line << ": " << r.text;
    if (!r.detail.empty()) {
      os << "\n        " << r.detail;
    }
    os << "\n";
  }
  os << (passed() ? "PASS" : "FAIL") << " " << script << ": "
     << count(StatementResult::Status::Pass) << " passed, "
     << count(StatementResult::Status::Fail) << " failed, "
     << count(StatementResult::Status::Error) << " errors, "
     << wall_micros << " us\n";
  return os.str();
}

std::string ClaimReport::render_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["script"] = script;
  j["passed"] = passed();
  j["wall_micros"] = wall_micros;
  j["statements"] = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json s;
    s["line"] = r.line;
    s["kind"] = r.kind;
    s["text"] = r.text;
    s["status"] = r.status == StatementResult::Status::Pass   ? "PASS"
                  : r.status == StatementResult::Status::Fail ? "FAIL"
                                                              : "ERROR";
    s["detail"] = r.detail;
    s["micros"] = r.micros;
    j["statements"].push_back(std::move(s));
  }
  return j.dump(2);
}

std::string corpus_golden(const std::string& name) {
  for (const auto& f : corpus_goldens())
    if (f.name == name) return f.content;
  throw EngineError(ErrorKind::InvalidParameters,
                    "no embedded golden file " + name);
}

std::vector<std::pair<std::string, ClaimScript>> corpus() {
  std::vector<std::pair<std::string, ClaimScript>> out;
  for (const auto& f : corpus_files())
    out.push_back({f.name, parse_claims(f.name, f.content)});
  return out;
}

}  // namespace ospfield
