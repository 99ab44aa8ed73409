#include "ospfield/expr.hpp"

#include <cctype>
#include <sstream>

#include "ospfield/presentation.hpp"

namespace ospfield {

ExprPtr ExprNode::number(Scalar v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Num;
  n->num = std::move(v);
  return n;
}
ExprPtr ExprNode::symbol(std::string s) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Sym;
  n->name = std::move(s);
  return n;
}
ExprPtr ExprNode::unary(Kind k, ExprPtr x) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(x);
  return n;
}
ExprPtr ExprNode::binary(Kind k, ExprPtr x, ExprPtr y) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(x);
  n->b = std::move(y);
  return n;
}
ExprPtr ExprNode::pow(ExprPtr x, int e) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Pow;
  n->a = std::move(x);
  n->exponent = e;
  return n;
}
ExprPtr ExprNode::inv(std::string s) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Inv;
  n->name = std::move(s);
  return n;
}

std::string render_expr(const ExprPtr& e) {
  using K = ExprNode::Kind;
  std::ostringstream os;
  switch (e->kind) {
    case K::Num: os << render(e->num); break;
    case K::Sym: os << e->name; break;
    case K::Neg: os << "-" << render_expr(e->a); break;
    case K::Add:
      os << render_expr(e->a) << " + " << render_expr(e->b);
      break;
    case K::Sub:
      os << render_expr(e->a) << " - " << render_expr(e->b);
      break;
    case K::Mul: {
      auto wrap = [&](const ExprPtr& x) {
        bool paren = x->kind == K::Add || x->kind == K::Sub || x->kind == K::Neg;
        return paren ? "(" + render_expr(x) + ")" : render_expr(x);
      };
      os << wrap(e->a) << "*" << wrap(e->b);
      break;
    }
    case K::Pow: {
      bool paren = e->a->kind != K::Sym && e->a->kind != K::Num;
      os << (paren ? "(" + render_expr(e->a) + ")" : render_expr(e->a)) << "^"
         << e->exponent;
      break;
    }
    case K::Inv: os << "inv(" << e->name << ")"; break;
    case K::Comm:
      os << "comm(" << render_expr(e->a) << "," << render_expr(e->b) << ")";
      break;
    case K::Acomm:
      os << "acomm(" << render_expr(e->a) << "," << render_expr(e->b) << ")";
      break;
  }
  return os.str();
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t i = 0;
  const SymbolOracle& known;
  const std::vector<std::string>& stopwords;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw EngineError(ErrorKind::SyntaxError,
                      msg + " at offset " + std::to_string(i) + " in '" + s +
                          "'");
  }

  bool at_stopword() {
    skip_ws();
    for (const auto& w : stopwords) {
      if (s.compare(i, w.size(), w) == 0) {
        std::size_t j = i + w.size();
        if (j >= s.size() || !(std::isalnum(s[j]) || s[j] == '_')) return true;
      }
    }
    return false;
  }

  bool done() {
    skip_ws();
    return i >= s.size();
  }

  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }

  // Identifier with the sign-glue rule: a trailing +/- directly attached
  // to the identifier is folded in when the combined name is known.
  std::string ident() {
    skip_ws();
    std::size_t j = i;
    if (j >= s.size() || !(std::isalpha(s[j]) || s[j] == '_'))
      fail("expected identifier");
    while (j < s.size() && (std::isalnum(s[j]) || s[j] == '_')) ++j;
    std::string base = s.substr(i, j - i);
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) {
      std::string glued = base + s[j];
      if (known(glued)) {
        i = j + 1;
        return glued;
      }
    }
    i = j;
    return base;
  }

  Scalar number() {
    skip_ws();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(s[j])) ++j;
    if (j == i) fail("expected number");
    std::string digits = s.substr(i, j - i);
    i = j;
    if (i < s.size() && s[i] == '/') {
      std::size_t k = i + 1;
      std::size_t j2 = k;
      while (j2 < s.size() && std::isdigit(s[j2])) ++j2;
      if (j2 > k) {
        std::string den = s.substr(k, j2 - k);
        i = j2;
        Scalar v(digits + "/" + den);
        v.canonicalize();
        return v;
      }
    }
    return Scalar(digits);
  }

  int integer() {
    skip_ws();
    int sign = 1;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(s[j])) ++j;
    if (j == i) fail("expected integer exponent");
    int v = std::atoi(s.substr(i, j - i).c_str());
    i = j;
    return sign * v;
  }
};

class Parser {
 public:
  Parser(const std::string& text, std::size_t& pos, const SymbolOracle& known,
         const std::vector<std::string>& stop)
      : lex_{text, pos, known, stop}, pos_(pos) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    pos_ = lex_.i;
    return e;
  }

 private:
  ExprPtr sum() {
    ExprPtr e = product();
    while (true) {
      if (lex_.at_stopword()) break;
      char c = lex_.peek();
      if (c == '+') {
        ++lex_.i;
        e = ExprNode::binary(ExprNode::Kind::Add, e, product());
      } else if (c == '-') {
        ++lex_.i;
        e = ExprNode::binary(ExprNode::Kind::Sub, e, product());
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr product() {
    ExprPtr e = factor();
    while (true) {
      if (lex_.at_stopword()) break;
      if (lex_.peek() == '*') {
        ++lex_.i;
        e = ExprNode::binary(ExprNode::Kind::Mul, e, factor());
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr factor() {
    if (lex_.at_stopword()) lex_.fail("unexpected keyword");
    char c = lex_.peek();
    if (c == '-') {
      ++lex_.i;
      return ExprNode::unary(ExprNode::Kind::Neg, factor());
    }
    ExprPtr e = atom();
    while (lex_.peek() == '^') {
      ++lex_.i;
      e = ExprNode::pow(e, lex_.integer());
    }
    return e;
  }

  ExprPtr atom() {
    char c = lex_.peek();
    if (c == '(') {
      ++lex_.i;
      ExprPtr e = sum();
      if (lex_.peek() != ')') lex_.fail("expected ')'");
      ++lex_.i;
      return e;
    }
    if (std::isdigit(c)) return ExprNode::number(lex_.number());
    if (std::isalpha(c) || c == '_') {
      std::string name = lex_.ident();
      if (name == "inv" || name == "comm" || name == "acomm") {
        if (lex_.peek() != '(') lex_.fail("expected '(' after " + name);
        ++lex_.i;
        if (name == "inv") {
          std::string target = lex_.ident();
          if (lex_.peek() != ')') lex_.fail("expected ')' after inv(NAME");
          ++lex_.i;
          return ExprNode::inv(target);
        }
        ExprPtr a = sum();
        if (lex_.peek() != ',') lex_.fail("expected ',' in " + name + "(,)");
        ++lex_.i;
        ExprPtr b = sum();
        if (b == nullptr) lex_.fail("empty operand in " + name);
        if (lex_.peek() != ')') lex_.fail("expected ')' closing " + name);
        ++lex_.i;
        return ExprNode::binary(name == "comm" ? ExprNode::Kind::Comm
                                               : ExprNode::Kind::Acomm,
                                a, b);
      }
      return ExprNode::symbol(name);
    }
    lex_.fail("unexpected character");
  }

  Lexer lex_;
  std::size_t& pos_;
};

}  // namespace

ExprPtr parse_expr_prefix(const std::string& text, std::size_t& pos,
                          const SymbolOracle& known,
                          const std::vector<std::string>& stopwords) {
  Parser p(text, pos, known, stopwords);
  return p.parse();
}

ExprPtr parse_expr(const std::string& text, const SymbolOracle& known) {
  std::size_t pos = 0;
  ExprPtr e = parse_expr_prefix(text, pos, known, {});
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  if (pos != text.size())
    throw EngineError(ErrorKind::SyntaxError,
                      "trailing input at offset " + std::to_string(pos) +
                          " in '" + text + "'");
  return e;
}

}  // namespace ospfield
