#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ospfield/scalar.hpp"

namespace ospfield {

/// Expression AST for claim scripts and the CLI: rationals, symbol names,
/// + - * ^ with integer exponents, inv(NAME), comm(,), acomm(,).
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Num, Sym, Neg, Add, Sub, Mul, Pow, Inv, Comm, Acomm };
  Kind kind;
  Scalar num;        // Num
  std::string name;  // Sym, Inv
  ExprPtr a, b;      // operands
  int exponent = 0;  // Pow

  static ExprPtr number(Scalar v);
  static ExprPtr symbol(std::string n);
  static ExprPtr unary(Kind k, ExprPtr x);
  static ExprPtr binary(Kind k, ExprPtr x, ExprPtr y);
  static ExprPtr pow(ExprPtr x, int e);
  static ExprPtr inv(std::string n);
};

/// Renders back to parseable text (deterministic).
std::string render_expr(const ExprPtr& e);

/// Symbol oracle: decides whether a candidate glued name like "b+" is a
/// known symbol. A '+'/'-' immediately following an identifier is folded
/// into it only when the combined name is known; otherwise it is the
/// binary operator.
using SymbolOracle = std::function<bool(const std::string&)>;

struct ParsePosition {
  std::size_t offset = 0;
};

/// Throws EngineError(SyntaxError) with offset info on bad input.
ExprPtr parse_expr(const std::string& text, const SymbolOracle& known);

/// Parses a prefix of `text` starting at `pos`; stops cleanly before
/// `stopwords` (e.g. "witness", "via"). Updates pos.
ExprPtr parse_expr_prefix(const std::string& text, std::size_t& pos,
                          const SymbolOracle& known,
                          const std::vector<std::string>& stopwords);

}  // namespace ospfield
