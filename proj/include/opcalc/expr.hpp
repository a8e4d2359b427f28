#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/lexer.hpp"
#include "opcalc/operator_model.hpp"

namespace opcalc {

/// A symbol written inline or by name.
struct SymbolRef {
  std::string name;
  std::optional<GrowthSymbol> literal;
  SourcePos pos;

  std::string str() const { return literal ? literal->str() : name; }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Operator expression:
///   name | diag(s) | shift(k) | diag(s).shift(k) | adj(e) | cl(e) | inv(e)
///   | abs(e) | phase(e) | e * e | e on dom(s) & dom(s) ... | (e)
struct Expr {
  enum class Kind { Ref, Literal, Adjoint, Closure, Inverse, Abs, Phase, Compose, Restrict };

  Kind kind = Kind::Literal;
  std::string name;                  // Ref
  std::optional<SymbolRef> diagonal;  // Literal; absent for a bare shift(k)
  std::int64_t shift = 0;            // Literal
  std::vector<SymbolRef> domain;     // Restrict
  std::vector<ExprPtr> args;
  SourcePos pos;

  std::string str() const;
};

bool operator==(const Expr& a, const Expr& b);

ExprPtr make_ref(std::string name, SourcePos pos = {});
ExprPtr make_literal(std::optional<SymbolRef> diagonal, std::int64_t shift, SourcePos pos = {});
ExprPtr make_unary(Expr::Kind kind, ExprPtr arg, SourcePos pos = {});
ExprPtr make_compose(ExprPtr a, ExprPtr b, SourcePos pos = {});
ExprPtr make_restrict(ExprPtr arg, std::vector<SymbolRef> domain, SourcePos pos = {});

/// Named symbols and operators visible to an expression.
struct Environment {
  Space space = Space::Unilateral;
  std::map<std::string, GrowthSymbol> symbols;
  std::map<std::string, ExprPtr> operators;
};

/// Thrown for unbound names and for model errors raised while evaluating,
/// carrying the position of the offending subexpression.
class BindingError : public std::runtime_error {
 public:
  BindingError(SourcePos pos, const std::string& message)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

ExprPtr parse_expr(Lexer& lex, Space space);
ExprPtr parse_expr(std::string_view text, Space space);

/// Looks up a symbol reference.
GrowthSymbol resolve_symbol(const SymbolRef& s, const Environment& env);

/// Replaces names by their definitions (recursively) and symbol names by literals.
ExprPtr inline_names(const ExprPtr& e, const Environment& env);

MonomialOperator evaluate(const Expr& e, const Environment& env);

/// Sum of |k| over the shift literals reachable from e.
std::int64_t shift_margin(const Expr& e);

}  // namespace opcalc
