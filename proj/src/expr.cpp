#include "opcalc/expr.hpp"

#include <set>

namespace opcalc {

namespace {

const std::set<std::string, std::less<>> kReserved = {"adj", "cl", "inv", "abs", "phase", "diag",
                                                       "shift", "dom", "on", "coeff"};

const char* unary_name(Expr::Kind kind) {
  switch (kind) {
    case Expr::Kind::Adjoint: return "adj";
    case Expr::Kind::Closure: return "cl";
    case Expr::Kind::Inverse: return "inv";
    case Expr::Kind::Abs: return "abs";
    case Expr::Kind::Phase: return "phase";
    default: return "";
  }
}

}  // namespace

std::string Expr::str() const {
  switch (kind) {
    case Kind::Ref: return name;
    case Kind::Literal: {
      if (!diagonal) return "shift(" + std::to_string(shift) + ")";
      std::string out = "diag(" + diagonal->str() + ")";
      if (shift != 0) out += ".shift(" + std::to_string(shift) + ")";
      return out;
    }
    case Kind::Compose: {
      std::string left = args[0]->str(), right = args[1]->str();
      if (args[0]->kind == Kind::Restrict) left = "(" + left + ")";
      if (args[1]->kind == Kind::Restrict || args[1]->kind == Kind::Compose) right = "(" + right + ")";
      return left + " * " + right;
    }
    case Kind::Restrict: {
      std::string out = args[0]->str() + " on ";
      for (std::size_t i = 0; i < domain.size(); ++i) out += (i ? " & dom(" : "dom(") + domain[i].str() + ")";
      return out;
    }
    default: return std::string(unary_name(kind)) + "(" + args[0]->str() + ")";
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.shift != b.shift) return false;
  auto same_ref = [](const SymbolRef& x, const SymbolRef& y) {
    return x.name == y.name && x.literal.has_value() == y.literal.has_value() && (!x.literal || *x.literal == *y.literal);
  };
  if (a.diagonal.has_value() != b.diagonal.has_value()) return false;
  if (a.diagonal && !same_ref(*a.diagonal, *b.diagonal)) return false;
  if (a.domain.size() != b.domain.size() || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.domain.size(); ++i)
    if (!same_ref(a.domain[i], b.domain[i])) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(*a.args[i] == *b.args[i])) return false;
  return true;
}

ExprPtr make_ref(std::string name, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Ref;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}

ExprPtr make_literal(std::optional<SymbolRef> diagonal, std::int64_t shift, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Literal;
  e->diagonal = std::move(diagonal);
  e->shift = shift;
  e->pos = pos;
  return e;
}

ExprPtr make_unary(Expr::Kind kind, ExprPtr arg, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = {std::move(arg)};
  e->pos = pos;
  return e;
}

ExprPtr make_compose(ExprPtr a, ExprPtr b, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Compose;
  e->args = {std::move(a), std::move(b)};
  e->pos = pos;
  return e;
}

ExprPtr make_restrict(ExprPtr arg, std::vector<SymbolRef> domain, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Restrict;
  e->args = {std::move(arg)};
  e->domain = std::move(domain);
  e->pos = pos;
  return e;
}

// ---- parsing ------------------------------------------------------------------------

namespace {

SymbolRef parse_symbol_ref(Lexer& lex, Space space) {
  SymbolRef s;
  s.pos = lex.peek().pos;
  if (lex.is_ident("coeff")) {
    s.literal = parse_symbol(lex, space);
    return s;
  }
  s.name = lex.expect_identifier("symbol literal or name");
  if (kReserved.count(s.name)) lex.fail("'" + s.name + "' is a reserved word", {"symbol name"});
  return s;
}

ExprPtr parse_restrict(Lexer& lex, Space space);

ExprPtr parse_primary(Lexer& lex, Space space) {
  const Token& tok = lex.peek();
  SourcePos pos = tok.pos;
  if (lex.accept_punct('(')) {
    ExprPtr e = parse_restrict(lex, space);
    lex.expect_punct(')');
    return e;
  }
  if (tok.kind != TokenKind::Identifier)
    lex.fail("unexpected " + describe(tok), {"operator name", "diag", "shift", "adj", "cl", "inv", "abs", "phase", "'('"});
  std::string word = tok.text;
  static const std::pair<const char*, Expr::Kind> unaries[] = {{"adj", Expr::Kind::Adjoint}, {"cl", Expr::Kind::Closure},
                                                               {"inv", Expr::Kind::Inverse}, {"abs", Expr::Kind::Abs},
                                                               {"phase", Expr::Kind::Phase}};
  for (const auto& [text, kind] : unaries) {
    if (word != text) continue;
    lex.next();
    lex.expect_punct('(');
    ExprPtr arg = parse_restrict(lex, space);
    lex.expect_punct(')');
    return make_unary(kind, std::move(arg), pos);
  }
  if (word == "diag") {
    lex.next();
    lex.expect_punct('(');
    SymbolRef s = parse_symbol_ref(lex, space);
    lex.expect_punct(')');
    std::int64_t k = 0;
    if (lex.accept_punct('.')) {
      lex.expect_ident("shift");
      lex.expect_punct('(');
      k = lex.expect_int64();
      lex.expect_punct(')');
    }
    return make_literal(std::move(s), k, pos);
  }
  if (word == "shift") {
    lex.next();
    lex.expect_punct('(');
    std::int64_t k = lex.expect_int64();
    lex.expect_punct(')');
    return make_literal(std::nullopt, k, pos);
  }
  if (kReserved.count(word)) lex.fail("unexpected '" + word + "'", {"operator name", "diag", "shift", "'('"});
  lex.next();
  return make_ref(word, pos);
}

ExprPtr parse_compose(Lexer& lex, Space space) {
  ExprPtr e = parse_primary(lex, space);
  while (lex.is_punct('*')) {
    SourcePos pos = lex.next().pos;
    e = make_compose(std::move(e), parse_primary(lex, space), pos);
  }
  return e;
}

ExprPtr parse_restrict(Lexer& lex, Space space) {
  ExprPtr e = parse_compose(lex, space);
  while (lex.is_ident("on")) {
    SourcePos pos = lex.next().pos;
    std::vector<SymbolRef> domain;
    do {
      lex.expect_ident("dom");
      lex.expect_punct('(');
      domain.push_back(parse_symbol_ref(lex, space));
      lex.expect_punct(')');
    } while (lex.accept_punct('&'));
    e = make_restrict(std::move(e), std::move(domain), pos);
  }
  return e;
}

}  // namespace

ExprPtr parse_expr(Lexer& lex, Space space) { return parse_restrict(lex, space); }

ExprPtr parse_expr(std::string_view text, Space space) {
  Lexer lex(text, false);
  ExprPtr e = parse_expr(lex, space);
  if (!lex.at_end()) lex.fail("unexpected " + describe(lex.peek()), {"'*'", "on", "end of input"});
  return e;
}

// ---- evaluation -----------------------------------------------------------------------

GrowthSymbol resolve_symbol(const SymbolRef& s, const Environment& env) {
  if (s.literal) {
    if (s.literal->space() != env.space) throw BindingError(s.pos, "symbol declared on the other space");
    return *s.literal;
  }
  auto it = env.symbols.find(s.name);
  if (it == env.symbols.end()) throw BindingError(s.pos, "unbound symbol '" + s.name + "'");
  return it->second;
}

ExprPtr inline_names(const ExprPtr& e, const Environment& env) {
  if (e->kind == Expr::Kind::Ref) {
    auto it = env.operators.find(e->name);
    if (it == env.operators.end()) throw BindingError(e->pos, "unbound operator '" + e->name + "'");
    return inline_names(it->second, env);
  }
  auto out = std::make_shared<Expr>(*e);
  if (out->diagonal && !out->diagonal->literal) out->diagonal->literal = resolve_symbol(*out->diagonal, env);
  for (auto& d : out->domain)
    if (!d.literal) d.literal = resolve_symbol(d, env);
  if (out->diagonal) out->diagonal->name.clear();
  for (auto& d : out->domain) d.name.clear();
  for (auto& a : out->args) a = inline_names(a, env);
  return out;
}

MonomialOperator evaluate(const Expr& e, const Environment& env) {
  try {
    switch (e.kind) {
      case Expr::Kind::Ref: {
        auto it = env.operators.find(e.name);
        if (it == env.operators.end()) throw BindingError(e.pos, "unbound operator '" + e.name + "'");
        return evaluate(*it->second, env);
      }
      case Expr::Kind::Literal: {
        GrowthSymbol a = e.diagonal ? resolve_symbol(*e.diagonal, env) : GrowthSymbol::one(env.space);
        return MonomialOperator::make(std::move(a), e.shift);
      }
      case Expr::Kind::Adjoint: return adjoint(evaluate(*e.args[0], env));
      case Expr::Kind::Closure: return closure(evaluate(*e.args[0], env));
      case Expr::Kind::Inverse: return inverse(evaluate(*e.args[0], env));
      case Expr::Kind::Abs: return polar(evaluate(*e.args[0], env)).modulus;
      case Expr::Kind::Phase: return polar(evaluate(*e.args[0], env)).partial_isometry;
      case Expr::Kind::Compose: return compose(evaluate(*e.args[0], env), evaluate(*e.args[1], env));
      case Expr::Kind::Restrict: {
        std::vector<GrowthSymbol> cs;
        for (const auto& d : e.domain) cs.push_back(resolve_symbol(d, env));
        return restrict_to(evaluate(*e.args[0], env), cs);
      }
    }
  } catch (const ModelError& err) {
    throw BindingError(e.pos, err.what());
  }
  return MonomialOperator::identity(env.space);
}

std::int64_t shift_margin(const Expr& e) {
  if (e.kind == Expr::Kind::Literal) return e.shift < 0 ? -e.shift : e.shift;
  std::int64_t m = 0;
  for (const auto& a : e.args) m += shift_margin(*a);
  return m;
}

}  // namespace opcalc
