#include "opcalc/term.hpp"

#include <algorithm>

#include "opcalc/expr.hpp"
#include "opcalc/lexer.hpp"

namespace opcalc {

namespace {

const char* unary_name(Term::Kind k) {
  switch (k) {
    case Term::Kind::Adjoint: return "adj";
    case Term::Kind::Closure: return "cl";
    case Term::Kind::Inverse: return "inv";
    case Term::Kind::Abs: return "abs";
    case Term::Kind::Phase: return "phase";
    default: return "";
  }
}

}  // namespace

Term Term::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->text = name;
  n->name = std::move(name);
  n->depth = 0;
  return Term(std::move(n));
}

Term Term::unary(Kind kind, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->depth = arg.depth() + 1;
  n->text = std::string(unary_name(kind)) + "(" + arg.str() + ")";
  n->args.push_back(std::move(arg));
  return Term(std::move(n));
}

Term Term::compose(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  n->depth = std::max(a.depth(), b.depth()) + 1;
  n->text = a.str() + " * " + (b.kind() == Kind::Compose ? "(" + b.str() + ")" : b.str());
  n->args.push_back(std::move(a));
  n->args.push_back(std::move(b));
  return Term(std::move(n));
}

void Term::subterms(std::vector<Term>& out) const {
  for (const auto& a : node_->args) a.subterms(out);
  out.push_back(*this);
}

void Term::atoms(std::vector<std::string>& out) const {
  if (kind() == Kind::Atom) {
    if (std::find(out.begin(), out.end(), name()) == out.end()) out.push_back(name());
    return;
  }
  for (const auto& a : node_->args) a.atoms(out);
}

bool Term::contains_kind(Kind k) const {
  if (kind() == k) return true;
  for (const auto& a : node_->args)
    if (a.contains_kind(k)) return true;
  return false;
}

Term normalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Atom: return t;
    case Term::Kind::Compose: return Term::compose(normalize(t.arg(0)), normalize(t.arg(1)));
    default: break;
  }
  Term inner = normalize(t.arg());
  if ((t.kind() == Term::Kind::Adjoint || t.kind() == Term::Kind::Closure) && inner.kind() == Term::Kind::Closure)
    inner = inner.arg();
  return Term::unary(t.kind(), inner);
}

namespace {

Term from_expr(const Expr& e) {
  auto reject = [&](const std::string& what) -> Term {
    throw ParseError(Diagnostic{e.pos, what + " not allowed in a fact; terms are built from operator names",
                                {"operator name", "adj", "cl", "inv", "abs", "phase"}});
  };
  switch (e.kind) {
    case Expr::Kind::Ref: return Term::atom(e.name);
    case Expr::Kind::Literal: return reject("literal operator");
    case Expr::Kind::Restrict: return reject("domain restriction");
    case Expr::Kind::Compose: return Term::compose(from_expr(*e.args[0]), from_expr(*e.args[1]));
    case Expr::Kind::Adjoint: return Term::adjoint(from_expr(*e.args[0]));
    case Expr::Kind::Closure: return Term::closure(from_expr(*e.args[0]));
    case Expr::Kind::Inverse: return Term::inverse(from_expr(*e.args[0]));
    case Expr::Kind::Abs: return Term::unary(Term::Kind::Abs, from_expr(*e.args[0]));
    case Expr::Kind::Phase: return Term::unary(Term::Kind::Phase, from_expr(*e.args[0]));
  }
  return Term();
}

}  // namespace

Term parse_term(Lexer& lex) { return from_expr(*parse_expr(lex, Space::Unilateral)); }

Term parse_term(std::string_view text) {
  Lexer lex(text, false);
  Term t = parse_term(lex);
  if (!lex.at_end()) lex.fail("unexpected " + describe(lex.peek()), {"'*'", "end of input"});
  return t;
}

// ---- predicates and facts ------------------------------------------------------------

const std::vector<PredicateInfo>& predicates() {
  static const std::vector<PredicateInfo> table = {
      {Predicate::DenselyDefined, "densely_defined", 1},
      {Predicate::Closeable, "closeable", 1},
      {Predicate::Closed, "closed", 1},
      {Predicate::Symmetric, "symmetric", 1},
      {Predicate::SelfAdjoint, "selfadjoint", 1},
      {Predicate::Normal, "normal", 1},
      {Predicate::Quasinormal, "quasinormal", 1},
      {Predicate::Bounded, "bounded", 1},
      {Predicate::Unitary, "unitary", 1},
      {Predicate::InvertibleBounded, "invertible_bounded", 1},
      {Predicate::DenseRange, "dense_range", 1},
      {Predicate::Injective, "injective", 1},
      {Predicate::FiniteKernel, "finite_kernel", 1},
      {Predicate::ClosedRange, "closed_range", 1},
      {Predicate::FiniteCodimRange, "finite_codim_range", 1},
      {Predicate::Subset, "subset", 2},
      {Predicate::Equal, "equal", 2},
      {Predicate::CommutesExt, "commutes_ext", 2},
      {Predicate::RelBounded, "rel_bounded", 2},
      {Predicate::DomSubset, "dom_subset", 2},
      {Predicate::CoreFor, "core_for", 2},
      {Predicate::Permutes, "permutes", 2},
      {Predicate::Intertwines, "intertwines", 3},
      {Predicate::Known, "known", 1},
  };
  return table;
}

const PredicateInfo& info(Predicate p) { return predicates()[static_cast<std::size_t>(p)]; }

std::string_view to_string(Predicate p) { return info(p).name; }

std::string Fact::str() const {
  std::string out = std::string(to_string(predicate)) + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i].str();
  return out + ")";
}

Fact Fact::normalized() const {
  Fact f{predicate, {}};
  for (const auto& a : args) f.args.push_back(normalize(a));
  return f;
}

int Fact::depth() const {
  int d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d;
}

Fact parse_fact(Lexer& lex) {
  const Token& tok = lex.peek();
  if (tok.kind != TokenKind::Identifier) lex.fail("expected a property or relation name", {"predicate name"});
  const PredicateInfo* found = nullptr;
  for (const auto& p : predicates())
    if (tok.text == p.name) found = &p;
  if (!found) {
    std::vector<std::string> names;
    for (const auto& p : predicates()) names.emplace_back(p.name);
    lex.fail("unknown predicate '" + tok.text + "'", names);
  }
  lex.next();
  Fact f{found->predicate, {}};
  lex.expect_punct('(');
  for (int i = 0; i < found->arity; ++i) {
    if (i) lex.expect_punct(',');
    f.args.push_back(parse_term(lex));
  }
  lex.expect_punct(')');
  return f;
}

Fact parse_fact(std::string_view text) {
  Lexer lex(text, false);
  Fact f = parse_fact(lex);
  if (!lex.at_end()) lex.fail("unexpected " + describe(lex.peek()), {"end of input"});
  return f;
}

}  // namespace opcalc
