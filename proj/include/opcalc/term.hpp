#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opcalc {

class Lexer;

/// Operator term over named atoms. Immutable; printed in the operator grammar
/// and compared by that printed form.
class Term {
 public:
  enum class Kind { Atom, Adjoint, Closure, Compose, Inverse, Abs, Phase };

  Term() : Term(atom("?")) {}
  static Term atom(std::string name);
  static Term unary(Kind kind, Term arg);
  static Term compose(Term a, Term b);
  static Term adjoint(Term t) { return unary(Kind::Adjoint, std::move(t)); }
  static Term closure(Term t) { return unary(Kind::Closure, std::move(t)); }
  static Term inverse(Term t) { return unary(Kind::Inverse, std::move(t)); }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Term& arg(std::size_t i = 0) const { return node_->args[i]; }
  std::size_t arity() const { return node_->args.size(); }
  /// Atoms 0, unary 1 + depth, compose 1 + max.
  int depth() const { return node_->depth; }
  const std::string& str() const { return node_->text; }

  /// Appends every subterm, this one last.
  void subterms(std::vector<Term>& out) const;
  void atoms(std::vector<std::string>& out) const;
  bool contains_kind(Kind k) const;

  friend bool operator==(const Term& a, const Term& b) { return a.node_ == b.node_ || a.str() == b.str(); }
  friend bool operator<(const Term& a, const Term& b) { return a.str() < b.str(); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    int depth;
    std::string text;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// adj(cl t) → adj t, cl(cl t) → cl t, bottom up.
Term normalize(const Term& t);

/// Terms use the operator expression grammar restricted to names, adj, cl,
/// inv, abs, phase and composition.
Term parse_term(std::string_view text);
Term parse_term(Lexer& lex);

enum class Predicate {
  // unary
  DenselyDefined,
  Closeable,
  Closed,
  Symmetric,
  SelfAdjoint,
  Normal,
  Quasinormal,
  Bounded,
  Unitary,
  InvertibleBounded,
  DenseRange,
  Injective,
  FiniteKernel,
  ClosedRange,
  FiniteCodimRange,
  // binary
  Subset,
  Equal,
  CommutesExt,
  RelBounded,
  DomSubset,
  CoreFor,
  Permutes,
  // ternary
  Intertwines,
  // premise only: the term occurs somewhere in the fact base
  Known,
};

struct PredicateInfo {
  Predicate predicate;
  const char* name;
  int arity;
};

const std::vector<PredicateInfo>& predicates();
const PredicateInfo& info(Predicate p);
std::string_view to_string(Predicate p);

struct Fact {
  Predicate predicate = Predicate::Known;
  std::vector<Term> args;

  std::string str() const;
  Fact normalized() const;
  int depth() const;

  friend bool operator==(const Fact& a, const Fact& b) { return a.predicate == b.predicate && a.args == b.args; }
  friend bool operator<(const Fact& a, const Fact& b) { return a.str() < b.str(); }
};

Fact parse_fact(std::string_view text);
Fact parse_fact(Lexer& lex);

class InferenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace opcalc
