#include "opcalc/program.hpp"

#include <set>
#include <sstream>

#include "opcalc/model_check.hpp"
#include "opcalc/rulebook.hpp"
#include "opcalc/state_diagram.hpp"

namespace opcalc {

namespace {

const char* const kStatements[] = {"space", "sym",  "op",     "props",  "cmp",    "state",
                                   "polar", "matrix", "holds", "assume", "derive", "explain"};

std::string expr_text(const ExprPtr& e) { return e ? e->str() : std::string(); }

std::string expect_suffix(const std::optional<std::string>& expect) { return expect ? " expect " + *expect : ""; }

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

std::string Statement::str() const {
  switch (kind) {
    case Kind::Space: return space == Space::Unilateral ? "space unilateral" : "space bilateral";
    case Kind::Sym: return "sym " + name + " = " + symbol->str();
    case Kind::Op: return "op " + name + " = " + expr_text(expr);
    case Kind::Props: return "props " + expr_text(expr);
    case Kind::Cmp: return "cmp " + expr_text(expr) + ", " + expr_text(rhs) + expect_suffix(expect);
    case Kind::State: return "state " + expr_text(expr) + expect_suffix(expect);
    case Kind::Polar: return "polar " + expr_text(expr);
    case Kind::Matrix:
      return "matrix " + expr_text(expr) + " " + std::to_string(n) + (mode == MatrixMode::Exact ? " exact" : " float");
    case Kind::Holds: return "holds " + fact->str() + expect_suffix(expect);
    case Kind::Assume: return "assume " + fact->str();
    case Kind::Explain: return "explain " + fact->str();
    case Kind::Derive: {
      std::string out = "derive";
      if (conjectural) out += " --conjectural";
      if (depth) out += " --depth " + std::to_string(*depth);
      return out;
    }
  }
  return {};
}

bool operator==(const Statement& a, const Statement& b) {
  return a.kind == b.kind && a.space == b.space && a.name == b.name && a.symbol == b.symbol &&
         same_expr(a.expr, b.expr) && same_expr(a.rhs, b.rhs) && a.n == b.n && a.mode == b.mode && a.fact == b.fact &&
         a.conjectural == b.conjectural && a.depth == b.depth && a.expect == b.expect;
}

Space Program::space() const {
  for (const auto& s : statements)
    if (s.kind == Statement::Kind::Space) return s.space;
  return Space::Unilateral;
}

std::string Program::str() const {
  std::string out;
  for (const auto& s : statements) out += s.str() + "\n";
  return out;
}

// ---- parsing --------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text, true) {}

  Program run() {
    Program p;
    for (;;) {
      while (lex_.peek().kind == TokenKind::Newline) lex_.next();
      if (lex_.at_end()) break;
      p.statements.push_back(statement(p.statements.empty()));
      const Token& end = lex_.peek();
      if (end.kind != TokenKind::Newline && end.kind != TokenKind::End)
        lex_.fail("unexpected " + describe(end), {"end of line"});
    }
    return p;
  }

 private:
  Statement statement(bool first) {
    const Token kw = lex_.peek();
    if (kw.kind != TokenKind::Identifier)
      lex_.fail("unexpected " + describe(kw), std::vector<std::string>(std::begin(kStatements), std::end(kStatements)));
    Statement s;
    s.pos = kw.pos;
    const std::string& w = kw.text;
    using K = Statement::Kind;
    if (w == "space") {
      lex_.next();
      if (!first) lex_.fail_at(kw, "space must be declared once, before any other statement");
      s.kind = K::Space;
      if (lex_.accept_ident("unilateral")) {
        s.space = Space::Unilateral;
      } else if (lex_.accept_ident("bilateral")) {
        s.space = Space::Bilateral;
      } else {
        lex_.fail("unexpected " + describe(lex_.peek()), {"unilateral", "bilateral"});
      }
      env_.space = s.space;
    } else if (w == "sym" || w == "op") {
      lex_.next();
      s.kind = w == "sym" ? K::Sym : K::Op;
      const Token name = lex_.peek();
      s.name = lex_.expect_identifier(w == "sym" ? "symbol name" : "operator name");
      if (reserved(s.name)) lex_.fail_at(name, "'" + s.name + "' is a reserved word", {"name"});
      if (env_.symbols.contains(s.name) || env_.operators.contains(s.name))
        throw BindingError(name.pos, "'" + s.name + "' is already bound");
      lex_.expect_punct('=');
      if (s.kind == K::Sym) {
        s.symbol = parse_symbol(lex_, env_.space);
        env_.symbols.emplace(s.name, *s.symbol);
      } else {
        s.expr = expression();
        env_.operators.emplace(s.name, s.expr);
      }
    } else if (w == "props" || w == "polar") {
      lex_.next();
      s.kind = w == "props" ? K::Props : K::Polar;
      s.expr = expression();
    } else if (w == "cmp") {
      lex_.next();
      s.kind = K::Cmp;
      s.expr = expression();
      lex_.accept_punct(',');
      s.rhs = expression();
      s.expect = expectation(1);
    } else if (w == "state") {
      lex_.next();
      s.kind = K::State;
      s.expr = expression();
      s.expect = expectation(2);
    } else if (w == "matrix") {
      lex_.next();
      s.kind = K::Matrix;
      s.expr = expression();
      const Token ntok = lex_.peek();
      s.n = lex_.expect_int64();
      if (s.n < 1 || s.n > 4096) lex_.fail_at(ntok, "matrix size must lie in 1..4096");
      if (lex_.accept_ident("float")) {
        s.mode = MatrixMode::Float;
      } else {
        lex_.accept_ident("exact");
      }
    } else if (w == "holds") {
      lex_.next();
      s.kind = K::Holds;
      s.fact = fact(true);
      s.expect = expectation(1);
      if (s.expect && *s.expect != "true" && *s.expect != "false")
        lex_.fail("expected true or false after expect", {"true", "false"});
    } else if (w == "assume" || w == "explain") {
      lex_.next();
      s.kind = w == "assume" ? K::Assume : K::Explain;
      s.fact = fact(false);
    } else if (w == "derive") {
      lex_.next();
      s.kind = K::Derive;
      while (lex_.is_punct('-')) {
        lex_.next();
        lex_.expect_punct('-');
        const Token flag = lex_.peek();
        if (lex_.accept_ident("conjectural")) {
          s.conjectural = true;
        } else if (lex_.accept_ident("depth")) {
          const Token dtok = lex_.peek();
          std::int64_t d = lex_.expect_int64();
          if (d < 0 || d > 8) lex_.fail_at(dtok, "depth must lie in 0..8");
          s.depth = static_cast<int>(d);
        } else {
          lex_.fail_at(flag, "unknown flag", {"conjectural", "depth"});
        }
      }
    } else {
      lex_.fail("unknown statement '" + w + "'",
                std::vector<std::string>(std::begin(kStatements), std::end(kStatements)));
    }
    return s;
  }

  static bool reserved(const std::string& name) {
    static const std::set<std::string, std::less<>> words = {"adj", "cl",  "inv", "abs",   "phase", "diag",
                                                             "shift", "dom", "on", "coeff", "expect"};
    return words.contains(name);
  }

  // Parses an expression and checks that its names are bound.
  ExprPtr expression() {
    ExprPtr e = parse_expr(lex_, env_.space);
    inline_names(e, env_);
    return e;
  }

  // Facts name operators; `bound` requires each one to be an op binding.
  Fact fact(bool bound) {
    const std::size_t start = lex_.position();
    Fact f = parse_fact(lex_);
    if (!bound) return f;
    const std::size_t end = lex_.position();
    lex_.rewind(start);
    for (std::size_t k = 0; start + k < end; ++k) {
      const Token& t = lex_.peek(k);
      if (t.kind != TokenKind::Identifier || lex_.is_punct('(', k + 1)) continue;
      if (!env_.operators.contains(t.text)) {
        Token copy = t;
        lex_.rewind(end);
        throw BindingError(copy.pos, "unbound operator '" + copy.text + "'");
      }
    }
    lex_.rewind(end);
    return f;
  }

  // `expect` followed by `words` words; hyphenated words count as one.
  std::optional<std::string> expectation(int words) {
    if (!lex_.accept_ident("expect")) return std::nullopt;
    std::string out;
    for (int i = 0; i < words; ++i) {
      if (i) out += " ";
      out += lex_.expect_identifier("expected value");
      while (lex_.accept_punct('-')) out += "-" + lex_.expect_identifier("expected value");
    }
    return out;
  }

  Lexer lex_;
  Environment env_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

// ---- running --------------------------------------------------------------------

namespace {

class Runner {
 public:
  Runner(const Program& p, const RunOptions& o) : program_(p), options_(o) { env_.space = p.space(); }

  ProgramResult run() {
    bool derived = false;
    for (const auto& s : program_.statements) {
      try {
        step(s);
      } catch (const ModelError& e) {
        error(s, e.what());
      } catch (const BindingError& e) {
        error(s, e.what());
      }
      derived |= s.kind == Statement::Kind::Derive;
    }
    if (!derived && options_.implicit_derive) {
      Statement d;
      d.kind = Statement::Kind::Derive;
      step(d);
    }
    return {out_.str(), failed_};
  }

 private:
  void error(const Statement& s, const std::string& what) {
    out_ << s.str() << ": error: " << what << "\n";
    failed_ = true;
  }

  void verdict(const std::optional<std::string>& expect, const std::string& got) {
    if (!expect) return;
    if (*expect == got) {
      out_ << " [PASS]";
    } else {
      out_ << " [FAIL expected " << *expect << "]";
      failed_ = true;
    }
  }

  MonomialOperator eval(const ExprPtr& e) { return evaluate(*e, env_); }

  // Operator bindings for the given atoms; nullopt if one is not an op.
  std::optional<Instantiation> instantiate(const std::vector<Fact>& facts) {
    std::vector<std::string> names;
    for (const auto& f : facts)
      for (const auto& t : f.args) t.atoms(names);
    if (names.empty()) return std::nullopt;
    Instantiation inst;
    for (const auto& n : names) {
      auto it = env_.operators.find(n);
      if (it == env_.operators.end()) return std::nullopt;
      if (!inst.contains(n)) inst.emplace(n, eval(it->second));
    }
    return inst;
  }

  InferenceOptions inference_options(const Statement& s) const {
    InferenceOptions o;
    o.conjectural = s.conjectural || options_.conjectural;
    if (s.depth) o.max_depth = *s.depth;
    if (options_.depth) o.max_depth = *options_.depth;
    return o;
  }

  void derive(const Statement& s) {
    InferenceOptions o = inference_options(s);
    result_ = infer(assumptions_, rulebook(), o);
    const InferenceResult& r = *result_;
    std::vector<std::size_t> plain, conj;
    for (std::size_t i : r.derived()) (r.uses_conjectural(i) ? conj : plain).push_back(i);
    out_ << "derive: " << plain.size() + conj.size() << " facts from " << assumptions_.size() << " assumptions\n";
    for (std::size_t i : plain) out_ << "  " << r.facts()[i].str() << "  [" << r.derivation(i).rule << "]\n";
    if (o.conjectural) {
      out_ << "-- conjectural --\n";
      for (std::size_t i : conj) out_ << "  " << r.facts()[i].str() << "  [" << r.derivation(i).rule << "]\n";
    }
    if (!r.truncated().empty()) {
      std::set<std::string> rules;
      for (const auto& t : r.truncated()) rules.insert(t.rule);
      out_ << "truncated: " << r.truncated().size() << " conclusions deeper than " << r.max_depth() << " from";
      for (const auto& id : rules) out_ << " " << id;
      out_ << "\n";
    }
    auto inst = instantiate(assumptions_);
    if (!inst) return;
    SoundnessReport rep = model_check_soundness(assumptions_, rulebook(), *inst, o);
    out_ << "model check: ";
    if (rep.vacuous()) {
      out_ << "vacuous, " << *rep.failing_premise << "\n";
      return;
    }
    out_ << rep.hard_failures << " false, " << rep.unknown << " unknown";
    if (o.conjectural) out_ << ", " << rep.conjectural_failures << " false via conjectural rules";
    for (const auto& c : rep.checks)
      if (c.truth == Truth::False) out_ << "\n  false: " << c.fact << "  [" << c.rule << "]";
    if (rep.hard_failures) {
      out_ << " [FAIL]";
      failed_ = true;
    }
    out_ << "\n";
  }

  void step(const Statement& s) {
    using K = Statement::Kind;
    switch (s.kind) {
      case K::Space: break;
      case K::Sym: env_.symbols[s.name] = *s.symbol; break;
      case K::Op: env_.operators[s.name] = s.expr; break;
      case K::Props: {
        OperatorProperties props = properties(eval(s.expr));
        out_ << s.str() << ": " << props.str() << "\n";
        break;
      }
      case K::Cmp: {
        ComparisonVerdict v = compare(eval(s.expr), eval(s.rhs));
        out_ << "cmp " << s.expr->str() << ", " << s.rhs->str() << ": " << to_string(v.verdict);
        verdict(s.expect, std::string(to_string(v.verdict)));
        out_ << "\n";
        if (v.verdict != Verdict::Equal && !v.witness.empty()) out_ << "  witness: " << v.witness << "\n";
        break;
      }
      case K::State: {
        StateClass st = state_classify(eval(s.expr));
        out_ << "state " << s.expr->str() << ": " << st.str();
        if (st.via_closure) out_ << " (closure)";
        verdict(s.expect, st.str());
        out_ << "\n";
        break;
      }
      case K::Polar: {
        PolarDecomposition pd = polar(eval(s.expr));
        out_ << s.str() << ": W = " << pd.partial_isometry.str() << ", |T| = " << pd.modulus.str();
        if (pd.used_closure) out_ << " (closure)";
        out_ << "\n";
        break;
      }
      case K::Matrix: {
        TruncatedMatrix m = matrix_of(*inline_names(s.expr, env_), env_.space, s.n, s.mode);
        out_ << s.str() << ":\n" << m.csv(true);
        if (m.symbolic_mismatch) {
          out_ << "  mismatch with the symbolic result: " << m.symbolic_mismatch->str() << " [FAIL]\n";
          failed_ = true;
        }
        break;
      }
      case K::Holds: {
        auto inst = instantiate({*s.fact});
        ModelEvaluator ev(inst ? *inst : Instantiation{});
        Truth t = ev.fact(*s.fact);
        out_ << "holds " << s.fact->str() << ": " << to_string(t);
        verdict(s.expect, std::string(to_string(t)));
        if (t == Truth::Unknown && !ev.reason().empty()) out_ << " (" << ev.reason() << ")";
        out_ << "\n";
        break;
      }
      case K::Assume:
        assumptions_.push_back(*s.fact);
        result_.reset();
        break;
      case K::Derive: derive(s); break;
      case K::Explain: {
        if (!result_) result_ = infer(assumptions_, rulebook(), inference_options(s));
        if (!result_->contains(*s.fact)) {
          out_ << "explain " << s.fact->str() << ": not derived [FAIL]\n";
          failed_ = true;
          break;
        }
        out_ << result_->explain(*s.fact);
        break;
      }
    }
  }

  const Program& program_;
  RunOptions options_;
  Environment env_;
  std::vector<Fact> assumptions_;
  std::optional<InferenceResult> result_;
  std::ostringstream out_;
  bool failed_ = false;
};

}  // namespace

ProgramResult run_program(const Program& program, const RunOptions& options) { return Runner(program, options).run(); }

}  // namespace opcalc
