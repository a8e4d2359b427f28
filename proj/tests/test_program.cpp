#include <doctest.h>

#include <random>

#include "opcalc/program.hpp"
#include "opcalc/random_model.hpp"

using namespace opcalc;

namespace {

const char* const kEx1 = R"(# first example
space unilateral
sym a = coeff(1,0,1) * qpow(0,1,1)
sym b = coeff(1,0,1) * qpow(0,1,-1)
op A = diag(a)
op B = diag(b)
cmp B*A A*B
)";

// Random programs over a few bound names.
class ProgramGen {
 public:
  explicit ProgramGen(std::uint64_t seed) : rng_(seed) {}

  std::string program() {
    ops_.clear();
    syms_.clear();
    std::string out;
    space_ = rng_.chance(1, 2) ? Space::Unilateral : Space::Bilateral;
    if (space_ == Space::Bilateral || rng_.chance(1, 2)) out += space_ == Space::Unilateral ? "space unilateral\n" : "space bilateral\n";
    for (int i = 0, n = static_cast<int>(rng_.uniform(1, 3)); i < n; ++i) {
      std::string name = "s" + std::to_string(i);
      out += "sym " + name + " = " + random_symbol(rng_, space_).str() + "\n";
      syms_.push_back(name);
    }
    for (int i = 0, n = static_cast<int>(rng_.uniform(1, 4)); i < n; ++i) {
      std::string e = expr(2);
      std::string name = i % 2 ? "T" + std::to_string(i) : std::string(1, static_cast<char>('A' + i));
      out += "op " + name + " = " + e + "\n";
      ops_.push_back(name);
    }
    for (int i = 0, n = static_cast<int>(rng_.uniform(1, 8)); i < n; ++i) out += query() + "\n";
    return out;
  }

 private:
  std::string pick(const std::vector<std::string>& v) {
    return v[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

  std::string expr(int depth) {
    std::int64_t choice = rng_.uniform(0, depth > 0 ? 9 : 3);
    switch (choice) {
      case 0: return ops_.empty() ? "shift(" + std::to_string(rng_.uniform(-2, 2)) + ")" : pick(ops_);
      case 1: return "diag(" + pick(syms_) + ")";
      case 2: return "diag(" + random_symbol(rng_, space_).str() + ").shift(" + std::to_string(rng_.uniform(-2, 2)) + ")";
      case 3: return "shift(" + std::to_string(rng_.uniform(-2, 2)) + ")";
      case 4: return "adj(" + expr(depth - 1) + ")";
      case 5: return "cl(" + expr(depth - 1) + ")";
      case 6: return rng_.chance(1, 2) ? "abs(" + expr(depth - 1) + ")" : "phase(" + expr(depth - 1) + ")";
      case 7: return "(" + expr(depth - 1) + " on dom(" + pick(syms_) + "))";
      default: return expr(depth - 1) + " * " + expr(depth - 1);
    }
  }

  std::string term(int depth) {
    std::int64_t choice = rng_.uniform(0, depth > 0 ? 4 : 0);
    switch (choice) {
      case 0: return pick(ops_);
      case 1: return "adj(" + term(depth - 1) + ")";
      case 2: return "cl(" + term(depth - 1) + ")";
      case 3: return "inv(" + term(depth - 1) + ")";
      default: return term(depth - 1) + " * (" + term(depth - 1) + ")";
    }
  }

  std::string fact() {
    const auto& all = predicates();
    const PredicateInfo& p = all[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(all.size()) - 1))];
    std::string out = std::string(p.name) + "(";
    for (int i = 0; i < p.arity; ++i) out += (i ? ", " : "") + term(2);
    return out + ")";
  }

  std::string query() {
    static const char* verdicts[] = {"equal", "proper-subset", "proper-superset", "incomparable"};
    static const char* states[] = {"III_1 I_3", "I_1 I_1", "II_2 II_2"};
    switch (rng_.uniform(0, 9)) {
      case 0: return "props " + expr(2);
      case 1: return "cmp " + expr(2) + (rng_.chance(1, 2) ? ", " : " ") + expr(1) +
                     (rng_.chance(1, 2) ? std::string(" expect ") + rng_.pick(verdicts) : "");
      case 2: return "state " + expr(2) + (rng_.chance(1, 2) ? std::string(" expect ") + rng_.pick(states) : "");
      case 3: return "polar " + expr(2);
      case 4: return "matrix " + expr(2) + " " + std::to_string(rng_.uniform(1, 12)) + (rng_.chance(1, 2) ? " float" : "");
      case 5: return "holds " + fact() + (rng_.chance(1, 2) ? " expect true" : "");
      case 6: return "assume " + fact();
      case 7: return "explain " + fact();
      default: {
        std::string d = "derive";
        if (rng_.chance(1, 2)) d += " --conjectural";
        if (rng_.chance(1, 2)) d += " --depth " + std::to_string(rng_.uniform(0, 4));
        return d;
      }
    }
  }

  ModelRng rng_;
  Space space_ = Space::Unilateral;
  std::vector<std::string> ops_, syms_;
};

}  // namespace

TEST_CASE("first example script") {
  Program p = parse_program(kEx1);
  CHECK(p.statements.size() == 6);
  CHECK(p.space() == Space::Unilateral);
  ProgramResult r = run_program(p);
  CHECK_FALSE(r.failed);
  CHECK(r.output.rfind("cmp B * A, A * B: proper-subset\n", 0) == 0);
  CHECK(r.output.find("witness: ") != std::string::npos);
}

TEST_CASE("empty program") {
  Program p = parse_program("");
  CHECK(p.statements.empty());
  ProgramResult r = run_program(p);
  CHECK(r.output.empty());
  CHECK_FALSE(r.failed);
  CHECK(parse_program("# only a comment\n\n").statements.empty());
}

TEST_CASE("unbound names carry their position") {
  try {
    parse_program("op A = shift(1)\ncmp A C\n");
    FAIL("expected a binding error");
  } catch (const BindingError& e) {
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 7);
    CHECK(std::string(e.what()).find("'C'") != std::string::npos);
  }
  try {
    parse_program("op A = shift(1)\nholds subset(A, adj(Q))\n");
    FAIL("expected a binding error");
  } catch (const BindingError& e) {
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 21);
  }
  CHECK_THROWS_AS(parse_program("op A = diag(x)\n"), BindingError);
  CHECK_THROWS_AS(parse_program("op A = shift(1)\nop A = shift(2)\n"), BindingError);
  // facts files name free operators
  CHECK_NOTHROW(parse_program("assume normal(A)\nexplain normal(A)\n"));
}

TEST_CASE("syntax errors carry position and expected tokens") {
  auto diag = [](std::string_view text) {
    try {
      parse_program(text);
    } catch (const ParseError& e) {
      return e.diagnostic();
    }
    FAIL("expected a parse error");
    return Diagnostic{};
  };
  Diagnostic d = diag("op A = shift(1)\ncmp A (A\n");
  CHECK(d.pos.line == 2);
  CHECK(d.pos.column == 9);
  CHECK(d.expected == std::vector<std::string>{"')'"});
  d = diag("frobnicate A\n");
  CHECK(d.pos.line == 1);
  CHECK(d.pos.column == 1);
  CHECK(d.expected.size() == 12);
  d = diag("op A = shift(1)\nspace bilateral\n");
  CHECK(d.pos.line == 2);
  d = diag("op A = shift(1)\nprops A A\n");
  CHECK(d.expected == std::vector<std::string>{"end of line"});
  d = diag("derive --fast\n");
  CHECK(d.pos.column == 10);
  d = diag("op A = shift(1)\nholds normal(A) expect maybe\n");
  CHECK(d.pos.line == 2);
}

TEST_CASE("expectations decide the outcome") {
  ProgramResult ok = run_program(parse_program("op S = shift(1)\nstate S expect III_1 I_3\n"));
  CHECK_FALSE(ok.failed);
  CHECK(ok.output == "state S: III_1 I_3 [PASS]\n");
  ProgramResult bad = run_program(parse_program("op S = shift(1)\ncmp S, adj(S) expect equal\n"));
  CHECK(bad.failed);
  CHECK(bad.output.find("[FAIL expected equal]") != std::string::npos);
  // an operator the model cannot form is an error, not a crash
  ProgramResult err = run_program(parse_program("op S = shift(1)\nprops inv(S)\n"));
  CHECK(err.failed);
  CHECK(err.output.rfind("props inv(S): error: ", 0) == 0);
}

TEST_CASE("facts programs") {
  Program p = parse_program(
      "assume selfadjoint(A)\nassume selfadjoint(B)\nassume densely_defined(A * B)\nassume selfadjoint(A * B)\n"
      "explain subset(B * A, A * B)\n");
  RunOptions o;
  o.implicit_derive = true;
  ProgramResult r = run_program(p, o);
  CHECK_FALSE(r.failed);
  CHECK(r.output.find("subset(B * A, A * B)  [R-THM4") != std::string::npos);
  CHECK(r.output.find("derive: ") != std::string::npos);
  CHECK(r.output.find("  subset(B * A, A * B)  [R-THM4]\n") != std::string::npos);
  CHECK(r.output.find("model check") == std::string::npos);

  Program missing = parse_program("assume normal(A)\nexplain unitary(A)\n");
  CHECK(run_program(missing).failed);
}

TEST_CASE("derive model-checks bound operators") {
  ProgramResult r = run_program(parse_program(
      "op A = diag(coeff(1,0,1) * pow(1,2))\nop B = A\nassume selfadjoint(A)\nassume selfadjoint(B)\n"
      "assume densely_defined(A * B)\nassume selfadjoint(A * B)\nderive --depth 2\n"));
  CHECK_FALSE(r.failed);
  CHECK(r.output.find("model check: 0 false") != std::string::npos);
  ProgramResult vac = run_program(parse_program("op S = shift(1)\nassume normal(S)\nderive\n"));
  CHECK(vac.output.find("model check: vacuous, normal(S) is false") != std::string::npos);
  CHECK_FALSE(vac.failed);
}

TEST_CASE("conjectural section") {
  Program p = parse_program(
      "assume closeable(A)\nassume closeable(B)\nassume closeable(A * B)\nassume rel_bounded(B, A * B)\n"
      "derive --conjectural\n");
  ProgramResult r = run_program(p);
  auto section = r.output.find("-- conjectural --");
  REQUIRE(section != std::string::npos);
  CHECK(r.output.find("subset(cl(A * B), cl(A) * cl(B))  [R-PROP3-1]") > section);
}

TEST_CASE("printing is canonical") {
  Program p = parse_program("op A=diag(coeff(2,0,1)*pow(1,1)).shift(1)\ncmp A*A adj(A)\nderive --depth 2 --conjectural\n");
  CHECK(p.str() ==
        "op A = diag(coeff(2,0,1) * pow(1,1)).shift(1)\ncmp A * A, adj(A)\nderive --conjectural --depth 2\n");
}

TEST_CASE("round trip over generated programs") {
  ProgramGen gen(20261016);
  for (int i = 0; i < 100; ++i) {
    std::string text = gen.program();
    INFO(text);
    Program p1 = parse_program(text);
    std::string s1 = p1.str();
    Program p2 = parse_program(s1);
    CHECK(p2 == p1);
    CHECK(p2.str() == s1);
  }
}
