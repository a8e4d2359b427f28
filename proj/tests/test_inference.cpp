#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "opcalc/expr.hpp"
#include "opcalc/model_check.hpp"
#include "opcalc/rulebook.hpp"

using namespace opcalc;

namespace {

std::vector<Fact> facts(std::initializer_list<const char*> texts) {
  std::vector<Fact> out;
  for (const char* t : texts) out.push_back(parse_fact(t));
  return out;
}

MonomialOperator op(std::string_view text, Space space = Space::Unilateral) {
  Environment env;
  env.space = space;
  return evaluate(*parse_expr(text, space), env);
}

const char* kThm4[] = {"selfadjoint(A)", "selfadjoint(B)", "densely_defined(A * B)", "selfadjoint(A * B)"};

std::vector<Fact> thm4_facts() {
  std::vector<Fact> out;
  for (const char* t : kThm4) out.push_back(parse_fact(t));
  return out;
}

}  // namespace

TEST_CASE("term normalization") {
  CHECK(normalize(parse_term("adj(cl(A))")).str() == "adj(A)");
  CHECK(normalize(parse_term("cl(cl(A))")).str() == "cl(A)");
  CHECK(normalize(parse_term("adj(adj(A))")).str() == "adj(adj(A))");
  CHECK(normalize(parse_term("cl(cl(cl(A * B)))")).str() == "cl(A * B)");
  CHECK(normalize(parse_term("adj(cl(cl(B) * cl(A)))")).str() == "adj(cl(B) * cl(A))");
  // normal forms are fixed points
  for (const char* t : {"adj(cl(adj(cl(A))))", "cl(adj(cl(A)) * B)", "inv(cl(cl(A)))"}) {
    Term n = normalize(parse_term(t));
    CHECK(normalize(n) == n);
  }
}

TEST_CASE("term printing and depth") {
  Term t = parse_term("adj(adj(B) * adj(A))");
  CHECK(t.depth() == 3);
  CHECK(parse_term(t.str()) == t);
  CHECK(parse_term("A * (B * C)").str() == "A * (B * C)");
  CHECK(parse_term("(A * B) * C").str() == "A * B * C");
  CHECK_THROWS_AS(parse_term("diag(coeff(1,0,1))"), ParseError);
  CHECK(parse_fact("rel_bounded(B, A * B)").str() == "rel_bounded(B, A * B)");
  CHECK_THROWS_AS(parse_fact("subset(A)"), ParseError);
  CHECK_THROWS_AS(parse_fact("bogus(A)"), ParseError);
}

TEST_CASE("commuting self-adjoint factors: BA is contained in AB") {
  auto result = infer(thm4_facts(), rulebook());
  auto goal = parse_fact("subset(B * A, A * B)");
  REQUIRE(result.contains(goal));
  CHECK(result.derivation(*result.find(goal)).rule == "R-THM4");
  CHECK(result.contains(parse_fact("commutes_ext(B, A)")));
}

TEST_CASE("products with the adjoint are self-adjoint") {
  auto result = infer(facts({"densely_defined(A)", "closed(A)"}), rulebook());
  CHECK(result.contains(parse_fact("selfadjoint(A * adj(A))")));
  CHECK(result.contains(parse_fact("selfadjoint(adj(A) * A)")));
}

TEST_CASE("a closed operator equals its closure") {
  auto result = infer(facts({"closed(A)"}), rulebook());
  CHECK(result.contains(parse_fact("equal(cl(A), A)")));
}

TEST_CASE("explain") {
  auto result = infer(thm4_facts(), rulebook());
  std::string tree = result.explain(parse_fact("subset(B * A, A * B)"));
  CHECK(tree.rfind("subset(B * A, A * B)  [R-THM4", 0) == 0);
  CHECK(tree.find("selfadjoint(A)  [assumed]") != std::string::npos);
  CHECK(result.explain(parse_fact("selfadjoint(B)")) == "selfadjoint(B)  [assumed]\n");
  CHECK_THROWS_AS(result.explain(parse_fact("unitary(A)")), InferenceError);
  // rendering is deterministic
  CHECK(infer(thm4_facts(), rulebook()).explain(parse_fact("subset(B * A, A * B)")) == tree);
}

TEST_CASE("explain replays every derivation") {
  auto result = infer(thm4_facts(), rulebook());
  std::map<std::string, const Rule*> by_id;
  for (const auto& r : rulebook()) by_id[r.id] = &r;
  for (std::size_t i : result.derived()) {
    const Derivation& d = result.derivation(i);
    REQUIRE(by_id.contains(d.rule));
    // every premise index points at an earlier fact
    for (std::size_t p : d.premises) CHECK(p < i);
  }
}

TEST_CASE("assumption admission") {
  CHECK_THROWS_AS(validate_assumptions(facts({"normal(inv(A))"}), 3), InferenceError);
  CHECK_NOTHROW(validate_assumptions(facts({"injective(A)", "normal(inv(A))"}), 3));
  CHECK_NOTHROW(validate_assumptions(facts({"invertible_bounded(A)", "bounded(inv(A))"}), 3));
  CHECK_THROWS_AS(validate_assumptions(facts({"closed(adj(adj(adj(adj(A)))))"}), 3), InferenceError);
  CHECK_THROWS_AS(validate_assumptions(facts({"known(A)"}), 3), InferenceError);
  CHECK_THROWS_AS(infer(facts({"closed(inv(B))"}), rulebook()), InferenceError);
}

TEST_CASE("depth truncation is reported") {
  auto result = infer(facts({"normal(A)", "normal(B)", "dense_range(A)", "dense_range(B)", "normal(A * B)"}), rulebook());
  bool cor3 = std::any_of(result.truncated().begin(), result.truncated().end(),
                          [](const Truncation& t) { return t.rule == "R-COR3"; });
  CHECK(cor3);
  for (const auto& f : result.facts()) CHECK(f.depth() <= 3);
}

TEST_CASE("conjectural rules need the flag") {
  auto premises = facts({"closeable(A)", "closeable(B)", "closeable(A * B)", "rel_bounded(B, A * B)"});
  auto goal = parse_fact("subset(cl(A * B), cl(A) * cl(B))");
  CHECK_FALSE(infer(premises, rulebook()).contains(goal));
  InferenceOptions opts;
  opts.conjectural = true;
  auto result = infer(premises, rulebook(), opts);
  REQUIRE(result.contains(goal));
  CHECK(result.uses_conjectural(*result.find(goal)));
}

TEST_CASE("monotonicity: more facts never remove conclusions") {
  const char* pool[] = {"selfadjoint(A)", "closed(B)",         "bounded(B)",    "normal(A)",
                        "injective(B)",   "dense_range(A)",    "selfadjoint(B)", "densely_defined(A * B)",
                        "unitary(A)",     "invertible_bounded(B)"};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Fact> small, large;
    for (const char* p : pool) {
      bool in_small = rng() % 3 == 0;
      bool in_large = in_small || rng() % 2 == 0;
      if (in_small) small.push_back(parse_fact(p));
      if (in_large) large.push_back(parse_fact(p));
    }
    auto a = infer(small, rulebook()).fact_set();
    auto b = infer(large, rulebook()).fact_set();
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("determinism under shuffled rules and facts") {
  auto premises = thm4_facts();
  premises.push_back(parse_fact("closed(A)"));
  auto reference = infer(premises, rulebook()).fact_set();
  std::vector<Rule> rules = rulebook();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(rules.begin(), rules.end(), rng);
    std::shuffle(premises.begin(), premises.end(), rng);
    CHECK(infer(premises, rules).fact_set() == reference);
  }
}

TEST_CASE("rulebook contents") {
  std::set<std::string> ids;
  std::size_t conjectural = 0;
  for (const auto& r : rulebook()) {
    CHECK(ids.insert(r.id).second);
    CHECK_FALSE(r.citation.empty());
    CHECK_FALSE(r.conclusions.empty());
    if (r.status == RuleStatus::Conjectural) ++conjectural;
  }
  CHECK(conjectural == 2);
  CHECK(find_rule("R-THM4").status == RuleStatus::Sound);
  CHECK(find_rule("R-PROP3-1").status == RuleStatus::Conjectural);
  CHECK(find_rule("R-DNVN").status == RuleStatus::Axiom);
  CHECK_THROWS_AS(find_rule("R-NOPE"), std::out_of_range);
  for (const char* id : {"R-ADJ-PROD", "R-LEM1", "R-THM1", "R-THM2", "R-COR2", "R-LEM2", "R-COR1", "R-THM3", "R-THM5a",
                         "R-THM5b", "R-THM5-2", "R-NCLOSE", "R-BINV-NORM", "R-PRO-AINV", "R-EXMAD", "R-THM7", "R-COR3",
                         "R-FP", "R-PROP2-1", "R-PROP2-2", "R-PROP3-2", "R-THM10", "R-LEM3-1", "R-LEM3-2", "R-LEM3-3",
                         "R-LEM3-4", "R-LEM4", "R-PROP4", "R-THM12", "R-PROP5", "R-THM13", "R-THM14", "R-THM15",
                         "R-COR-PERM"})
    CHECK_NOTHROW(find_rule(id));
}

TEST_CASE("model evaluation") {
  Instantiation inst{{"A", op("diag(coeff(1,0,1) * qpow(0,1,1))")}, {"B", op("diag(coeff(1,0,1) * qpow(0,1,-1))")},
                     {"S", op("shift(1)")}};
  ModelEvaluator eval(inst);
  CHECK(eval.fact(parse_fact("selfadjoint(A)")) == Truth::True);
  CHECK(eval.fact(parse_fact("bounded(B)")) == Truth::True);
  CHECK(eval.fact(parse_fact("bounded(A)")) == Truth::False);
  CHECK(eval.fact(parse_fact("subset(B * A, A * B)")) == Truth::True);
  CHECK(eval.fact(parse_fact("equal(B * A, A * B)")) == Truth::False);
  CHECK(eval.fact(parse_fact("normal(cl(B * A))")) == Truth::True);
  CHECK(eval.fact(parse_fact("closed_range(B * A)")) == Truth::False);
  CHECK(eval.fact(parse_fact("closed_range(A)")) == Truth::True);
  CHECK(eval.fact(parse_fact("quasinormal(S)")) == Truth::True);
  CHECK(eval.fact(parse_fact("dense_range(S)")) == Truth::False);
  CHECK(eval.fact(parse_fact("finite_codim_range(S)")) == Truth::True);
  CHECK(eval.fact(parse_fact("permutes(A, B)")) == Truth::Unknown);
  CHECK(eval.fact(parse_fact("normal(inv(S))")) == Truth::Unknown);
  CHECK_FALSE(eval.reason().empty());
  CHECK_THROWS_AS(eval.fact(parse_fact("normal(C)")), InferenceError);
}

TEST_CASE("soundness model check on the first example") {
  Instantiation ex1{{"A", op("diag(coeff(1,0,1) * qpow(0,1,1))")}, {"B", op("diag(coeff(1,0,1) * qpow(0,1,-1))")}};
  auto report = model_check_soundness(thm4_facts(), rulebook(), ex1);
  CHECK_FALSE(report.vacuous());
  CHECK(report.passed());
  CHECK(report.hard_failures == 0);
  CHECK(report.checks.size() > 10);

  // B = shift is not self-adjoint
  Instantiation bad{{"A", ex1.at("A")}, {"B", op("shift(1)")}};
  auto vacuous = model_check_soundness(thm4_facts(), rulebook(), bad);
  REQUIRE(vacuous.vacuous());
  CHECK(vacuous.failing_premise->rfind("selfadjoint(B)", 0) == 0);

  CHECK_THROWS_AS(model_check_soundness(thm4_facts(), rulebook(), Instantiation{{"A", ex1.at("A")}}), InferenceError);
}

TEST_CASE("conjectural failures are reported separately") {
  std::vector<Rule> rules = rulebook();
  rules.push_back(make_rule("X-CONJ", RuleStatus::Conjectural, "closed operators are bounded", "closed(A)", "bounded(A)"));
  Instantiation inst{{"A", op("diag(coeff(1,0,1) * qpow(0,1,1))")}};
  InferenceOptions opts;
  opts.conjectural = true;
  auto report = model_check_soundness(facts({"closed(A)"}), rules, inst, opts);
  CHECK_FALSE(report.vacuous());
  CHECK(report.hard_failures == 0);
  CHECK(report.conjectural_failures >= 1);
  CHECK(report.passed());

  // without the flag the rule is not applied
  auto plain = model_check_soundness(facts({"closed(A)"}), rules, inst);
  CHECK(plain.conjectural_failures == 0);
}

TEST_CASE("soundness sampler: SOUND rules have no model counterexample") {
  for (const auto& rule : rulebook()) {
    if (rule.status != RuleStatus::Sound) continue;
    auto s = sample_rule(rule, 20261016, 100);
    INFO(rule.id);
    CHECK(s.instances == 100);
    CHECK(s.violations == 0);
    CHECK(s.nonvacuous > 0);
  }
}
