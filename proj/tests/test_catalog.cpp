#include <doctest.h>

#include <algorithm>
#include <set>

#include "opcalc/catalog.hpp"
#include "opcalc/expr.hpp"
#include "opcalc/rulebook.hpp"

using namespace opcalc;

namespace {

// One shipped run shared by the cases below.
const CatalogReport& shipped() {
  static const CatalogReport report = run_catalog(catalog());
  return report;
}

const EntryResult& entry(std::string_view id) {
  for (const auto* list : {&shipped().entries, &shipped().conjectural})
    for (const auto& e : *list)
      if (e.id == id) return e;
  throw std::out_of_range(std::string(id));
}

const CheckResult& check(const EntryResult& e, std::string_view name) {
  for (const auto& c : e.checks)
    if (c.name == name) return c;
  throw std::out_of_range(std::string(name));
}

}  // namespace

TEST_CASE("catalog ids are unique and witnesses reparse") {
  std::set<std::string> ids;
  for (const auto& e : catalog()) {
    CHECK(ids.insert(e.id).second);
    CHECK_FALSE(e.witnesses.empty());
    for (const auto& [name, op] : e.witnesses) {
      Environment env;
      env.space = op.space();
      CHECK(evaluate(*parse_expr(op.str(), op.space()), env) == op);
    }
  }
  for (const char* id : {"EX1", "THM4-W", "THM5-2-W", "NCLOSE-W", "THM15-W", "SHIFT-STATE", "CHAIN-W", "VN-W", "PROP4-W"})
    CHECK(ids.contains(id));
}

TEST_CASE("first example entry") {
  const auto& e = entry("EX1");
  CHECK(e.verdict == EntryVerdict::Pass);
  CHECK(check(e, "cmp(A * B, I)").got == "equal");
  const auto& strict = check(e, "cmp(B * A, A * B)");
  CHECK(strict.got == "proper-subset");
  CHECK(strict.detail.find("n_k") != std::string::npos);
  CHECK(check(e, "cmp(cl(B * A), I)").got == "equal");
  CHECK(check(e, "normal(cl(B * A))").got == "true");
  CHECK(check(e, "cmp(adj(A * B), B * A)").got != "equal");
}

TEST_CASE("products with a unitary: normality agrees and is false for diag(2^n)") {
  const auto& e = entry("THM5-2-W");
  CHECK(e.verdict == EntryVerdict::Pass);
  CHECK(check(e, "normal(A * B)").got == "false");
  CHECK(check(e, "normal(B * A)").got == "false");
  CHECK(check(e, "N=32 normality residual of A * B").got == "large");
  CHECK(entry("THM5-2-W2").verdict == EntryVerdict::Pass);
}

TEST_CASE("shipped run: no FAIL, vacuity is named") {
  const auto& r = shipped();
  CHECK(r.count(EntryVerdict::Fail) == 0);
  CHECK_FALSE(r.failed());
  for (const auto& e : r.entries) {
    INFO(e.id);
    if (e.verdict == EntryVerdict::Vacuous) {
      REQUIRE(e.failing_hypothesis.has_value());
      CHECK_FALSE(e.failing_hypothesis->empty());
    }
    for (const auto& c : e.checks)
      if (c.got != "opaque" && e.verdict == EntryVerdict::Pass) CHECK(c.got == c.expected);
  }
  CHECK(entry("PROP4-W").verdict == EntryVerdict::Vacuous);
  CHECK(entry("PROP4-W").failing_hypothesis->rfind("dense_range(T)", 0) == 0);
  CHECK(entry("SHIFT-STATE").verdict == EntryVerdict::Pass);
  CHECK(check(entry("THM15-W"), "permutes(A, B)").got == "opaque");
}

TEST_CASE("every SOUND rule has a non-vacuous entry") {
  for (const auto& rule : rulebook()) {
    if (rule.status != RuleStatus::Sound) continue;
    INFO(rule.id);
    bool covered = std::any_of(shipped().entries.begin(), shipped().entries.end(), [&](const EntryResult& e) {
      return e.verdict == EntryVerdict::Pass && std::find(e.rules.begin(), e.rules.end(), rule.id) != e.rules.end();
    });
    CHECK(covered);
  }
}

TEST_CASE("conjectural entries are reported on their own") {
  const auto& r = shipped();
  CHECK(r.conjectural.size() == 2);
  for (const auto& e : r.conjectural)
    CHECK((e.verdict == EntryVerdict::ConjecturalPass || e.verdict == EntryVerdict::ConjecturalFail));
  for (const auto& e : r.entries) CHECK(e.verdict != EntryVerdict::ConjecturalPass);
}

TEST_CASE("a failing conjectural entry does not fail the run") {
  CatalogEntry e;
  e.id = "X";
  e.conjectural = true;
  e.witnesses = {{"A", MonomialOperator::shift_by(Space::Unilateral, 1)}};
  e.conclusions = {fact_check("normal(A)")};
  auto r = run_catalog({e});
  CHECK(r.count(EntryVerdict::ConjecturalFail) == 1);
  CHECK_FALSE(r.failed());
  e.conjectural = false;
  CHECK(run_catalog({e}).failed());
}

TEST_CASE("empty catalog") {
  auto r = run_catalog({});
  CHECK(r.entries.empty());
  CHECK_FALSE(r.failed());
  CHECK(r.json().find("\"entries\": []") != std::string::npos);
}

TEST_CASE("report ordering is by id") {
  const auto& r = shipped();
  CHECK(std::is_sorted(r.entries.begin(), r.entries.end(),
                       [](const EntryResult& a, const EntryResult& b) { return a.id < b.id; }));
}

TEST_CASE("json is byte-identical across runs with one seed") {
  CHECK(run_catalog(catalog(7), {.seed = 7}).json() == run_catalog(catalog(7), {.seed = 7}).json());
}

TEST_CASE("soundness section") {
  CatalogOptions o;
  o.soundness_samples = 10;
  auto r = run_catalog({}, o);
  std::size_t non_axiom = 0;
  for (const auto& rule : rulebook()) non_axiom += rule.status != RuleStatus::Axiom;
  CHECK(r.soundness.size() == non_axiom);
  CHECK_FALSE(r.failed());
  CHECK(r.json().find("\"soundness\"") != std::string::npos);
}
