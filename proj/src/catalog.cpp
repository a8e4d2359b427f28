#include "opcalc/catalog.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "opcalc/expr.hpp"
#include "opcalc/matrix_oracle.hpp"
#include "opcalc/random_model.hpp"
#include "opcalc/rulebook.hpp"
#include "opcalc/state_diagram.hpp"

namespace opcalc {

std::string_view to_string(EntryVerdict v) {
  switch (v) {
    case EntryVerdict::Pass: return "PASS";
    case EntryVerdict::Fail: return "FAIL";
    case EntryVerdict::Vacuous: return "VACUOUS";
    case EntryVerdict::ConjecturalPass: return "CONJECTURAL-PASS";
    case EntryVerdict::ConjecturalFail: return "CONJECTURAL-FAIL";
  }
  return "?";
}

// ---- checks -------------------------------------------------------------------

namespace {

MonomialOperator must(ModelEvaluator& eval, const Term& t) {
  auto op = eval.term(t);
  if (!op) throw ModelError(eval.reason());
  return *op;
}

}  // namespace

CatalogCheck fact_check(std::string_view text, bool expected) {
  Fact f = parse_fact(text);
  CatalogCheck c;
  c.name = f.str();
  c.expected = expected ? "true" : "false";
  c.opaque = f.predicate == Predicate::Permutes;
  c.run = [f](ModelEvaluator& eval, const CatalogEntry&, const CatalogOptions&) {
    Truth t = eval.fact(f);
    return CheckOutcome{std::string(to_string(t)), t == Truth::Unknown ? eval.reason() : std::string()};
  };
  return c;
}

CatalogCheck cmp_check(std::string_view lhs, std::string_view rhs, std::string_view expected) {
  Term a = parse_term(lhs), b = parse_term(rhs);
  CatalogCheck c;
  c.name = "cmp(" + a.str() + ", " + b.str() + ")";
  c.expected = expected;
  c.run = [a, b](ModelEvaluator& eval, const CatalogEntry&, const CatalogOptions&) {
    ComparisonVerdict v = compare(must(eval, a), must(eval, b));
    return CheckOutcome{std::string(to_string(v.verdict)), v.witness};
  };
  return c;
}

CatalogCheck state_check(std::string_view term, std::string_view expected) {
  Term t = parse_term(term);
  CatalogCheck c;
  c.name = "state(" + t.str() + ")";
  c.expected = expected;
  c.run = [t](ModelEvaluator& eval, const CatalogEntry&, const CatalogOptions&) {
    return CheckOutcome{state_classify(must(eval, t)).str(), {}};
  };
  return c;
}

CatalogCheck derive_check(std::string_view text) {
  Fact goal = parse_fact(text);
  CatalogCheck c;
  c.name = "derive " + goal.str();
  c.expected = "derived";
  c.run = [goal](ModelEvaluator&, const CatalogEntry& e, const CatalogOptions& o) {
    InferenceOptions io;
    io.conjectural = o.conjectural;
    auto result = infer(e.assumptions, rulebook(), io);
    auto i = result.find(goal);
    if (!i) return CheckOutcome{"not derived", {}};
    return CheckOutcome{"derived", "by " + result.derivation(*i).rule};
  };
  return c;
}

CatalogCheck derived_facts_check() {
  CatalogCheck c;
  c.name = "derived facts hold";
  c.expected = "0 false";
  c.run = [](ModelEvaluator&, const CatalogEntry& e, const CatalogOptions& o) {
    InferenceOptions io;
    io.conjectural = o.conjectural;
    SoundnessReport r = model_check_soundness(e.assumptions, rulebook(), e.witnesses, io);
    if (r.vacuous()) return CheckOutcome{"vacuous", *r.failing_premise};
    std::ostringstream detail;
    detail << r.checks.size() << " derived, " << r.unknown << " not evaluable";
    if (r.conjectural_failures) detail << ", " << r.conjectural_failures << " false via conjectural rules";
    for (const auto& fc : r.checks)
      if (fc.truth == Truth::False && !fc.conjectural) {
        detail << "; first: " << fc.fact << " by " << fc.rule;
        break;
      }
    return CheckOutcome{std::to_string(r.hard_failures) + " false", detail.str()};
  };
  return c;
}

namespace {

// The model truncation at N = 32 agrees with the symbolic normality verdict.
CatalogCheck truncation_normality_check(std::string_view term, bool expected) {
  Term t = parse_term(term);
  CatalogCheck c;
  c.name = "N=32 normality residual of " + t.str();
  c.expected = expected ? "small" : "large";
  c.run = [t](ModelEvaluator& eval, const CatalogEntry&, const CatalogOptions&) {
    Residuals r = residuals(must(eval, t), 32);
    std::ostringstream detail;
    detail.precision(6);
    detail << "||T*T - TT*|| = " << r.normality << ", scale " << r.scale;
    return CheckOutcome{within_tolerance(r.normality, r.scale) ? "small" : "large", detail.str()};
  };
  return c;
}

CatalogCheck iff_check(std::string_view lhs, std::string_view rhs) {
  Fact a = parse_fact(lhs), b = parse_fact(rhs);
  CatalogCheck c;
  c.name = a.str() + " <=> " + b.str();
  c.expected = "true";
  c.run = [a, b](ModelEvaluator& eval, const CatalogEntry&, const CatalogOptions&) {
    Truth x = eval.fact(a), y = eval.fact(b);
    if (x == Truth::Unknown || y == Truth::Unknown) return CheckOutcome{"unknown", eval.reason()};
    return CheckOutcome{x == y ? "true" : "false", {}};
  };
  return c;
}

}  // namespace

CatalogEntry rule_entry(const Rule& rule, Space space, Instantiation witnesses, std::string note) {
  CatalogEntry e;
  e.id = (rule.id.rfind("R-", 0) == 0 ? rule.id.substr(2) : rule.id) + "-W";
  e.rules = {rule.id};
  e.space = space;
  e.witnesses = std::move(witnesses);
  e.assumptions = rule.premises;
  for (const auto& p : rule.premises) e.hypotheses.push_back(fact_check(p.str()));
  for (const auto& c : rule.conclusions) e.conclusions.push_back(fact_check(c.str()));
  e.conclusions.push_back(derived_facts_check());
  e.note = std::move(note);
  e.conjectural = rule.status == RuleStatus::Conjectural;
  return e;
}

// ---- the shipped catalog --------------------------------------------------------

namespace {

constexpr Space U = Space::Unilateral;
constexpr Space Z = Space::Bilateral;

MonomialOperator build(Space space, std::string_view text) {
  Environment env;
  env.space = space;
  return evaluate(*parse_expr(text, space), env);
}

const char* const kOnePlusSq = "diag(coeff(1,0,1) * qpow(0,1,1))";
const char* const kOnePlusSqInv = "diag(coeff(1,0,1) * qpow(0,1,-1))";
const char* const kLinear = "diag(coeff(1,0,1) * pow(1,1))";
const char* const kLinearInv = "diag(coeff(1,0,1) * pow(1,-1))";
const char* const kSquare = "diag(coeff(1,0,1) * pow(1,2))";
const char* const kAlt12 = "diag(coeff(1,0,1) * per(2; 1, 2))";

Instantiation ex1() { return {{"A", build(U, kOnePlusSq)}, {"B", build(U, kOnePlusSqInv)}}; }

Instantiation pair(Space space, std::string_view a, std::string_view b) {
  return {{"A", build(space, a)}, {"B", build(space, b)}};
}

// Hypotheses given as facts that must hold; they double as engine assumptions.
void assume(CatalogEntry& e, std::initializer_list<const char*> facts) {
  for (const char* f : facts) {
    e.hypotheses.push_back(fact_check(f));
    e.assumptions.push_back(parse_fact(f));
  }
}

CatalogEntry entry_ex1() {
  CatalogEntry e;
  e.id = "EX1";
  e.rules = {"R-ADJ-PROD", "R-LEM1"};
  e.witnesses = ex1();
  e.witnesses.emplace("I", MonomialOperator::identity(U));
  assume(e, {"selfadjoint(A)", "selfadjoint(B)", "bounded(B)", "densely_defined(A * B)"});
  e.conclusions = {
      cmp_check("A * B", "I", "equal"),
      cmp_check("B * A", "A * B", "proper-subset"),
      cmp_check("cl(B * A)", "I", "equal"),
      fact_check("normal(cl(B * A))"),
      fact_check("closed(B * A)", false),
      cmp_check("adj(A * B)", "B * A", "proper-superset"),
      derive_check("subset(adj(B) * adj(A), adj(A * B))"),
      derived_facts_check(),
  };
  e.note = "A = diag(1+n^2), B = its inverse; BA is I on D(A)";
  return e;
}

CatalogEntry entry_thm4() {
  CatalogEntry e;
  e.id = "THM4-W";
  e.rules = {"R-THM4"};
  e.witnesses = pair(U, kSquare, kSquare);
  assume(e, {"selfadjoint(A)", "selfadjoint(B)", "densely_defined(A * B)", "selfadjoint(A * B)"});
  e.conclusions = {
      fact_check("subset(B * A, A * B)"),
      derive_check("subset(B * A, A * B)"),
      cmp_check("B * A", "A * B", "equal"),
      derived_facts_check(),
  };
  e.note = "A = B = diag((n+1)^2)";
  return e;
}

CatalogEntry entry_thm5_2() {
  CatalogEntry e;
  e.id = "THM5-2-W";
  e.rules = {"R-THM5-2", "R-THM5-2r"};
  e.space = Z;
  e.witnesses = {{"A", build(Z, "shift(1)")}, {"B", build(Z, "diag(coeff(1,0,1) * exp(2))")}};
  assume(e, {"unitary(A)"});
  e.conclusions = {
      fact_check("normal(A * B)", false),
      fact_check("normal(B * A)", false),
      iff_check("normal(A * B)", "normal(B * A)"),
      truncation_normality_check("A * B", false),
      truncation_normality_check("B * A", false),
  };
  e.note = "bilateral shift and diag(2^n): neither product is normal";
  return e;
}

CatalogEntry entry_thm5_2_const() {
  CatalogEntry e;
  e.id = "THM5-2-W2";
  e.rules = {"R-THM5-2", "R-THM5-2r"};
  e.space = Z;
  e.witnesses = {{"A", build(Z, "shift(1)")}, {"B", build(Z, "diag(coeff(1,0,1) * per(2; 1, coeff(0,1,1)))")}};
  assume(e, {"unitary(A)", "normal(A * B)"});
  e.conclusions = {
      fact_check("normal(B * A)"),
      iff_check("normal(A * B)", "normal(B * A)"),
      truncation_normality_check("B * A", true),
      derive_check("normal(B * A)"),
      derived_facts_check(),
  };
  e.note = "constant modulus symbol: both products normal";
  return e;
}

CatalogEntry entry_nclose() {
  CatalogEntry e = rule_entry(find_rule("R-NCLOSE"), U,
                              pair(U, "diag(coeff(0,1,1) * pow(1,2))", kAlt12));
  e.id = "NCLOSE-W";
  e.conclusions.insert(e.conclusions.begin() + 1, fact_check("closed(B * A)"));
  e.note = "B = diag(1,2,1,2,...), A = diag(i(n+1)^2)";
  return e;
}

CatalogEntry entry_thm15() {
  CatalogEntry e;
  e.id = "THM15-W";
  e.rules = {"R-THM14", "R-THM15", "R-COR-PERM"};
  e.witnesses = pair(U, kSquare, kAlt12);
  assume(e, {"normal(A)", "normal(B)", "invertible_bounded(B)", "equal(A * B, B * A)"});
  e.conclusions = {
      fact_check("normal(A * B)"),
      fact_check("subset(adj(A) * B, B * adj(A))"),
      fact_check("subset(A * adj(B), adj(B) * A)"),
      fact_check("permutes(A, B)"),
      derive_check("normal(A * B)"),
      derive_check("permutes(A, B)"),
      derived_facts_check(),
  };
  e.note = "B has a bounded inverse, A does not; permutes is opaque to the model";
  return e;
}

CatalogEntry entry_shift_state() {
  CatalogEntry e;
  e.id = "SHIFT-STATE";
  e.witnesses = {{"S", MonomialOperator::shift_by(U, 1)}};
  assume(e, {"closed(S)", "injective(S)"});
  e.conclusions = {
      state_check("S", "III_1 I_3"),
      state_check("adj(S)", "I_3 III_1"),
      fact_check("closed_range(S)"),
      fact_check("dense_range(S)", false),
  };
  e.note = "unilateral shift";
  return e;
}

CatalogEntry entry_chain() {
  CatalogEntry e;
  e.id = "CHAIN-W";
  e.rules = {"R-LEM1", "R-LEM3-1"};
  e.witnesses = ex1();
  assume(e, {"densely_defined(A)", "closeable(A)", "densely_defined(B)", "closeable(B)", "densely_defined(A * B)",
             "densely_defined(B * A)", "densely_defined(adj(B) * adj(A))", "densely_defined(adj(A) * adj(B))"});
  for (auto [x, y] : {std::pair{"A", "B"}, std::pair{"B", "A"}}) {
    std::string xy = std::string(x) + " * " + y;
    std::string clxy = "cl(" + std::string(x) + ") * cl(" + y + ")";
    std::string top = "adj(adj(" + std::string(y) + ") * adj(" + x + "))";
    e.conclusions.push_back(fact_check("subset(" + clxy + ", cl(" + clxy + "))"));
    e.conclusions.push_back(fact_check("subset(cl(" + clxy + "), cl(" + xy + "))"));
    e.conclusions.push_back(fact_check("subset(cl(" + xy + "), " + top + ")"));
  }
  e.conclusions.push_back(derive_check("subset(cl(B * A), adj(adj(A) * adj(B)))"));
  e.conclusions.push_back(derived_facts_check());
  e.note = "invert-adjoint-close chain on the first example, both orders";
  return e;
}

CatalogEntry entry_vn(std::uint64_t seed) {
  ModelRng rng(seed);
  Space space = random_space(rng);
  CatalogEntry e = rule_entry(find_rule("R-COR1"), space, {{"A", closure(random_operator(rng, space))}});
  e.id = "VN-W";
  e.note = "closure of a seeded random monomial";
  return e;
}

CatalogEntry entry_prop4_shift() {
  CatalogEntry e = rule_entry(find_rule("R-PROP4"), U, {{"T", MonomialOperator::shift_by(U, 1)}});
  e.id = "PROP4-W";
  e.note = "unilateral shift: quasinormal, range not dense, so nothing is claimed";
  return e;
}

CatalogEntry entry_prop4_weighted() {
  CatalogEntry e = rule_entry(find_rule("R-PROP4"), Z,
                              {{"T", build(Z, "diag(coeff(2,0,1) * per(2; 1, coeff(0,1,1))).shift(1)")}});
  e.id = "PROP4-W2";
  e.note = "bilateral weighted shift with constant modulus";
  return e;
}

}  // namespace

std::vector<CatalogEntry> catalog(std::uint64_t seed) {
  std::vector<CatalogEntry> out = {entry_ex1(),     entry_thm4(),        entry_thm5_2(),   entry_thm5_2_const(),
                                   entry_nclose(),  entry_thm15(),       entry_shift_state(), entry_chain(),
                                   entry_vn(seed),  entry_prop4_shift(), entry_prop4_weighted()};
  auto add = [&](const char* rule, Space space, Instantiation w, std::string note) {
    out.push_back(rule_entry(find_rule(rule), space, std::move(w), std::move(note)));
  };
  const std::string sq_on_lin = std::string(kAlt12) + " on dom(coeff(1,0,1) * pow(1,1))";
  const std::string alt_on_sq = std::string(kAlt12) + " on dom(coeff(1,0,1) * pow(1,2))";

  add("R-LEM1", U, ex1(), "first example");
  add("R-THM1", U, ex1(), "first example");
  add("R-THM1-2", U, pair(U, kLinear, kLinear), "A = B = diag(n+1)");
  add("R-COR2", U, pair(U, kLinear, kLinear), "A = B = diag(n+1)");
  add("R-LEM2", U, pair(U, "diag(coeff(1,0,1) * pow(1,1)).shift(1)", kAlt12), "weighted shift against diag(1,2,...)");
  add("R-THM3", U, pair(U, kLinearInv, kLinear), "AB = I on D(B), BA = I");
  add("R-THM5a", U, pair(U, "diag(coeff(1,0,1) * per(2; 1, -1))", "diag(coeff(0,1,1) * pow(1,2))"),
      "unitary diag(1,-1,...) and diag(i(n+1)^2)");
  add("R-THM5b", U, pair(U, "diag(coeff(0,1,1) * pow(1,2))", "diag(coeff(1,0,1) * per(2; 1, -1))"),
      "roles of the first case swapped");
  add("R-BINV-NORM", U, pair(U, kSquare, kAlt12), "B bounded with bounded inverse");
  add("R-PRO-AINV", U, pair(U, kAlt12, kSquare), "A bounded with bounded inverse");
  add("R-THM7", U, pair(U, kLinear, kLinearInv), "AB = I");
  add("R-COR3", U, pair(U, kLinear, kLinearInv), "AB = I; the intertwiner has depth 4");
  add("R-PROP2-1", U, pair(U, kLinear, alt_on_sq), "B bounded, restricted to dom((n+1)^2)");
  add("R-PROP2-2", U, pair(U, kSquare, sq_on_lin), "B bounded below, restricted to dom(n+1)");
  add("R-LEM3-1", U, ex1(), "first example");
  add("R-LEM3-2", U, pair(U, kLinear, alt_on_sq), "B bounded, restricted to dom((n+1)^2)");
  add("R-LEM3-3", U, pair(U, kLinear, kLinear), "A = B = diag(n+1)");
  add("R-LEM3-4", U, ex1(), "first example");
  add("R-LEM4", U, pair(U, kLinear, kLinear), "A = B = diag(n+1)");
  add("R-PROP5", U, pair(U, kLinear, "diag(coeff(0,1,1) * pow(2,1))"), "diag(n+1) and diag(i(n+2))");
  add("R-PROP3-1", U, pair(U, kLinear, kLinear), "A = B = diag(n+1)");
  add("R-PROP3-2", U, pair(U, kSquare, kLinearInv), "B^-1 = diag(n+1) is A-bounded");
  return out;
}

// ---- running ------------------------------------------------------------------

namespace {

CheckResult run_check(const CatalogCheck& c, ModelEvaluator& eval, const CatalogEntry& e, const CatalogOptions& o) {
  CheckResult r{c.name, c.expected, {}, {}};
  try {
    CheckOutcome out = c.run(eval, e, o);
    r.got = std::move(out.got);
    r.detail = std::move(out.detail);
  } catch (const ModelError& err) {
    r.got = "error";
    r.detail = err.what();
  }
  if (c.opaque) {
    r.detail = "opaque to the model" + (r.detail.empty() ? std::string() : ": " + r.detail);
    r.got = "opaque";
  }
  return r;
}

EntryResult run_entry(const CatalogEntry& e, const CatalogOptions& o) {
  EntryResult r;
  r.id = e.id;
  r.rules = e.rules;
  r.note = e.note;
  for (const auto& [name, op] : e.witnesses) r.witnesses.emplace_back(name, op.str());
  ModelEvaluator eval(e.witnesses);
  for (const auto& h : e.hypotheses) {
    CheckResult c = run_check(h, eval, e, o);
    bool ok = c.got == c.expected;
    r.checks.push_back(std::move(c));
    if (!ok) {
      r.failing_hypothesis = h.name + " is " + r.checks.back().got;
      r.verdict = EntryVerdict::Vacuous;
      return r;
    }
  }
  bool pass = true;
  for (const auto& c : e.conclusions) {
    CheckResult res = run_check(c, eval, e, o);
    if (!c.opaque && res.got != res.expected) pass = false;
    r.checks.push_back(std::move(res));
  }
  if (e.conjectural)
    r.verdict = pass ? EntryVerdict::ConjecturalPass : EntryVerdict::ConjecturalFail;
  else
    r.verdict = pass ? EntryVerdict::Pass : EntryVerdict::Fail;
  return r;
}

// FNV-1a, so that per-rule seeds do not depend on the standard library.
std::uint64_t mix(std::uint64_t seed, std::string_view id) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

nlohmann::ordered_json entry_json(const EntryResult& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["verdict"] = to_string(r.verdict);
  j["rules"] = r.rules;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const auto& [name, op] : r.witnesses) w[name] = op;
  j["witnesses"] = w;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["expected"] = c.expected;
    cj["got"] = c.got;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["checks"] = checks;
  if (r.failing_hypothesis) j["failing_hypothesis"] = *r.failing_hypothesis;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace

CatalogReport run_catalog(const std::vector<CatalogEntry>& entries, const CatalogOptions& options) {
  CatalogReport report;
  report.seed = options.seed;
  for (const auto& e : entries) {
    EntryResult r = run_entry(e, options);
    (e.conjectural ? report.conjectural : report.entries).push_back(std::move(r));
  }
  auto by_id = [](const EntryResult& a, const EntryResult& b) { return a.id < b.id; };
  std::stable_sort(report.entries.begin(), report.entries.end(), by_id);
  std::stable_sort(report.conjectural.begin(), report.conjectural.end(), by_id);
  if (options.soundness_samples > 0)
    for (const auto& rule : rulebook())
      if (rule.status != RuleStatus::Axiom)
        report.soundness.push_back(sample_rule(rule, mix(options.seed, rule.id), options.soundness_samples));
  return report;
}

std::size_t CatalogReport::count(EntryVerdict v) const {
  auto pred = [v](const EntryResult& r) { return r.verdict == v; };
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), pred) +
                                  std::count_if(conjectural.begin(), conjectural.end(), pred));
}

bool CatalogReport::failed() const {
  if (count(EntryVerdict::Fail) > 0) return true;
  return std::any_of(soundness.begin(), soundness.end(),
                     [](const RuleSample& s) { return s.status == RuleStatus::Sound && s.violations > 0; });
}

std::string CatalogReport::json() const {
  nlohmann::ordered_json j;
  j["rulebook_version"] = kRulebookVersion;
  j["seed"] = seed;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& r : entries) list.push_back(entry_json(r));
  j["entries"] = list;
  nlohmann::ordered_json conj = nlohmann::ordered_json::array();
  for (const auto& r : conjectural) conj.push_back(entry_json(r));
  j["conjectural"] = conj;
  if (!soundness.empty()) {
    nlohmann::ordered_json s = nlohmann::ordered_json::array();
    for (const auto& rs : soundness) {
      nlohmann::ordered_json sj;
      sj["rule"] = rs.rule;
      sj["status"] = to_string(rs.status);
      sj["instances"] = rs.instances;
      sj["nonvacuous"] = rs.nonvacuous;
      sj["unevaluated"] = rs.unevaluated;
      sj["violations"] = rs.violations;
      if (!rs.counterexamples.empty()) sj["counterexamples"] = rs.counterexamples;
      s.push_back(std::move(sj));
    }
    j["soundness"] = s;
  }
  nlohmann::ordered_json summary;
  summary["total"] = entries.size() + conjectural.size();
  for (EntryVerdict v : {EntryVerdict::Pass, EntryVerdict::Fail, EntryVerdict::Vacuous, EntryVerdict::ConjecturalPass,
                         EntryVerdict::ConjecturalFail})
    summary[std::string(to_string(v))] = count(v);
  summary["failed"] = failed();
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

std::string CatalogReport::text() const {
  std::ostringstream out;
  auto section = [&](const std::vector<EntryResult>& list) {
    for (const auto& r : list) {
      out << r.id << "  " << to_string(r.verdict);
      if (!r.rules.empty()) {
        out << "  [";
        for (std::size_t i = 0; i < r.rules.size(); ++i) out << (i ? ", " : "") << r.rules[i];
        out << "]";
      }
      out << "\n";
      if (r.failing_hypothesis) out << "    failing hypothesis: " << *r.failing_hypothesis << "\n";
      for (const auto& c : r.checks) {
        if (c.got == c.expected || c.got == "opaque") continue;
        if (r.failing_hypothesis && c.name + " is " + c.got == *r.failing_hypothesis) continue;
        out << "    " << c.name << ": expected " << c.expected << ", got " << c.got;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
      }
    }
  };
  section(entries);
  if (!conjectural.empty()) {
    out << "-- conjectural --\n";
    section(conjectural);
  }
  if (!soundness.empty()) {
    out << "-- rule sampling --\n";
    for (const auto& s : soundness) {
      out << s.rule << "  " << to_string(s.status) << "  " << s.nonvacuous << "/" << s.instances << " non-vacuous, "
          << s.violations << " violations\n";
      for (const auto& c : s.counterexamples) out << "    " << c << "\n";
    }
  }
  out << "summary: " << count(EntryVerdict::Pass) << " PASS, " << count(EntryVerdict::Fail) << " FAIL, "
      << count(EntryVerdict::Vacuous) << " VACUOUS, " << count(EntryVerdict::ConjecturalPass) << " CONJECTURAL-PASS, "
      << count(EntryVerdict::ConjecturalFail) << " CONJECTURAL-FAIL\n";
  return out.str();
}

}  // namespace opcalc
