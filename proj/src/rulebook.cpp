#include "opcalc/rulebook.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace opcalc {

namespace {

constexpr RuleStatus kSound = RuleStatus::Sound;
constexpr RuleStatus kAxiom = RuleStatus::Axiom;
constexpr RuleStatus kConj = RuleStatus::Conjectural;

void add_structural(std::vector<Rule>& r) {
  auto s = [&](const char* id, const char* cite, const char* pre, const char* post) {
    r.push_back(make_rule(id, kAxiom, cite, pre, post));
  };
  s("S-ADJ-CLOSED", "adjoints are closed", "known(adj(T)); densely_defined(T)", "closed(adj(T))");
  s("S-ADJ-DD", "T closeable iff D(T*) dense", "known(adj(T)); densely_defined(T); closeable(T)",
    "densely_defined(adj(T))");
  s("S-CL-CLOSED", "the closure is a closed extension", "known(cl(T)); closeable(T)",
    "closed(cl(T)); subset(T, cl(T))");
  s("S-CL-DD", "the closure extends T", "known(cl(T)); closeable(T); densely_defined(T)", "densely_defined(cl(T))");
  s("S-CLOSED-CL", "a closed operator is its own closure", "closed(T)", "equal(cl(T), T)");
  s("S-BIADJ", "T** is the closure of T", "known(adj(adj(T))); densely_defined(T); closeable(T)",
    "equal(adj(adj(T)), cl(T))");
  s("S-ADJ-ANTI", "S ⊂ T gives T* ⊂ S*", "subset(S, T); densely_defined(S)", "subset(adj(T), adj(S))");
  s("S-DD-EXT", "extensions of densely defined operators are densely defined", "subset(S, T); densely_defined(S)",
    "densely_defined(T)");
  s("S-CLOSEABLE-SUB", "restrictions of closeable operators are closeable", "subset(S, T); closeable(T)",
    "closeable(S)");
  s("S-CL-MIN", "the closure is the smallest closed extension", "closed(T); subset(S, T)", "subset(cl(S), T)");
  s("S-CL-MONO", "closure is monotone", "subset(S, T); closeable(T)", "subset(cl(S), cl(T))");
  s("S-SUB-TRANS", "inclusion is transitive", "subset(S, T); subset(T, X)", "subset(S, X)");
  s("S-EQ-SUB", "equality is inclusion both ways", "equal(S, T)", "subset(S, T); subset(T, S)");
  s("S-SUB-EQ", "inclusion both ways is equality", "subset(S, T); subset(T, S)", "equal(S, T)");
  s("S-EQ-CONG-ADJ", "equal operators have equal adjoints", "equal(S, T); known(adj(S))", "equal(adj(S), adj(T))");
  s("S-EQ-CONG-CL", "equal operators have equal closures", "equal(S, T); known(cl(S))", "equal(cl(S), cl(T))");
  for (const auto& p : predicates()) {
    if (p.arity != 1 || p.predicate == Predicate::Known) continue;
    std::string name = p.name;
    std::string id = "S-EQ-";
    for (char c : name) id += c == '_' ? '-' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    r.push_back(make_rule(id, kAxiom, "equal operators share " + name, "equal(S, T); " + name + "(S)",
                          name + "(T)"));
  }
  s("S-SA", "self-adjoint means T = T*", "selfadjoint(T)",
    "equal(adj(T), T); closed(T); densely_defined(T); symmetric(T); normal(T)");
  s("S-SA-DEF", "self-adjoint means T = T*", "densely_defined(T); equal(adj(T), T)", "selfadjoint(T)");
  s("S-SYM-DEF", "symmetric means T ⊂ T*", "densely_defined(T); subset(T, adj(T))", "symmetric(T)");
  s("S-SYM", "symmetric means T ⊂ T*", "symmetric(T)", "subset(T, adj(T)); densely_defined(T); closeable(T)");
  s("S-NORMAL", "normal means closed with T*T = TT*", "normal(T)",
    "closed(T); densely_defined(T); quasinormal(T); equal(adj(T) * T, T * adj(T))");
  s("S-UNITARY", "unitary operators are bounded, normal and invertible", "unitary(T)",
    "normal(T); bounded(T); invertible_bounded(T)");
  s("S-INVB", "a bounded inverse forces injectivity and full range", "invertible_bounded(T)",
    "injective(T); dense_range(T); closed(T); closed_range(T); finite_kernel(T); finite_codim_range(T)");
  s("S-INJ", "a trivial kernel is finite dimensional", "injective(T)", "finite_kernel(T)");
  s("S-BOUNDED", "bounded means everywhere defined and bounded", "bounded(T)", "closed(T); densely_defined(T)");
  s("S-CLOSED", "closed operators are closeable", "closed(T)", "closeable(T)");
  s("S-COMMUTE-DEF", "A commutes with B when AB ⊂ BA", "commutes_ext(A, B)", "subset(A * B, B * A)");
  s("S-COMMUTE-INTRO", "A commutes with B when AB ⊂ BA", "subset(A * B, B * A)", "commutes_ext(A, B)");
  s("S-INTERTWINE-DEF", "K intertwines N and M when KN ⊂ MK", "intertwines(K, N, M)", "subset(K * N, M * K)");
  s("S-INTERTWINE-INTRO", "K intertwines N and M when KN ⊂ MK", "subset(K * N, M * K)", "intertwines(K, N, M)");
  s("S-PERM-SYM", "permuting is symmetric", "permutes(A, B)", "permutes(B, A)");
  s("S-FCR", "closed range with finite dimensional cokernel", "closed(S); closed_range(S); finite_kernel(adj(S))",
    "finite_codim_range(S)");
}

void add_products(std::vector<Rule>& r) {
  r.push_back(make_rule("R-ADJ-PROD", kAxiom, "adjoint of a product: B*A* ⊂ (AB)*",
                        "densely_defined(A); densely_defined(B); densely_defined(A * B)",
                        "subset(adj(B) * adj(A), adj(A * B))"));
  const char* lemma1_premises =
      "densely_defined(A); closeable(A); densely_defined(B); closeable(B); densely_defined(A * B); "
      "densely_defined(adj(B) * adj(A))";
  r.push_back(make_rule("R-LEM1", kSound, "sandwich: AB and cl(A)cl(B) both lie between AB and (B*A*)*",
                        lemma1_premises,
                        "subset(A * B, cl(A * B)); subset(cl(A * B), adj(adj(B) * adj(A))); "
                        "subset(A * B, cl(A) * cl(B)); subset(cl(A) * cl(B), adj(adj(B) * adj(A)))"));
  r.push_back(make_rule("R-THM1", kSound, "(B*A*)* = A**B** makes cl(A)cl(B) closed with adjoint cl(B*A*)",
                        std::string(lemma1_premises) + "; equal(adj(adj(B) * adj(A)), adj(adj(A)) * adj(adj(B)))",
                        "closed(cl(A) * cl(B)); equal(adj(cl(A) * cl(B)), cl(adj(B) * adj(A)))"));
  r.push_back(make_rule("R-THM1-2", kSound, "(B*A*)* = AB with B*A* closed gives (AB)* = B*A*",
                        "densely_defined(A * B); densely_defined(adj(B) * adj(A)); closed(adj(B) * adj(A)); "
                        "equal(adj(adj(B) * adj(A)), A * B)",
                        "equal(adj(A * B), adj(B) * adj(A))"));
  r.push_back(make_rule("R-THM2", kAxiom, "(TS)* = S*T* for closed S whose range has finite codimension",
                        "densely_defined(T); densely_defined(S); closed(S); finite_codim_range(S); "
                        "densely_defined(T * S)",
                        "equal(adj(T * S), adj(S) * adj(T))"));
  r.push_back(make_rule("R-COR2", kSound, "(AB)* = B*A* when B*A* is closed, R(A*) closed and N(A) finite dimensional",
                        "closed(A); closed(B); densely_defined(A); densely_defined(B); densely_defined(A * B); "
                        "densely_defined(adj(B) * adj(A)); closed(adj(B) * adj(A)); closed_range(adj(A)); "
                        "finite_kernel(A)",
                        "equal(adj(A * B), adj(B) * adj(A))"));
  r.push_back(make_rule("R-LEM2", kSound, "(AB)* = B*A* when B is closed with bounded everywhere defined inverse",
                        "densely_defined(A); closed(B); invertible_bounded(B)", "equal(adj(A * B), adj(B) * adj(A))"));
  r.push_back(make_rule("R-COR1", kSound, "closed A with dense domain: A*A, AA* self-adjoint",
                        "densely_defined(A); closed(A)", "selfadjoint(A * adj(A)); selfadjoint(adj(A) * A)"));
}

void add_commutation(std::vector<Rule>& r) {
  r.push_back(make_rule("R-THM3", kSound, "self-adjoint A, B with AB ⊂ BA: AB symmetric, cl(AB) ⊂ cl(BA) ⊂ (AB)*",
                        "selfadjoint(A); selfadjoint(B); densely_defined(A * B); commutes_ext(A, B)",
                        "symmetric(A * B); subset(cl(A * B), cl(B * A)); subset(cl(B * A), adj(A * B))"));
  r.push_back(make_rule("R-THM4", kSound, "self-adjoint A, B with AB self-adjoint: BA ⊂ AB",
                        "selfadjoint(A); selfadjoint(B); densely_defined(A * B); selfadjoint(A * B)",
                        "subset(B * A, A * B)"));
  r.push_back(make_rule("R-THM5a", kSound, "normal B commuting with unitary A: AB normal",
                        "normal(A); normal(B); unitary(A); commutes_ext(A, B)", "normal(A * B)"));
  r.push_back(make_rule("R-THM5b", kSound, "normal A commuting with unitary B: AB normal",
                        "normal(A); normal(B); unitary(B); commutes_ext(B, A)", "normal(A * B)"));
  r.push_back(make_rule("R-THM5-2", kSound, "for unitary A, AB normal iff BA normal", "unitary(A); normal(A * B)",
                        "normal(B * A)"));
  r.push_back(make_rule("R-THM5-2r", kSound, "for unitary A, AB normal iff BA normal", "unitary(A); normal(B * A)",
                        "normal(A * B)"));
  r.push_back(make_rule("R-NCLOSE", kSound, "bounded normal B commuting with normal A: cl(BA) normal",
                        "bounded(B); normal(B); normal(A); commutes_ext(B, A)", "normal(cl(B * A))"));
  r.push_back(make_rule("R-DNVN", kAxiom, "self-adjoint T ⊂ T1T2 with T1, T2 self-adjoint: T = T1T2",
                        "selfadjoint(T1); selfadjoint(T2); selfadjoint(T); subset(T, T1 * T2)",
                        "equal(T, T1 * T2)"));
  r.push_back(make_rule("R-BINV-NORM", kSound, "bounded invertible normal B commuting with normal A: BA normal",
                        "bounded(B); invertible_bounded(B); normal(B); normal(A); commutes_ext(B, A)",
                        "normal(B * A)"));
  r.push_back(make_rule("R-PRO-AINV", kSound, "bounded invertible normal A commuting with normal B: BA normal",
                        "bounded(A); invertible_bounded(A); normal(A); normal(B); commutes_ext(A, B)",
                        "normal(B * A)"));
  r.push_back(make_rule("R-EXMAD", kAxiom, "normal A, bounded normal B, BA = AB: BA and AB normal",
                        "normal(A); normal(B); bounded(B); equal(B * A, A * B)", "normal(B * A); normal(A * B)"));
  r.push_back(make_rule("R-THM7", kSound, "necessary direction: AB normal forces |B||A| ⊂ |A||B| and AB closed",
                        "normal(A); normal(B); dense_range(A); dense_range(B); normal(A * B)",
                        "closed(A * B); subset(abs(B) * abs(A), abs(A) * abs(B))"));
  r.push_back(make_rule("R-COR3", kSound, "U*V* intertwines T*T and TT* for T = |A||B| when AB is normal",
                        "normal(A); normal(B); dense_range(A); dense_range(B); normal(A * B)",
                        "intertwines(adj(phase(A)) * adj(phase(B)), adj(abs(A) * abs(B)) * (abs(A) * abs(B)), "
                        "(abs(A) * abs(B)) * adj(abs(A) * abs(B)))"));
  r.push_back(make_rule("R-FP", kAxiom, "bounded K with KN ⊂ MK for normal N, M: KN* ⊂ M*K",
                        "bounded(K); normal(N); normal(M); intertwines(K, N, M)",
                        "intertwines(K, adj(N), adj(M))"));
}

void add_closures(std::vector<Rule>& r) {
  r.push_back(make_rule("R-PROP2-1", kSound, "cl(B) bounded and A closed: cl(AB) ⊂ A cl(B)",
                        "bounded(cl(B)); closed(A); densely_defined(B); closeable(B); densely_defined(A * B)",
                        "subset(cl(A * B), A * cl(B))"));
  r.push_back(make_rule("R-PROP2-2", kSound, "cl(B⁻¹) bounded with the core condition: A cl(B) ⊂ cl(AB)",
                        "injective(B); bounded(cl(inv(B))); closeable(A); closeable(A * B); core_for(A, B)",
                        "subset(A * cl(B), cl(A * B))"));
  r.push_back(make_rule("R-PROP3-1", kConj, "B relatively AB-bounded: cl(AB) ⊂ cl(A)cl(B)",
                        "closeable(A); closeable(B); closeable(A * B); rel_bounded(B, A * B)",
                        "subset(cl(A * B), cl(A) * cl(B))"));
  r.push_back(make_rule("R-PROP3-2", kConj, "B⁻¹ relatively A-bounded: cl(A)cl(B) ⊂ cl(AB)",
                        "closeable(A); closeable(B); closeable(A * B); injective(B); closeable(inv(B)); "
                        "rel_bounded(inv(B), A)",
                        "subset(cl(A) * cl(B), cl(A * B))"));
  r.push_back(make_rule("R-THM10", kAxiom, "D(T) ⊂ D(B) with T closed and B closeable: B is T-bounded",
                        "closed(T); closeable(B); dom_subset(T, B)", "rel_bounded(B, T)"));
  r.push_back(make_rule("R-LEM3-1", kSound, "cl(AB) ⊂ cl(cl(A)cl(B))",
                        "densely_defined(A); closeable(A); densely_defined(B); closeable(B); closeable(A * B); "
                        "densely_defined(adj(B) * adj(A))",
                        "subset(cl(A * B), cl(cl(A) * cl(B)))"));
  r.push_back(make_rule("R-LEM3-2", kSound, "cl(B) bounded and A closed: cl(AB) ⊂ A cl(B)",
                        "bounded(cl(B)); closed(A); closeable(B); closeable(A * B)", "subset(cl(A * B), A * cl(B))"));
  r.push_back(make_rule("R-LEM3-3", kSound, "cl(AB) ⊂ cl(A)cl(B): cl(B) is cl(AB)-bounded and B is AB-bounded",
                        "closeable(A); closeable(B); closeable(A * B); subset(cl(A * B), cl(A) * cl(B))",
                        "rel_bounded(cl(B), cl(A * B)); rel_bounded(B, A * B)"));
  r.push_back(make_rule("R-LEM3-4", kSound, "cl(A)cl(B) ⊂ cl(AB): cl(A)cl(B) closeable with closure cl(AB)",
                        "closeable(A); closeable(B); closeable(A * B); subset(cl(A) * cl(B), cl(A * B))",
                        "closeable(cl(A) * cl(B)); equal(cl(cl(A) * cl(B)), cl(A * B))"));
  r.push_back(make_rule("R-LEM4", kSound, "cl(B) relatively cl(A)cl(B)-bounded: cl(A)cl(B) closed",
                        "closeable(A); closeable(B); closeable(A * B); rel_bounded(cl(B), cl(A) * cl(B))",
                        "closed(cl(A) * cl(B)); subset(cl(A * B), cl(A) * cl(B))"));
}

void add_normality(std::vector<Rule>& r) {
  r.push_back(make_rule("R-PROP4", kSound, "closed quasinormal T with dense range is normal",
                        "quasinormal(T); dense_range(T); closed(T)", "normal(T)"));
  r.push_back(make_rule("R-THM12", kAxiom, "normal A, B, AB with AB = BA: permutes(A, B)",
                        "normal(A); normal(B); normal(A * B); equal(A * B, B * A)", "permutes(A, B)"));
  r.push_back(make_rule("R-PROP5", kSound, "normal A, B with bounded inverses and BA = AB: BA and AB normal",
                        "normal(A); normal(B); invertible_bounded(A); invertible_bounded(B); equal(B * A, A * B)",
                        "normal(B * A); normal(A * B)"));
  r.push_back(make_rule("R-THM13", kAxiom, "normal invertible A, B with AB = BA: AB* = B*A and BA* = A*B",
                        "normal(A); normal(B); invertible_bounded(A); invertible_bounded(B); equal(A * B, B * A)",
                        "equal(A * adj(B), adj(B) * A); equal(B * adj(A), adj(A) * B)"));
  const char* one_invertible = "normal(A); normal(B); invertible_bounded(B); equal(A * B, B * A)";
  r.push_back(make_rule("R-THM14", kSound, "normal A, B, B boundedly invertible, AB = BA: AB* ⊂ B*A and A*B ⊂ BA*",
                        one_invertible, "subset(adj(A) * B, B * adj(A)); subset(A * adj(B), adj(B) * A)"));
  r.push_back(make_rule("R-THM15", kSound, "normal A, B, B boundedly invertible, AB = BA: AB normal", one_invertible,
                        "normal(A * B)"));
  r.push_back(make_rule("R-COR-PERM", kSound, "normal A, B, B boundedly invertible, AB = BA: permutes(A, B)",
                        one_invertible, "permutes(A, B)"));
}

std::vector<Rule> build() {
  std::vector<Rule> r;
  add_structural(r);
  add_products(r);
  add_commutation(r);
  add_closures(r);
  add_normality(r);
  return r;
}

}  // namespace

const std::vector<Rule>& rulebook() {
  static const std::vector<Rule> rules = build();
  return rules;
}

const Rule& find_rule(std::string_view id) {
  for (const auto& r : rulebook())
    if (r.id == id) return r;
  throw std::out_of_range("no rule " + std::string(id));
}

}  // namespace opcalc
