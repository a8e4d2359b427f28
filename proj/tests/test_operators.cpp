#include <doctest.h>

#include <cmath>

#include "opcalc/operator_model.hpp"

using namespace opcalc;

namespace {

const Space U = Space::Unilateral;
const Space Z = Space::Bilateral;

GrowthSymbol sym(std::string_view text, Space space = U) { return parse_symbol(text, space); }

MonomialOperator example_a() { return MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,1)")); }
MonomialOperator example_b() { return MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,-1)")); }

Rational pow2(std::int64_t n) { return rational_pow(Rational(2), n); }

}  // namespace

TEST_CASE("domain inclusion") {
  auto one_plus = sym("coeff(1,0,1) * qpow(0,1,1)");
  std::vector<GrowthSymbol> l2;
  std::vector<GrowthSymbol> d{one_plus};
  CHECK(domain_leq(d, l2).holds);
  auto v = domain_leq(l2, d);
  REQUIRE_FALSE(v.holds);
  // The textbook vector x_n = 1/(1+n) is in ℓ² but (1+n²)x_n is not: partial sums.
  double s_x = 0, s_ax = 0;
  for (int n = 0; n < 100000; ++n) {
    double x = 1.0 / (1 + n);
    s_x += x * x;
    s_ax += std::pow((1.0 + double(n) * n) * x, 2);
  }
  CHECK(s_x < 1.7);
  CHECK(s_ax > 1e10);
  // The returned witness: x_{n_k} = 1/k has Σ|x|² < π²/6 while |a_{n_k} x_{n_k}| ≥ 1.
  auto entries = v.witness->log_entries();
  REQUIRE(entries.size() == kWitnessLength);
  for (const auto& [n, lx] : entries) CHECK(std::log(1.0L + (long double)n * n) + lx >= -1e-12L);
  std::vector<GrowthSymbol> cube{sym("coeff(1,0,1) * pow(1,3)")}, lin{sym("coeff(1,0,1) * pow(1,1)")};
  CHECK(domain_leq(cube, lin).holds);
}

TEST_CASE("adjoint") {
  CHECK(adjoint(example_a()) == example_a());
  auto s = MonomialOperator::shift_by(U, 1);
  CHECK(adjoint(s) == MonomialOperator::shift_by(U, -1));
  // Bilateral diag(2^n)·S: compare ⟨T e_i, e_j⟩ with conj ⟨T* e_j, e_i⟩ from the closed form 2^n.
  auto t = MonomialOperator::make(sym("coeff(1,0,1) * exp(2)", Z), 1);
  auto ts = adjoint(t);
  for (std::int64_t i = -16; i <= 16; ++i)
    for (std::int64_t j = -16; j <= 16; ++j) {
      RadicalComplex expected = (j == i + 1) ? RadicalComplex(pow2(j)) : RadicalComplex();
      CHECK(t.entry(j, i) == expected);
      CHECK(ts.entry(i, j) == expected.conj());
    }
  CHECK(ts == MonomialOperator::make(sym("coeff(2,0,1) * exp(2)", Z), -1));
}

TEST_CASE("composition") {
  auto ab = compose(example_a(), example_b());
  auto ba = compose(example_b(), example_a());
  auto id = MonomialOperator::identity(U);
  CHECK(ab == id);
  CHECK(compare(ab, id).verdict == Verdict::Equal);
  CHECK(compare(ba, ab).verdict == Verdict::ProperSubset);
  CHECK(ba.constraints().size() == 1);
  // S·diag(b) against diag(σb)·S, matrix elements at N = 8 from the closed form b_n = n+1.
  auto b = MonomialOperator::diagonal(sym("coeff(1,0,1) * pow(1,1)"));
  auto sb = compose(MonomialOperator::shift_by(U, 1), b);
  for (std::int64_t i = 0; i < 8; ++i)
    for (std::int64_t j = 0; j < 8; ++j) {
      RadicalComplex expected = j == i + 1 ? RadicalComplex(i + 1) : RadicalComplex();
      CHECK(sb.entry(j, i) == expected);
    }
  CHECK(sb == MonomialOperator::make(shift(sym("coeff(1,0,1) * pow(1,1)"), 1), 1));
}

TEST_CASE("closure") {
  auto ba = compose(example_b(), example_a());
  CHECK(closure(ba) == MonomialOperator::identity(U));
  CHECK(closure(example_a()) == example_a());
  // diag(n+1) restricted to D((n+1)²): x_n = (n+1)^{-2} is in the maximal domain but
  // not in the restricted one; truncations converge to it in graph norm.
  auto lin = sym("coeff(1,0,1) * pow(1,1)");
  std::vector<GrowthSymbol> sq{sym("coeff(1,0,1) * pow(1,2)")};
  auto t = restrict_to(MonomialOperator::diagonal(lin), sq);
  CHECK_FALSE(is_closed(t));
  CHECK(closure(t) == MonomialOperator::diagonal(lin));
  auto graph_tail = [](std::int64_t n_cut) {
    double s = 0;
    for (std::int64_t n = n_cut; n < 2000000; ++n) {
      double x = 1.0 / double((n + 1) * (n + 1));
      double tx = double(n + 1) * x;
      s += x * x + tx * tx;
    }
    return std::sqrt(s);
  };
  double prev = graph_tail(10);
  for (std::int64_t n_cut : {100, 1000, 10000}) {
    double cur = graph_tail(n_cut);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(prev < 0.011);
  // Each truncation is finitely supported, hence in the restricted domain; the limit is not.
  double s_restricted = 0;
  for (std::int64_t n = 0; n < 1000000; ++n) {
    double x = 1.0 / double((n + 1) * (n + 1));
    s_restricted += std::pow(double((n + 1) * (n + 1)) * x, 2);
  }
  CHECK(s_restricted > 1e5);
}

TEST_CASE("comparison verdicts") {
  auto n = MonomialOperator::diagonal(sym("coeff(1,0,1) * pow(0,1) @ {0: coeff(0,0,1)}"));
  auto n2 = MonomialOperator::diagonal(sym("coeff(1,0,1) * pow(0,2) @ {0: coeff(0,0,1)}"));
  CHECK(compare(n, n2).verdict == Verdict::Incomparable);
  auto v = compare(compose(example_b(), example_a()), MonomialOperator::identity(U));
  CHECK(v.verdict == Verdict::ProperSubset);
  REQUIRE(v.domain_witness);
  CHECK(compare(MonomialOperator::identity(U), compose(example_b(), example_a())).verdict == Verdict::ProperSuperset);
}

TEST_CASE("properties") {
  auto p = properties(example_a());
  CHECK(p.selfadjoint);
  CHECK(p.normal);
  CHECK_FALSE(p.bounded);
  CHECK(p.invertible_bounded);
  auto ab = properties(compose(example_a(), example_b()));
  CHECK(ab.selfadjoint);
  CHECK(ab.unitary);
  auto ba = properties(compose(example_b(), example_a()));
  CHECK_FALSE(ba.closed);
  CHECK(ba.symmetric);
  CHECK_FALSE(ba.selfadjoint);
  auto t = MonomialOperator::make(sym("coeff(1,0,1) * per(2; 1, 2)", Z), 1);
  CHECK_FALSE(properties(t).normal);
  CHECK(properties(MonomialOperator::make(sym("coeff(0,1,1)", Z), 1)).unitary);
  auto s = properties(MonomialOperator::shift_by(U, 1));
  CHECK_FALSE(s.unitary);
  CHECK(s.quasinormal);
  CHECK_FALSE(s.normal);
  CHECK(s.kernel_dimension == 0u);
  CHECK(s.cokernel_dimension == 1u);
  CHECK(properties(MonomialOperator::shift_by(U, -2)).kernel_dimension == 2u);
  CHECK_FALSE(properties(MonomialOperator::diagonal(sym("coeff(1,0,1) * per(2; 1, 0)"))).kernel_dimension.has_value());
}

TEST_CASE("polar decomposition") {
  auto a = MonomialOperator::diagonal(sym("coeff(3,4,1) * pow(1,1)"));
  auto pa = polar(a);
  CHECK(pa.modulus == MonomialOperator::diagonal(sym("coeff(5,0,1) * pow(1,1)")));
  CHECK(pa.partial_isometry == MonomialOperator::diagonal(sym("coeff(3/5,4/5,1)")));
  auto ps = polar(MonomialOperator::shift_by(U, 1));
  CHECK(ps.partial_isometry == MonomialOperator::shift_by(U, 1));
  CHECK(ps.modulus == MonomialOperator::identity(U));
  auto t = MonomialOperator::make(sym("coeff(1,0,1) * exp(2)", Z), 1);
  auto pt = polar(t);
  CHECK(pt.modulus == MonomialOperator::diagonal(sym("coeff(2,0,1) * exp(2)", Z)));
  CHECK(pt.partial_isometry == MonomialOperator::shift_by(Z, 1));
  CHECK(compare(compose(pt.partial_isometry, pt.modulus), t).verdict == Verdict::Equal);
}

TEST_CASE("relative boundedness") {
  auto lin = MonomialOperator::diagonal(sym("coeff(1,0,1) * pow(1,1)"));
  auto sq = MonomialOperator::diagonal(sym("coeff(1,0,1) * pow(1,2)"));
  CHECK(rel_bounded(lin, sq).holds);
  CHECK(rel_bounded(example_b(), compose(example_a(), example_b())).holds);
  CHECK_FALSE(rel_bounded(MonomialOperator::diagonal(sym("coeff(1,0,1) * exp(2)")), sq).holds);
  CHECK_FALSE(rel_bounded(sq, lin).holds);
}
