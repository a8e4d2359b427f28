#include "opcalc/suites.hpp"

#include <cmath>
#include <sstream>

#include "opcalc/expr.hpp"
#include "opcalc/matrix_oracle.hpp"
#include "opcalc/random_model.hpp"
#include "opcalc/state_diagram.hpp"

namespace opcalc {

void SuiteResult::fail(std::string what) {
  ++violations;
  if (failures.size() < 5) failures.push_back(std::move(what));
}

std::string SuiteResult::summary() const {
  std::ostringstream os;
  os << name << ": " << cases << " cases, " << violations << " violations";
  if (skipped) os << ", " << skipped << " skipped";
  return os.str();
}

namespace {

std::int64_t random_index(ModelRng& rng, Space space) {
  return space == Space::Unilateral ? rng.uniform(0, 100) : rng.uniform(-50, 50);
}

bool equal_ops(const MonomialOperator& s, const MonomialOperator& t) { return compare(s, t).verdict == Verdict::Equal; }

// log(1 + |v|) without overflow.
long double log1p_abs(const RadicalComplex& v) {
  if (v.is_zero()) return 0.0L;
  long double l = v.log_abs();
  return l > 0 ? l + std::log1p(std::exp(-l)) : std::log1p(std::exp(l));
}

}  // namespace

// ---- symbols ---------------------------------------------------------------------------

SuiteResult combine_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"symbol combinators agree pointwise"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    GrowthSymbol a = random_symbol(rng, space), b = random_symbol(rng, space);
    std::int64_t n = random_index(rng, space);
    std::int64_t j = rng.uniform(-5, 5);
    try {
      RadicalComplex an = a.at(n), bn = b.at(n);
      auto check = [&](const char* what, const RadicalComplex& got, const RadicalComplex& want) {
        if (!(got == want))
          r.fail(std::string(what) + " at " + std::to_string(n) + " of " + a.str() + ": " + got.str() + " vs " + want.str());
      };
      check("mul", mul(a, b).at(n), an * bn);
      check("conj", conj(a).at(n), an.conj());
      check("abs", abs(a).at(n), an.modulus());
      RadicalComplex shifted = (space == Space::Unilateral && n - j < 0) ? RadicalComplex() : a.at(n - j);
      check("shift", shift(a, j).at(n), shifted);
      if (zero_set(a).empty()) check("reciprocal", reciprocal(a).at(n), an.inverse());
    } catch (const ModelError&) {
      ++r.skipped;
    }
  }
  return r;
}

SuiteResult growth_preorder_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"growth comparison is a preorder"};
  ModelRng rng(seed);
  std::size_t chained = 0;
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    GrowthSymbol a = random_symbol(rng, space), b = random_symbol(rng, space), c = random_symbol(rng, space);
    if (!growth_leq(a, a).holds) r.fail("not reflexive at " + a.str());
    bool ab = growth_leq(a, b).holds, bc = growth_leq(b, c).holds;
    if (ab && bc) {
      ++chained;
      if (!growth_leq(a, c).holds) r.fail("not transitive: " + a.str() + " <= " + b.str() + " <= " + c.str());
    }
  }
  r.skipped = r.cases - chained;
  return r;
}

SuiteResult growth_witness_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"growth witnesses grow"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    GrowthSymbol a = random_symbol(rng, space), b = random_symbol(rng, space);
    auto v = growth_leq(a, b);
    if (v.holds) {
      ++r.skipped;
      continue;
    }
    if (!v.witness || v.witness->indices.size() != kWitnessLength) {
      r.fail("missing witness for " + a.str() + " vs " + b.str());
      continue;
    }
    for (std::size_t k = 0; k < v.witness->indices.size(); ++k) {
      std::int64_t n = v.witness->indices[k];
      RadicalComplex an = a.at(n);
      long double ratio = an.is_zero() ? -INFINITY : an.log_abs() - log1p_abs(b.at(n));
      if (ratio < std::log(static_cast<long double>(k + 1)) - 1e-12L) {
        r.fail("witness index " + std::to_string(n) + " too small for " + a.str() + " vs " + b.str());
        break;
      }
    }
  }
  return r;
}

SuiteResult symbol_roundtrip_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"symbol print/parse round trip"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    GrowthSymbol a = random_symbol(rng, space);
    GrowthSymbol back = parse_symbol(a.str(), space);
    std::int64_t lo = space == Space::Unilateral ? 0 : -50, hi = space == Space::Unilateral ? 100 : 50;
    for (std::int64_t n = lo; n <= hi; ++n)
      if (!(back.at(n) == a.at(n))) {
        r.fail("value at " + std::to_string(n) + " changed for " + a.str());
        break;
      }
    if (back.str() != a.str()) r.fail("printing not stable for " + a.str());
  }
  return r;
}

// ---- operators -------------------------------------------------------------------------

SuiteResult involution_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"T** = closure(T)"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    auto t = random_operator(rng);
    if (!equal_ops(adjoint(adjoint(t)), closure(t))) r.fail(t.str());
  }
  return r;
}

SuiteResult adjoint_product_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"B*A* ⊆ (AB)*"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    auto a = random_operator(rng, space), b = random_operator(rng, space);
    if (!is_restriction_of(compose(adjoint(b), adjoint(a)), adjoint(compose(a, b))))
      r.fail("A = " + a.str() + ", B = " + b.str());
  }
  return r;
}

SuiteResult lemma1_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"AB ⊆ cl(AB) ⊆ (B*A*)* and AB ⊆ cl(A)cl(B) ⊆ (B*A*)*"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    auto a = random_operator(rng, space), b = random_operator(rng, space);
    auto ab = compose(a, b);
    auto outer = adjoint(compose(adjoint(b), adjoint(a)));
    auto cl_ab = closure(ab);
    auto cl_prod = compose(closure(a), closure(b));
    const char* broken = nullptr;
    if (!is_restriction_of(ab, cl_ab))
      broken = "AB ⊆ cl(AB)";
    else if (!is_restriction_of(cl_ab, outer))
      broken = "cl(AB) ⊆ (B*A*)*";
    else if (!is_restriction_of(ab, cl_prod))
      broken = "AB ⊆ cl(A)cl(B)";
    else if (!is_restriction_of(cl_prod, outer))
      broken = "cl(A)cl(B) ⊆ (B*A*)*";
    if (broken) r.fail(std::string(broken) + " for A = " + a.str() + ", B = " + b.str());
  }
  return r;
}

SuiteResult von_neumann_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"A*A and AA* self-adjoint"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    // The statement is about closed A.
    auto a = closure(random_operator(rng));
    auto as = adjoint(a);
    if (!is_selfadjoint(compose(as, a))) r.fail("A*A for A = " + a.str());
    if (!is_selfadjoint(compose(a, as))) r.fail("AA* for A = " + a.str());
  }
  return r;
}

SuiteResult lemma2_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"(AB)* = B*A* for bounded invertible B"};
  ModelRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    auto a = random_operator(rng, space);
    auto b = random_operator(rng, space, OperatorFamily::BoundedInvertible);
    if (!is_invertible_bounded(b) || !is_bounded_everywhere(b)) {
      r.fail("generator produced a B outside the hypothesis: " + b.str());
      continue;
    }
    auto v = compare(adjoint(compose(a, b)), compose(adjoint(b), adjoint(a)));
    if (v.verdict != Verdict::Equal)
      r.fail(std::string(to_string(v.verdict)) + " for A = " + a.str() + ", B = " + b.str());
  }
  return r;
}

SuiteResult state_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"state classification within the allowed tables"};
  ModelRng rng(seed);
  auto one = [&](const MonomialOperator& t) {
    ++r.cases;
    StateClass s;
    try {
      s = state_classify(t);
    } catch (const std::logic_error& e) {
      r.fail(std::string(e.what()) + " for " + t.str());
      return;
    }
    if (!state_in(s, kDenselyDefinedStates) || !state_in(s, kClosedStates)) r.fail("state " + s.key() + " for " + t.str());
    if (is_selfadjoint(t) && !state_in(s, kSelfAdjointStates)) r.fail("self-adjoint in " + s.key() + ": " + t.str());
    if (is_unitary(t) && s.key() != "I1I1") r.fail("unitary in " + s.key() + ": " + t.str());
    StateClass sa = state_classify(adjoint(t));
    if (sa.t_range != s.tstar_range || sa.t_inverse != s.tstar_inverse || sa.tstar_range != s.t_range ||
        sa.tstar_inverse != s.t_inverse)
      r.fail("adjoint classified as " + sa.key() + " but T as " + s.key() + ": " + t.str());
  };
  static const OperatorFamily families[] = {OperatorFamily::Any,        OperatorFamily::Any,    OperatorFamily::Diagonal,
                                            OperatorFamily::Unitary,    OperatorFamily::Normal, OperatorFamily::DenseRange,
                                            OperatorFamily::Restricted};
  for (std::size_t i = 0; i < count; ++i) one(random_operator(rng, rng.pick(families)));
  auto s = state_classify(MonomialOperator::shift_by(Space::Unilateral, 1));
  ++r.cases;
  if (s.key() != "III1I3") r.fail("unilateral shift classified " + s.key());
  return r;
}

SuiteResult polar_identity_suite(const std::vector<MonomialOperator>& operators) {
  SuiteResult r{"T = W|T|"};
  for (const auto& t : operators) {
    ++r.cases;
    auto pd = polar(t);
    if (!equal_ops(compose(pd.partial_isometry, pd.modulus), closure(t))) r.fail(t.str());
  }
  return r;
}

SuiteResult quasinormal_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r{"quasinormal with dense range is normal"};
  ModelRng rng(seed);
  std::size_t exercised = 0;
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    auto t = closure(random_operator(rng, OperatorFamily::DenseRange));
    if (!has_dense_range(t)) {
      r.fail("generator produced an operator without dense range: " + t.str());
      continue;
    }
    auto pd = polar(t);
    if (!equal_ops(compose(pd.partial_isometry, pd.modulus), t)) r.fail("T ≠ W|T| for " + t.str());
    if (!is_quasinormal(t)) continue;
    ++exercised;
    if (!is_normal(t)) r.fail("quasinormal, dense range, not normal: " + t.str());
  }
  r.skipped = r.cases - exercised;
  return r;
}

SuiteResult oracle_suite(std::uint64_t seed, std::size_t count, std::int64_t n) {
  SuiteResult r{"symbolic operations agree with truncated matrices"};
  ModelRng rng(seed);
  auto literal = [](const MonomialOperator& t) { return make_literal(SymbolRef{"", t.symbol(), {}}, t.shift()); };
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    Space space = random_space(rng);
    auto a = random_operator(rng, space), b = random_operator(rng, space);
    std::string label = "A = " + a.str() + ", B = " + b.str();
    MonomialOperator one[] = {a}, two[] = {a, b};
    MonomialOperator adj[] = {adjoint(a)}, comp[] = {compose(a, b)}, cl[] = {closure(a)};
    auto pd = polar(a);
    MonomialOperator pol[] = {pd.partial_isometry, pd.modulus};
    auto check = [&](CheckedOperation op, std::span<const MonomialOperator> in, std::span<const MonomialOperator> out) {
      auto c = crosscheck(op, in, out, n, MatrixMode::Exact);
      if (!c.pass) r.fail(std::string(to_string(op)) + " " + c.first_mismatch->str() + " for " + label);
    };
    check(CheckedOperation::Adjoint, one, adj);
    check(CheckedOperation::Compose, two, comp);
    check(CheckedOperation::Closure, one, cl);
    check(CheckedOperation::Polar, one, pol);
    if (is_injective(a) && has_dense_range(a)) {
      auto m = matrix_of(*make_unary(Expr::Kind::Inverse, literal(a)), space, n, MatrixMode::Exact);
      if (m.symbolic_mismatch) r.fail("inverse " + m.symbolic_mismatch->str() + " for " + label);
    }
    auto res = residuals(a, n);
    if (!within_tolerance(res.polar, res.scale)) r.fail("polar residual " + std::to_string(res.polar) + " for " + label);
    if (is_selfadjoint(a) && !within_tolerance(res.selfadjointness, res.scale))
      r.fail("self-adjointness residual " + std::to_string(res.selfadjointness) + " for " + label);
    if (is_normal(a) && !within_tolerance(res.normality, res.scale))
      r.fail("normality residual " + std::to_string(res.normality) + " for " + label);
  }
  return r;
}

}  // namespace opcalc
