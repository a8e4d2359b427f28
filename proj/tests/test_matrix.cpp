#include <doctest.h>

#include <cmath>
#include <cstring>

#include "opcalc/kernels.hpp"
#include "opcalc/matrix_oracle.hpp"
#include "opcalc/random_model.hpp"

using namespace opcalc;

namespace {

const Space U = Space::Unilateral;
const Space Z = Space::Bilateral;

GrowthSymbol sym(std::string_view text, Space space = U) { return parse_symbol(text, space); }

TruncatedMatrix exact_of(std::string_view text, std::int64_t n, Space space = U) {
  return matrix_of(*parse_expr(text, space), space, n, MatrixMode::Exact);
}

// Reference dense product written out directly, used to check both kernel tables.
void naive_product(std::size_t n, const std::vector<double>& ar, const std::vector<double>& ai,
                   const std::vector<double>& br, const std::vector<double>& bi, std::vector<double>& cr,
                   std::vector<double>& ci) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> s;
      for (std::size_t k = 0; k < n; ++k)
        s += std::complex<double>(ar[i * n + k], ai[i * n + k]) * std::complex<double>(br[k * n + j], bi[k * n + j]);
      cr[i * n + j] = s.real();
      ci[i * n + j] = s.imag();
    }
}

}  // namespace

TEST_CASE("truncated matrices of basic operators") {
  auto a = exact_of("diag(coeff(1,0,1) * qpow(0,1,1))", 3);
  CHECK(a.exact.nonzeros().size() == 3);
  CHECK(a.exact.at(0, 0) == RadicalComplex(1));
  CHECK(a.exact.at(1, 1) == RadicalComplex(2));
  CHECK(a.exact.at(2, 2) == RadicalComplex(5));
  CHECK_FALSE(a.symbolic_mismatch);

  auto s = exact_of("shift(1)", 3);
  CHECK(s.exact.nonzeros().size() == 2);
  CHECK(s.exact.at(1, 0) == RadicalComplex(1));
  CHECK(s.exact.at(2, 1) == RadicalComplex(1));

  // Conjugate transpose on the whole window, not only the interior.
  const char* text = "diag(coeff(1,2,3) * pow(1,1) * exp(1/2) @ {0: coeff(0,1,1)}).shift(2)";
  auto t = exact_of(text, 12);
  auto ts = exact_of(std::string("adj(") + text + ")", 12);
  for (std::int64_t i = 0; i < 12; ++i)
    for (std::int64_t j = 0; j < 12; ++j) CHECK(ts.exact.at(i, j) == t.exact.at(j, i).conj());
  CHECK_FALSE(ts.symbolic_mismatch);
}

TEST_CASE("composite expressions agree with their symbolic results") {
  auto ab = exact_of("diag(coeff(1,0,1) * qpow(0,1,1)) * diag(coeff(1,0,1) * qpow(0,1,-1))", 16);
  for (std::int64_t i = 0; i < 16; ++i)
    for (std::int64_t j = 0; j < 16; ++j) CHECK(ab.exact.at(i, j) == RadicalComplex(i == j ? 1 : 0));
  CHECK_FALSE(ab.symbolic_mismatch);

  const char* exprs[] = {
      "shift(1) * diag(coeff(1,0,1) * pow(1,1))",
      "adj(shift(2)) * diag(coeff(0,1,1) * exp(3))",
      "abs(diag(coeff(3,4,1) * per(2; 1, coeff(0,0,1))).shift(1))",
      "phase(diag(coeff(3,4,1) * pow(2,1/2)).shift(-1))",
      "inv(diag(coeff(1,1,1) * exp(2)))",
      "cl(diag(coeff(1,0,1) * pow(1,1)) on dom(coeff(1,0,1) * pow(1,2)))",
  };
  for (const char* e : exprs) {
    CAPTURE(e);
    auto m = exact_of(e, 24);
    CHECK_FALSE(m.symbolic_mismatch);
    auto f = matrix_of(*parse_expr(e, U), U, 24, MatrixMode::Float);
    CHECK_FALSE(f.symbolic_mismatch);
  }
  auto bi = matrix_of(*parse_expr("adj(diag(coeff(1,0,1) * exp(2)).shift(1)) * shift(3)", Z), Z, 16, MatrixMode::Exact);
  CHECK(bi.window.size() == 33);
  CHECK_FALSE(bi.symbolic_mismatch);
}

TEST_CASE("window limits") {
  CHECK_THROWS_AS(exact_of("shift(3)", 3), ModelError);
  CHECK_THROWS_AS(exact_of("shift(2) * shift(-2)", 4), ModelError);
  CHECK_NOTHROW(exact_of("shift(2)", 3));
  CHECK_THROWS_AS(exact_of("shift(1)", kMaxExactN + 1), ModelError);
  CHECK_NOTHROW(matrix_of(*parse_expr("shift(1)", U), U, kMaxExactN + 1, MatrixMode::Float));
  CHECK_THROWS_AS(matrix_of(*parse_expr("shift(1)", U), U, kMaxFloatN + 1, MatrixMode::Float), ModelError);
  CHECK_THROWS_AS(exact_of("A", 4), BindingError);
}

TEST_CASE("csv output") {
  auto s = exact_of("diag(coeff(1,1,2)).shift(1)", 2);
  CHECK(s.csv() == "row,col,value\n0,0,\"(0,0,1)\"\n0,1,\"(0,0,1)\"\n1,0,\"(1,1,2)\"\n1,1,\"(0,0,1)\"\n");
  CHECK(s.csv(true) == "row,col,value\n1,0,\"(1,1,2)\"\n");
}

TEST_CASE("residuals") {
  auto a = MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,1)"));
  auto ra = residuals(a, 64);
  CHECK(ra.selfadjointness == 0.0);
  CHECK(ra.normality == 0.0);
  CHECK(within_tolerance(ra.polar, ra.scale));

  // diag(per(2;1,2))·S on ℤ: T*T − TT* is diagonal with entries ±(4 − 1).
  auto t = MonomialOperator::make(sym("coeff(1,0,1) * per(2; 1, 2)", Z), 1);
  for (std::int64_t n : {32, 64, 128}) {
    auto r = residuals(t, n);
    CHECK(r.normality >= 0.5);
    CHECK(r.normality == doctest::Approx(3.0));
  }

  auto g = MonomialOperator::make(sym("coeff(1,0,1) * exp(2)", Z), 1);
  auto rg = residuals(g, 16);
  CHECK(within_tolerance(rg.polar, rg.scale));
  CHECK_FALSE(within_tolerance(rg.selfadjointness, rg.scale));
}

TEST_CASE("crosscheck") {
  auto a = MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,1)"));
  auto b = MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,-1)"));
  MonomialOperator ab_in[] = {a, b};
  MonomialOperator id[] = {MonomialOperator::identity(U)};
  for (auto mode : {MatrixMode::Exact, MatrixMode::Float}) CHECK(crosscheck(CheckedOperation::Compose, ab_in, id, 16, mode).pass);

  MonomialOperator d[] = {MonomialOperator::diagonal(sym("coeff(0,1,1) * pow(1,1)"))};
  MonomialOperator dstar[] = {MonomialOperator::diagonal(sym("coeff(0,-1,1) * pow(1,1)"))};
  CHECK(crosscheck(CheckedOperation::Adjoint, d, dstar, 8, MatrixMode::Exact).pass);
  CHECK_FALSE(crosscheck(CheckedOperation::Adjoint, d, d, 8, MatrixMode::Exact).pass);

  // S·diag(b) has symbol σ¹b; the unshifted symbol is wrong first at (1, 0).
  auto bsym = sym("coeff(1,0,1) * pow(1,1)");
  MonomialOperator sb[] = {MonomialOperator::shift_by(U, 1), MonomialOperator::diagonal(bsym)};
  MonomialOperator wrong[] = {MonomialOperator::make(bsym, 1)};
  MonomialOperator right[] = {compose(sb[0], sb[1])};
  for (auto mode : {MatrixMode::Exact, MatrixMode::Float}) {
    auto bad = crosscheck(CheckedOperation::Compose, sb, wrong, 8, mode);
    REQUIRE_FALSE(bad.pass);
    CHECK(bad.first_mismatch->row == 1);
    CHECK(bad.first_mismatch->col == 0);
    CHECK(crosscheck(CheckedOperation::Compose, sb, right, 8, mode).pass);
  }

  auto g = MonomialOperator::make(sym("coeff(1,0,1) * exp(2)", Z), 1);
  auto pd = polar(g);
  CHECK(pd.modulus == MonomialOperator::diagonal(sym("coeff(2,0,1) * exp(2)", Z)));
  CHECK(pd.partial_isometry == MonomialOperator::shift_by(Z, 1));
  MonomialOperator gin[] = {g};
  MonomialOperator gout[] = {pd.partial_isometry, pd.modulus};
  CHECK(crosscheck(CheckedOperation::Polar, gin, gout, 16, MatrixMode::Exact).pass);
  MonomialOperator swapped[] = {pd.modulus, pd.partial_isometry};
  CHECK_FALSE(crosscheck(CheckedOperation::Polar, gin, swapped, 16, MatrixMode::Exact).pass);
}

TEST_CASE("crosscheck on random operators") {
  ModelRng rng(20261016);
  for (int i = 0; i < 60; ++i) {
    auto space = random_space(rng);
    auto a = random_operator(rng, space), b = random_operator(rng, space);
    CAPTURE(a.str());
    CAPTURE(b.str());
    MonomialOperator one[] = {a}, two[] = {a, b};
    MonomialOperator adj[] = {adjoint(a)}, comp[] = {compose(a, b)}, cl[] = {closure(a)};
    auto pd = polar(a);
    MonomialOperator pol[] = {pd.partial_isometry, pd.modulus};
    CHECK(crosscheck(CheckedOperation::Adjoint, one, adj, 32, MatrixMode::Exact).pass);
    CHECK(crosscheck(CheckedOperation::Compose, two, comp, 32, MatrixMode::Exact).pass);
    CHECK(crosscheck(CheckedOperation::Closure, one, cl, 32, MatrixMode::Exact).pass);
    CHECK(crosscheck(CheckedOperation::Polar, one, pol, 32, MatrixMode::Exact).pass);
  }
}

TEST_CASE("float and exact truncations agree") {
  ModelRng rng(77);
  int compared = 0;
  for (int i = 0; i < 40; ++i) {
    auto space = random_space(rng);
    auto a = random_operator(rng, space), b = random_operator(rng, space);
    Expr e = *make_compose(make_literal(SymbolRef{"", a.symbol(), {}}, a.shift()),
                           make_unary(Expr::Kind::Adjoint, make_literal(SymbolRef{"", b.symbol(), {}}, b.shift())));
    Window w{space, 20};
    auto x = direct_exact(e, w);
    auto f = direct_float(e, w);
    for (std::int64_t r = w.lo(); r < w.hi(); ++r)
      for (std::int64_t c = w.lo(); c < w.hi(); ++c) {
        auto v = x.at(r, c).to_complex();
        if (std::abs(v) > 1e6) continue;
        ++compared;
        CHECK(std::abs(v - f.at(r, c)) <= 1e-12 * std::max(1.0, std::abs(v)));
      }
  }
  CHECK(compared > 1000);
}

TEST_CASE("svd polar of bounded truncations") {
  ModelRng rng(5);
  int checked = 0;
  while (checked < 6) {
    auto space = random_space(rng);
    SymbolOptions opts;
    opts.allow_growth = false;
    auto a = random_symbol(rng, space, opts);
    if (!classify(a).bounded) continue;
    auto t = MonomialOperator::make(a, rng.uniform(-2, 2));
    CAPTURE(t.str());
    for (std::int64_t n : {16, 32, 64, 128}) {
      auto d = svd_polar_deviation(t, n);
      CHECK(d.modulus <= 1e-10);
      CHECK(d.partial_isometry <= 1e-10);
    }
    ++checked;
  }
}

TEST_CASE("kernel tables agree") {
  const KernelTable& scalar = scalar_kernels();
  const KernelTable* simd = avx2_kernels();
  std::vector<const KernelTable*> tables{&scalar};
  if (simd) tables.push_back(simd);
  MESSAGE("active kernels: " << std::string(active_kernels().name));
  ModelRng rng(99);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 16u, 31u, 64u}) {
    std::vector<double> ar(n * n), ai(n * n), br(n * n), bi(n * n);
    auto fill = [&](std::vector<double>& v) {
      for (auto& x : v) x = rng.chance(1, 3) ? 0.0 : double(rng.uniform(-1000000, 1000000)) / 4096.0;
    };
    fill(ar), fill(ai), fill(br), fill(bi);
    std::vector<double> nr(n * n), ni(n * n);
    naive_product(n, ar, ai, br, bi, nr, ni);
    std::vector<std::vector<double>> outs;
    for (const KernelTable* k : tables) {
      CAPTURE(k->name);
      std::vector<double> cr(n * n, 0.0), ci(n * n, 0.0);
      k->cgemm(n, ar.data(), ai.data(), br.data(), bi.data(), cr.data(), ci.data());
      for (std::size_t i = 0; i < n * n; ++i) {
        CHECK(cr[i] == doctest::Approx(nr[i]).epsilon(1e-12));
        CHECK(ci[i] == doctest::Approx(ni[i]).epsilon(1e-12));
      }
      std::vector<double> tr(n * n), ti(n * n);
      k->conj_transpose(n, ar.data(), ai.data(), tr.data(), ti.data());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(tr[j * n + i] == ar[i * n + j]);
          CHECK(ti[j * n + i] == -ai[i * n + j]);
        }
      double expected = 0;
      std::size_t lo = n / 4, hi = n - n / 4;
      for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = lo; j < hi; ++j)
          expected = std::max(expected, std::hypot(ar[i * n + j] - br[i * n + j], ai[i * n + j] - bi[i * n + j]));
      CHECK(k->max_abs_diff(n, ar.data(), ai.data(), br.data(), bi.data(), lo, hi) == doctest::Approx(expected));
      cr.insert(cr.end(), ci.begin(), ci.end());
      cr.insert(cr.end(), tr.begin(), tr.end());
      cr.insert(cr.end(), ti.begin(), ti.end());
      cr.push_back(k->max_abs_diff(n, ar.data(), ai.data(), br.data(), bi.data(), lo, hi));
      outs.push_back(std::move(cr));
    }
    // Bitwise equality across implementations.
    for (const auto& o : outs) CHECK(std::memcmp(o.data(), outs[0].data(), o.size() * sizeof(double)) == 0);
  }
}

// Closure of a restricted monomial is the maximal one: truncations of a vector
// in the maximal domain are finitely supported, so they lie in every
// restricted domain, the oracle matrix maps them to the truncated maximal
// action, and their graph-norm distance to the vector goes to zero.
TEST_CASE("closure battery: truncations converge in graph norm") {
  ModelRng rng(5150);
  auto log_abs_at = [](const GrowthSymbol& s, std::int64_t m) -> long double {
    auto it = s.overrides().find(m);
    return it != s.overrides().end() ? it->second.log_abs() : s.log_abs_formula(m);
  };
  constexpr std::int64_t kLast = 1 << 13;
  int restricted = 0;
  for (int trial = 0; trial < 2000 && restricted < 100; ++trial) {
    Space space = random_space(rng);
    MonomialOperator t = random_operator(rng, space, OperatorFamily::Restricted);
    if (t.is_maximal()) continue;
    ++restricted;
    MonomialOperator maximal = MonomialOperator::make(t.symbol(), t.shift());
    INFO(t.str());
    REQUIRE(closure(t) == maximal);
    CHECK_FALSE(t == maximal);
    CHECK(is_closed(closure(t)));
    CHECK(is_restriction_of(t, maximal));

    // x_m = u_m (|m|+1)^{-p} / (1 + |w_m|) is in the maximal domain for p > 1/2.
    // Per index: log x_m and log |w_m x_m|, ℤ stored at offset kLast.
    const long double p = rng.pick({0.6L, 0.75L, 1.0L, 2.0L});
    std::vector<long double> u(64);
    for (auto& v : u) v = 0.5L + static_cast<long double>(rng.uniform(0, 1000)) / 2000.0L;
    const std::int64_t lo = space == Space::Unilateral ? 0 : -kLast + 1;
    std::vector<long double> lx(2 * kLast), lwx(2 * kLast);
    for (std::int64_t m = lo; m < kLast; ++m) {
      long double lw = log_abs_at(t.weights(), m);
      long double log_one_plus = lw > 0 ? lw + std::log1p(std::exp(-lw)) : std::log1p(std::exp(lw));
      auto i = static_cast<std::size_t>(m + kLast);
      lx[i] = std::log(u[static_cast<std::size_t>((m % 64 + 64) % 64)]) -
              p * std::log(static_cast<long double>(std::llabs(m) + 1)) - log_one_plus;
      lwx[i] = lx[i] + lw;
    }
    auto x = [&](std::int64_t m) { return static_cast<double>(std::exp(lx[static_cast<std::size_t>(m + kLast)])); };

    // T x^(N) through the exact oracle equals w_m x_m at m + k for m in the window
    TruncatedMatrix tm = matrix_of(*parse_expr(t.str(), space), space, 16, MatrixMode::Exact);
    const Window& w = tm.window;
    for (std::int64_t row = w.lo(); row < w.hi(); ++row) {
      std::complex<double> got;
      for (std::int64_t col = w.lo(); col < w.hi(); ++col) got += tm.exact.at(row, col).to_complex() * x(col);
      std::int64_t col = row - t.shift();
      std::complex<double> want;
      if (w.contains(col)) want = t.weights().at(col).to_complex() * x(col);
      CHECK(std::abs(got - want) <= 1e-12 * (1 + std::abs(want)));
    }

    // graph-norm tails Σ_{|m| >= N} |x_m|² + |w_m x_m|²
    auto tail = [&](std::int64_t from) {
      long double s = 0;
      for (std::int64_t m = lo; m < kLast; ++m) {
        if (std::llabs(m) < from) continue;
        auto i = static_cast<std::size_t>(m + kLast);
        s += std::exp(2 * lx[i]) + std::exp(2 * lwx[i]);
      }
      return s;
    };
    long double prev = tail(0);
    CHECK(prev < 10);
    for (std::int64_t from : {16, 256, 4096}) {
      long double cur = tail(from);
      CHECK(cur <= prev);
      prev = cur;
    }
    // both sides of Σ_{m >= N} (m+1)^{-2p} bound the last tail
    CHECK(prev <= 2 * std::pow(4095.0L, 1 - 2 * p) / (2 * p - 1));
  }
  CHECK(restricted == 100);
}
