#include <doctest.h>

#include <algorithm>
#include <set>

#include "opcalc/state_diagram.hpp"

using namespace opcalc;

namespace {

GrowthSymbol sym(std::string_view text, Space space = Space::Unilateral) { return parse_symbol(text, space); }

std::string key(int x, int a, int y, int b) {
  const char* r[] = {"", "I", "II", "III"};
  return std::string(r[x]) + std::to_string(a) + r[y] + std::to_string(b);
}

// Enumerates (range T, inverse T, range T*, inverse T*) using only
//   N(T*) = R(T)^⊥, N(T̄) = R(T*)^⊥, closed range theorem for T̄ and T*,
//   T bounded below ⇔ T̄ bounded below, T̄ injective ⇒ T injective.
// The closure's inverse class c and range class r are enumerated too.
std::set<std::string> derive_states(bool closed) {
  std::set<std::string> out;
  for (int x = 1; x <= 3; ++x)        // R(T)
    for (int a = 1; a <= 3; ++a)      // T⁻¹
      for (int xc = 1; xc <= 3; ++xc)  // R(T̄)
        for (int ac = 1; ac <= 3; ++ac) {  // T̄⁻¹
          if (closed && (xc != x || ac != a)) continue;
          // R(T) ⊆ R(T̄) ⊆ closure of R(T): density agrees, and R(T) = H forces R(T̄) = H.
          if ((x == 3) != (xc == 3)) continue;
          if (x == 1 && xc != 1) continue;
          if ((a == 1) != (ac == 1)) continue;  // T ⊆ T̄: a lower bound passes both ways
          if (a == 3 && ac != 3) continue;
          // Closed operators: surjective and injective means bounded inverse; bounded below means closed range.
          if (xc == 1 && ac == 2) continue;
          if (ac == 1 && xc == 2) continue;
          int y = ac == 1 ? 1 : ac == 2 ? 2 : 3;
          int b = xc == 1 ? 1 : xc == 2 ? 2 : 3;
          out.insert(key(x, a, y, b));
        }
  return out;
}

}  // namespace

TEST_CASE("state tables match the duality derivation") {
  auto dense = derive_states(false);
  auto closed = derive_states(true);
  CHECK(dense.size() == 13);
  CHECK(closed.size() == 7);
  CHECK(dense == std::set<std::string>(kDenselyDefinedStates.begin(), kDenselyDefinedStates.end()));
  CHECK(closed == std::set<std::string>(kClosedStates.begin(), kClosedStates.end()));
  for (const char* s : kSelfAdjointStates) CHECK(closed.count(s));
  for (const char* s : kInjectiveClosureStates) CHECK(closed.count(s));
}

TEST_CASE("range and inverse classes") {
  auto id = MonomialOperator::identity(Space::Unilateral);
  auto b = MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,-1)"));
  auto a = MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,1)"));
  auto s = MonomialOperator::shift_by(Space::Unilateral, 1);
  CHECK(range_class(id) == RangeClass::I);
  CHECK(range_class(b) == RangeClass::II);
  CHECK(range_class(s) == RangeClass::III);
  CHECK(inverse_class(a) == InverseClass::Bounded);
  CHECK(inverse_class(b) == InverseClass::Unbounded);
  CHECK(inverse_class(MonomialOperator::diagonal(sym("coeff(1,0,1) @ {0: coeff(0,0,1)}"))) == InverseClass::NotInjective);
  // y_n = 1/(1+n) lies in ℓ² but y/b = (1+n²)/(1+n) does not: the range of b is properly dense.
  double sy = 0, sx = 0;
  for (int n = 0; n < 10000; ++n) {
    double y = 1.0 / (1 + n);
    sy += y * y;
    sx += std::pow(y * (1.0 + double(n) * n), 2);
  }
  CHECK(sy < 1.65);
  CHECK(sx > 1e10);
}

TEST_CASE("state classification") {
  CHECK(state_classify(MonomialOperator::identity(Space::Unilateral)).str() == "I_1 I_1");
  CHECK(state_classify(MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,-1)"))).str() == "II_2 II_2");
  CHECK(state_classify(MonomialOperator::shift_by(Space::Unilateral, 1)).str() == "III_1 I_3");
  CHECK(state_classify(MonomialOperator::shift_by(Space::Unilateral, -1)).str() == "I_3 III_1");
  auto p = state_classify(MonomialOperator::diagonal(sym("coeff(1,0,1) * per(2; 1, 0)")));
  CHECK(p.str() == "III_3 III_3");
  auto t = MonomialOperator::diagonal(sym("coeff(1,0,1) * pow(1,1)"));
  std::vector<GrowthSymbol> c{sym("coeff(1,0,1) * pow(1,2)")};
  auto restricted = state_classify(restrict_to(t, c));
  CHECK(restricted.via_closure);
  CHECK(restricted.str() == "I_1 I_1");
  // Zero lies in the continuous spectrum exactly for injective operators with properly dense range.
  auto b = state_classify(MonomialOperator::diagonal(sym("coeff(1,0,1) * qpow(0,1,-1)")));
  CHECK(b.t_range == RangeClass::II);
  CHECK(b.t_inverse == InverseClass::Unbounded);
}
