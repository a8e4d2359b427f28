#include "opcalc/state_diagram.hpp"

#include <stdexcept>

namespace opcalc {

std::string to_string(RangeClass r) {
  switch (r) {
    case RangeClass::I: return "I";
    case RangeClass::II: return "II";
    case RangeClass::III: return "III";
  }
  return "?";
}

std::string StateClass::str() const {
  return to_string(t_range) + "_" + std::to_string(static_cast<int>(t_inverse)) + " " + to_string(tstar_range) + "_" +
         std::to_string(static_cast<int>(tstar_inverse));
}

std::string StateClass::key() const {
  return to_string(t_range) + std::to_string(static_cast<int>(t_inverse)) + to_string(tstar_range) +
         std::to_string(static_cast<int>(tstar_inverse));
}

namespace {

// Range of the maximal operator with symbol a: y_{m+k} = a_{m+k} x_m.
RangeClass range_of_symbol(const GrowthSymbol& a) {
  auto c = classify(a);
  if (!c.zeros.empty()) return RangeClass::III;
  return c.bounded_below ? RangeClass::I : RangeClass::II;
}

InverseClass inverse_of_weights(const GrowthSymbol& w) {
  auto c = classify(w);
  if (!c.zeros.empty()) return InverseClass::NotInjective;
  return c.bounded_below ? InverseClass::Bounded : InverseClass::Unbounded;
}

}  // namespace

RangeClass range_class(const MonomialOperator& t) { return range_of_symbol(t.symbol()); }

InverseClass inverse_class(const MonomialOperator& t) { return inverse_of_weights(t.weights()); }

StateClass state_classify(const MonomialOperator& t) {
  StateClass s;
  s.via_closure = !is_closed(t);
  s.t_range = range_of_symbol(t.symbol());
  s.t_inverse = inverse_of_weights(t.weights());
  // T* has symbol conj(w) and weights conj(a).
  s.tstar_range = range_of_symbol(t.weights());
  s.tstar_inverse = inverse_of_weights(t.symbol());
  if (!state_in(s, kClosedStates) || !state_in(s, kDenselyDefinedStates))
    throw std::logic_error("state " + s.str() + " outside the closed-operator table for " + t.str());
  if (s.t_inverse != InverseClass::NotInjective && !state_in(s, kInjectiveClosureStates))
    throw std::logic_error("injective closure in state " + s.str() + " for " + t.str());
  return s;
}

}  // namespace opcalc
