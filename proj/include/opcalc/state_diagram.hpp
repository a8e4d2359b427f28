#pragma once

#include <array>
#include <string>

#include "opcalc/operator_model.hpp"

namespace opcalc {

/// I: R(T) = H, II: R(T) dense but not H, III: R(T) not dense.
enum class RangeClass { I = 1, II = 2, III = 3 };
/// 1: T⁻¹ bounded, 2: T injective with unbounded inverse, 3: T not injective.
enum class InverseClass { Bounded = 1, Unbounded = 2, NotInjective = 3 };

struct StateClass {
  RangeClass t_range = RangeClass::I;
  InverseClass t_inverse = InverseClass::Bounded;
  RangeClass tstar_range = RangeClass::I;
  InverseClass tstar_inverse = InverseClass::Bounded;
  /// The input was not closed; the closure was classified.
  bool via_closure = false;

  /// "III_1 I_3"
  std::string str() const;
  /// "III1I3", the key used by the tables below.
  std::string key() const;
  friend bool operator==(const StateClass& a, const StateClass& b) {
    return a.t_range == b.t_range && a.t_inverse == b.t_inverse && a.tstar_range == b.tstar_range &&
           a.tstar_inverse == b.tstar_inverse;
  }
};

std::string to_string(RangeClass r);

/// States reachable by densely defined operators.
inline constexpr std::array<const char*, 13> kDenselyDefinedStates = {
    "I1I1",   "I2III1",   "I3III1",  "II1I1",   "II2II2",  "II2III1",  "II2III2",
    "II3III1", "II3III2", "III1I3",  "III2II3", "III2III3", "III3III3"};

/// States reachable by closed operators with dense domain.
inline constexpr std::array<const char*, 7> kClosedStates = {"I1I1",   "I3III1",  "II2II2",  "II3III2",
                                                             "III1I3", "III2II3", "III3III3"};

inline constexpr std::array<const char*, 3> kSelfAdjointStates = {"I1I1", "II2II2", "III3III3"};

/// States of the closure of an injective closeable operator whose inverse is closeable.
inline constexpr std::array<const char*, 4> kInjectiveClosureStates = {"I1I1", "II2II2", "III1I3", "III2II3"};

bool state_in(const StateClass& s, const auto& table) {
  std::string k = s.key();
  for (const char* entry : table)
    if (k == entry) return true;
  return false;
}

RangeClass range_class(const MonomialOperator& t);
InverseClass inverse_class(const MonomialOperator& t);

/// Classifies the closure of T together with T*. Throws std::logic_error if the
/// result falls outside the tables above, which would mean the model is wrong.
StateClass state_classify(const MonomialOperator& t);

}  // namespace opcalc
