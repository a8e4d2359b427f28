#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/inference.hpp"
#include "opcalc/operator_model.hpp"

namespace opcalc {

enum class Truth { True, False, Unknown };
std::string_view to_string(Truth t);

using Instantiation = std::map<std::string, MonomialOperator>;

/// Evaluates terms and facts on monomial operators. Unknown covers opaque
/// predicates (permutes) and terms the model cannot form, such as the inverse
/// of a non-injective operator.
///
/// Predicate meanings in the model: bounded is "in B(H)" (closed with bounded
/// symbol); closed_range and finite_codim_range refer to R(T) itself;
/// core_for(A, B) holds when R(B) contains every finitely supported vector.
class ModelEvaluator {
 public:
  explicit ModelEvaluator(Instantiation atoms) : atoms_(std::move(atoms)) {}

  /// nullopt when the term cannot be formed; the reason is kept.
  std::optional<MonomialOperator> term(const Term& t);
  Truth fact(const Fact& f);
  /// Why the last Unknown came about.
  const std::string& reason() const { return reason_; }

 private:
  Truth unary(Predicate p, const MonomialOperator& t);
  Instantiation atoms_;
  std::map<std::string, std::optional<MonomialOperator>> cache_;
  std::string reason_;
};

struct FactCheck {
  std::string fact;
  Truth truth = Truth::Unknown;
  /// The derivation of the fact uses a CONJECTURAL rule.
  bool conjectural = false;
  std::string rule;
};

struct SoundnessReport {
  /// The first assumption that is not true in the model, if any.
  std::optional<std::string> failing_premise;
  std::vector<FactCheck> checks;
  std::size_t hard_failures = 0;
  std::size_t conjectural_failures = 0;
  std::size_t unknown = 0;

  bool vacuous() const { return failing_premise.has_value(); }
  bool passed() const { return hard_failures == 0; }
};

/// Evaluates the assumptions; if they all hold, derives and evaluates every
/// derived fact. Every atom must be instantiated (InferenceError otherwise).
SoundnessReport model_check_soundness(std::span<const Fact> assumptions, std::span<const Rule> rules,
                                      const Instantiation& instantiation, const InferenceOptions& options = {});

/// Random instantiations of one rule's variables by model operators.
struct RuleSample {
  std::string rule;
  RuleStatus status = RuleStatus::Sound;
  std::size_t instances = 0;
  std::size_t nonvacuous = 0;
  /// Non-vacuous instances where some conclusion could not be evaluated.
  std::size_t unevaluated = 0;
  std::size_t violations = 0;
  std::vector<std::string> counterexamples;
};

RuleSample sample_rule(const Rule& rule, std::uint64_t seed, std::size_t count = 100);

}  // namespace opcalc
