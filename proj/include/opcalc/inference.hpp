#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "opcalc/term.hpp"

namespace opcalc {

enum class RuleStatus { Sound, Conjectural, Axiom };
std::string_view to_string(RuleStatus s);

/// Every atom occurring in a rule is a variable.
struct Rule {
  std::string id;
  RuleStatus status = RuleStatus::Sound;
  /// Result label and the statement the rule encodes.
  std::string citation;
  std::vector<Fact> premises;
  std::vector<Fact> conclusions;

  std::vector<std::string> variables() const;
  std::string str() const;
};

/// Premises and conclusions as `;`-separated facts.
Rule make_rule(std::string id, RuleStatus status, std::string citation, std::string_view premises,
               std::string_view conclusions);

struct InferenceOptions {
  bool conjectural = false;
  int max_depth = 3;
};

struct Derivation {
  /// Empty for an assumed fact.
  std::string rule;
  std::vector<std::size_t> premises;
};

/// A conclusion dropped because one of its terms was deeper than the bound.
struct Truncation {
  std::string rule;
  std::string fact;
  friend auto operator<=>(const Truncation&, const Truncation&) = default;
};

class InferenceResult {
 public:
  const std::vector<Fact>& facts() const { return facts_; }
  const Derivation& derivation(std::size_t i) const { return derivations_[i]; }
  std::optional<std::size_t> find(const Fact& f) const;
  bool contains(const Fact& f) const { return find(f).has_value(); }
  bool is_assumed(std::size_t i) const { return derivations_[i].rule.empty(); }

  /// Indices of the derived (not assumed) facts, sorted by printed form.
  std::vector<std::size_t> derived() const;
  /// Printed forms of every fact, sorted.
  std::set<std::string> fact_set() const;
  /// Rules used anywhere in the derivation tree of fact i.
  std::set<std::string> rules_used(std::size_t i) const;
  bool uses_conjectural(std::size_t i) const;

  const std::set<Truncation>& truncated() const { return truncated_; }
  int max_depth() const { return max_depth_; }

  /// Indented derivation tree. Throws InferenceError for a fact not in the set.
  std::string explain(const Fact& f) const;

 private:
  friend class Engine;
  std::vector<Fact> facts_;
  std::vector<Derivation> derivations_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<Truncation> truncated_;
  std::map<std::string, Rule> rules_;
  int max_depth_ = 3;
};

/// Checks that the assumptions are admissible: depth within the bound, no
/// `known` facts, and inv(t) only where injective(t), invertible_bounded(t)
/// or unitary(t) is also assumed. Throws InferenceError.
void validate_assumptions(std::span<const Fact> assumptions, int max_depth);

/// Least fixpoint of the rules over the depth-bounded term universe.
/// CONJECTURAL rules are skipped unless options.conjectural is set.
InferenceResult infer(std::span<const Fact> assumptions, std::span<const Rule> rules,
                      const InferenceOptions& options = {});

}  // namespace opcalc
