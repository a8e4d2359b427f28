#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/model_check.hpp"

namespace opcalc {

inline constexpr std::uint64_t kDefaultCatalogSeed = 20240611;

struct CheckOutcome {
  std::string got;
  std::string detail;
};

struct CatalogEntry;

struct CatalogOptions {
  /// Let derive checks use CONJECTURAL rules.
  bool conjectural = false;
  /// When nonzero, sample every SOUND and CONJECTURAL rule this many times.
  std::size_t soundness_samples = 0;
  std::uint64_t seed = kDefaultCatalogSeed;
};

struct CatalogCheck {
  std::string name;
  std::string expected;
  std::function<CheckOutcome(ModelEvaluator&, const CatalogEntry&, const CatalogOptions&)> run;
  /// Not decidable in the model (permutes); reported, never compared.
  bool opaque = false;
};

struct CatalogEntry {
  std::string id;
  std::vector<std::string> rules;
  Space space = Space::Unilateral;
  Instantiation witnesses;
  /// Facts fed to the engine by derive checks; usually the hypotheses.
  std::vector<Fact> assumptions;
  std::vector<CatalogCheck> hypotheses;
  std::vector<CatalogCheck> conclusions;
  std::string note;
  bool conjectural = false;
};

/// `fact` evaluated in the model; got is true, false or unknown.
CatalogCheck fact_check(std::string_view fact, bool expected = true);
/// Graph comparison of two terms; got is equal, proper-subset, ...
CatalogCheck cmp_check(std::string_view lhs, std::string_view rhs, std::string_view expected);
/// State of the closure of a term, e.g. "III_1 I_3".
CatalogCheck state_check(std::string_view term, std::string_view expected);
/// The engine derives `fact` from the entry's assumptions.
CatalogCheck derive_check(std::string_view fact);
/// Every fact the engine derives from the assumptions holds in the model.
CatalogCheck derived_facts_check();

/// Hypotheses are the rule's premises, conclusions its conclusions, plus the
/// derived-facts check.
CatalogEntry rule_entry(const Rule& rule, Space space, Instantiation witnesses, std::string note = {});

/// The shipped witness catalog. The seed drives the random witness of VN-W.
std::vector<CatalogEntry> catalog(std::uint64_t seed = kDefaultCatalogSeed);

enum class EntryVerdict { Pass, Fail, Vacuous, ConjecturalPass, ConjecturalFail };
std::string_view to_string(EntryVerdict v);

struct CheckResult {
  std::string name;
  std::string expected;
  std::string got;
  std::string detail;
};

struct EntryResult {
  std::string id;
  EntryVerdict verdict = EntryVerdict::Pass;
  std::vector<std::string> rules;
  std::vector<std::pair<std::string, std::string>> witnesses;
  std::vector<CheckResult> checks;
  std::optional<std::string> failing_hypothesis;
  std::string note;
};

struct CatalogReport {
  std::vector<EntryResult> entries;      // sorted by id
  std::vector<EntryResult> conjectural;  // sorted by id
  std::vector<RuleSample> soundness;
  std::uint64_t seed = kDefaultCatalogSeed;

  std::size_t count(EntryVerdict v) const;
  /// A FAIL entry, or a violation of a SOUND rule in the soundness section.
  bool failed() const;
  std::string json() const;
  std::string text() const;
};

CatalogReport run_catalog(const std::vector<CatalogEntry>& entries, const CatalogOptions& options = {});

}  // namespace opcalc
