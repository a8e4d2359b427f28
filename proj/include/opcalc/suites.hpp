#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/operator_model.hpp"

namespace opcalc {

/// Outcome of a seeded randomized suite.
struct SuiteResult {
  explicit SuiteResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  /// Cases that did not exercise the property (premise false, or the
  /// generated input was rejected by the model, e.g. override overflow).
  std::size_t skipped = 0;
  std::size_t violations = 0;
  /// The first few violations, described.
  std::vector<std::string> failures;

  bool passed() const { return violations == 0; }
  void fail(std::string what);
  std::string summary() const;
};

// Symbol suites.
SuiteResult combine_suite(std::uint64_t seed, std::size_t count = 1000);
SuiteResult growth_preorder_suite(std::uint64_t seed, std::size_t count = 500);
SuiteResult growth_witness_suite(std::uint64_t seed, std::size_t count = 300);
SuiteResult symbol_roundtrip_suite(std::uint64_t seed, std::size_t count = 200);

// Operator suites.
SuiteResult involution_suite(std::uint64_t seed, std::size_t count = 500);
SuiteResult adjoint_product_suite(std::uint64_t seed, std::size_t count = 500);
SuiteResult lemma1_suite(std::uint64_t seed, std::size_t count = 1000);
SuiteResult von_neumann_suite(std::uint64_t seed, std::size_t count = 200);
SuiteResult lemma2_suite(std::uint64_t seed, std::size_t count = 200);
SuiteResult state_suite(std::uint64_t seed, std::size_t count = 500);
/// T = W|T| on the given operators.
SuiteResult polar_identity_suite(const std::vector<MonomialOperator>& operators);
/// Quasinormal with dense range implies normal, plus T = W|T|, on random operators with dense range.
SuiteResult quasinormal_suite(std::uint64_t seed, std::size_t count = 100);
/// Exact crosschecks of adjoint, compose, closure and polar at N, plus float
/// residuals for the properties that hold symbolically.
SuiteResult oracle_suite(std::uint64_t seed, std::size_t count = 200, std::int64_t n = 32);

}  // namespace opcalc
