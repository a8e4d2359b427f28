#include <doctest.h>

#include "opcalc/suites.hpp"

using namespace opcalc;

namespace {

void require_clean(const SuiteResult& r) {
  MESSAGE(r.summary());
  for (const auto& f : r.failures) INFO(f);
  CHECK(r.violations == 0);
  CHECK(r.cases > 0);
  CHECK(r.skipped < r.cases);
}

}  // namespace

TEST_CASE("symbol properties") {
  for (std::uint64_t seed : {1u, 2u}) {
    require_clean(combine_suite(seed, 1000));
    require_clean(growth_preorder_suite(seed, 500));
    require_clean(growth_witness_suite(seed, 300));
    require_clean(symbol_roundtrip_suite(seed, 200));
  }
}

TEST_CASE("operator properties") {
  require_clean(involution_suite(11, 500));
  require_clean(adjoint_product_suite(12, 500));
  require_clean(lemma1_suite(13, 300));
  require_clean(von_neumann_suite(14, 200));
  require_clean(lemma2_suite(15, 200));
  require_clean(quasinormal_suite(16, 100));
}

TEST_CASE("state properties") { require_clean(state_suite(21, 500)); }

TEST_CASE("oracle properties") { require_clean(oracle_suite(31, 60, 32)); }
