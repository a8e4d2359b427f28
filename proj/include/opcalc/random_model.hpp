#pragma once

#include <cstdint>
#include <random>

#include "opcalc/operator_model.hpp"

namespace opcalc {

/// Deterministic source for the random model suites. The integer mapping is
/// done here rather than through <random> distributions so that sequences are
/// identical across standard libraries.
class ModelRng {
 public:
  explicit ModelRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den);
  template <typename T, std::size_t N>
  const T& pick(const T (&items)[N]) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(N) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

enum class OperatorFamily {
  Any,
  Diagonal,
  Unitary,
  Normal,
  BoundedInvertible,
  DenseRange,
  Restricted,
};

struct SymbolOptions {
  bool allow_zeros = true;
  bool allow_growth = true;
  bool unimodular = false;
};

RadicalComplex random_scalar(ModelRng& rng, bool allow_zero);
GrowthSymbol random_symbol(ModelRng& rng, Space space, const SymbolOptions& options = {});
MonomialOperator random_operator(ModelRng& rng, Space space, OperatorFamily family = OperatorFamily::Any);
/// Either space with equal odds, then random_operator.
MonomialOperator random_operator(ModelRng& rng, OperatorFamily family = OperatorFamily::Any);
Space random_space(ModelRng& rng);

}  // namespace opcalc
