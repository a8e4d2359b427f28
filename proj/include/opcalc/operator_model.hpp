#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/growth_symbol.hpp"

namespace opcalc {

/// A vector in D1 \ D2: x_{n_k} = 1/(k·(1 + M(n_k))) on the witness indices,
/// zero elsewhere, where M = max |c| over the source constraints.
struct DomainWitness {
  GrowthSymbol constraint;
  std::vector<GrowthSymbol> source;
  GrowthWitness growth;

  /// (index, log x_n) pairs.
  std::vector<std::pair<std::int64_t, long double>> log_entries() const;
  std::string str() const;
};

struct DomainVerdict {
  bool holds = true;
  std::optional<DomainWitness> witness;
  explicit operator bool() const { return holds; }
};

/// {x : Σ|c_n x_n|² < ∞ for every c in d1} ⊆ same for d2.
DomainVerdict domain_leq(std::span<const GrowthSymbol> d1, std::span<const GrowthSymbol> d2);

/// (Tx)_n = a_n x_{n-k} on ℓ²(ℕ) or ℓ²(ℤ), restricted to the vectors that also
/// satisfy the stored constraints. No constraints means the maximal domain.
///
/// Canonical form: on ℕ with k > 0, a_n = 0 for n < k; the zero operator has
/// shift 0; constraints are moduli, sorted, with every constraint dominated by
/// the others together with the pulled-back symbol removed.
class MonomialOperator {
 public:
  MonomialOperator() = default;
  static MonomialOperator make(GrowthSymbol symbol, std::int64_t shift, std::vector<GrowthSymbol> constraints = {});
  static MonomialOperator diagonal(GrowthSymbol symbol) { return make(std::move(symbol), 0); }
  static MonomialOperator shift_by(Space space, std::int64_t k) { return make(GrowthSymbol::one(space), k); }
  static MonomialOperator identity(Space space) { return shift_by(space, 0); }

  Space space() const { return symbol_.space(); }
  const GrowthSymbol& symbol() const { return symbol_; }
  std::int64_t shift() const { return shift_; }
  const std::vector<GrowthSymbol>& constraints() const { return constraints_; }
  bool is_maximal() const { return constraints_.empty(); }

  /// w = σ^{-k} a, so that T e_m = w_m e_{m+k}.
  const GrowthSymbol& weights() const { return weights_; }

  /// The pulled-back symbol followed by the constraints.
  std::vector<GrowthSymbol> effective_domain() const;

  /// ⟨T e_col, e_row⟩.
  RadicalComplex entry(std::int64_t row, std::int64_t col) const;

  /// Expression text in the operator grammar.
  std::string str() const;

  friend bool operator==(const MonomialOperator&, const MonomialOperator&) = default;

 private:
  GrowthSymbol symbol_;
  std::int64_t shift_ = 0;
  std::vector<GrowthSymbol> constraints_;
  GrowthSymbol weights_;
};

/// Adds domain constraints.
MonomialOperator restrict_to(const MonomialOperator& t, std::span<const GrowthSymbol> constraints);

MonomialOperator adjoint(const MonomialOperator& t);
/// A·B, with domain {x ∈ D(B) : Bx ∈ D(A)}.
MonomialOperator compose(const MonomialOperator& a, const MonomialOperator& b);
/// Maximal operator with the same symbol and shift.
MonomialOperator closure(const MonomialOperator& t);
/// T⁻¹ on R(T). Requires T injective with dense range.
MonomialOperator inverse(const MonomialOperator& t);

enum class Verdict { Equal, ProperSubset, ProperSuperset, Incomparable };
std::string_view to_string(Verdict v);

struct ComparisonVerdict {
  Verdict verdict = Verdict::Equal;
  /// Set when the verdict is not Equal.
  std::optional<DomainWitness> domain_witness;
  std::string witness;
};

/// S against T as operators (graph inclusion).
ComparisonVerdict compare(const MonomialOperator& s, const MonomialOperator& t);

/// S ⊆ T as graphs.
bool is_restriction_of(const MonomialOperator& s, const MonomialOperator& t);

struct OperatorProperties {
  bool densely_defined = true;
  bool closeable = true;
  bool closed = false;
  bool bounded = false;
  bool symmetric = false;
  bool selfadjoint = false;
  bool normal = false;
  bool quasinormal = false;
  bool unitary = false;
  bool invertible_bounded = false;
  bool injective_unbounded_inverse = false;
  bool injective = false;
  bool dense_range = false;
  /// nullopt means infinite.
  std::optional<std::uint64_t> kernel_dimension;
  std::optional<std::uint64_t> cokernel_dimension;

  std::string str() const;
};

OperatorProperties properties(const MonomialOperator& t);

bool is_closed(const MonomialOperator& t);
bool is_normal(const MonomialOperator& t);
bool is_selfadjoint(const MonomialOperator& t);
bool is_symmetric(const MonomialOperator& t);
bool is_quasinormal(const MonomialOperator& t);
bool is_unitary(const MonomialOperator& t);
bool is_injective(const MonomialOperator& t);
bool has_dense_range(const MonomialOperator& t);
/// Closed, bijective, with bounded inverse.
bool is_invertible_bounded(const MonomialOperator& t);
/// Everywhere defined and bounded.
bool is_bounded_everywhere(const MonomialOperator& t);

struct PolarDecomposition {
  MonomialOperator partial_isometry;
  MonomialOperator modulus;
  /// True when the input was not closed and its closure was decomposed.
  bool used_closure = false;
};

PolarDecomposition polar(const MonomialOperator& t);

/// B is T-bounded: D(T) ⊆ D(B) and ‖Bx‖ ≤ a‖x‖ + b‖Tx‖ on D(T).
DomainVerdict rel_bounded(const MonomialOperator& b, const MonomialOperator& t);

}  // namespace opcalc
