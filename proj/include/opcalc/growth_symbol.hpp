#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opcalc/radical_complex.hpp"

namespace opcalc {

/// Index set of the sequence space: ℕ (unilateral) or ℤ (bilateral).
enum class Space { Unilateral, Bilateral };

std::string_view to_string(Space space);

/// (n + offset)^exponent when quadratic == 0, otherwise
/// ((n + offset)^2 + quadratic)^exponent. Exponents are half-integers so
/// every value stays inside RadicalComplex.
struct PowerFactor {
  Rational offset;
  Rational quadratic;
  Rational exponent;

  bool is_linear() const { return sgn(quadratic) == 0; }
  friend bool operator==(const PowerFactor&, const PowerFactor&) = default;
};

inline constexpr std::size_t kMaxOverrides = 64;

/// Symbolic sequence n ↦ coeff · residue[n mod q] · Π factors(n) · baseⁿ with
/// finitely many overridden indices.
///
/// Canonical form: factors merged and sorted, residues at minimal period with
/// the coefficient folded in (coeff == 1 whenever the period exceeds one),
/// overrides only where they differ from the formula or where the formula is
/// undefined. Equality of canonical forms is pointwise equality.
class GrowthSymbol {
 public:
  struct Parts {
    Space space = Space::Unilateral;
    RadicalComplex coeff = RadicalComplex(1);
    std::vector<RadicalComplex> residues;  // empty means period 1 with multiplier 1
    std::vector<PowerFactor> factors;
    Rational base = 1;
    std::map<std::int64_t, RadicalComplex> overrides;
  };

  /// The zero symbol on ℕ.
  GrowthSymbol() : residues_{RadicalComplex(1)} {}

  static GrowthSymbol make(Parts parts);
  static GrowthSymbol constant(Space space, const RadicalComplex& value);
  static GrowthSymbol zero(Space space) { return constant(space, RadicalComplex()); }
  static GrowthSymbol one(Space space) { return constant(space, RadicalComplex(1)); }

  Space space() const { return space_; }
  const RadicalComplex& coeff() const { return coeff_; }
  const std::vector<RadicalComplex>& residues() const { return residues_; }
  std::int64_t period() const { return static_cast<std::int64_t>(residues_.size()); }
  const std::vector<PowerFactor>& factors() const { return factors_; }
  const Rational& base() const { return base_; }
  const std::map<std::int64_t, RadicalComplex>& overrides() const { return overrides_; }
  Parts parts() const;

  bool contains_index(std::int64_t n) const { return space_ == Space::Bilateral || n >= 0; }

  /// Exact value; overrides take precedence. Throws ModelError outside the space.
  RadicalComplex at(std::int64_t n) const;

  /// The formula without overrides; nullopt where a linear factor base is ≤ 0.
  std::optional<RadicalComplex> formula_at(std::int64_t n) const;

  /// coeff · residue[r mod period].
  RadicalComplex class_constant(std::int64_t residue) const;

  /// Total polynomial degree (linear exponents plus twice quadratic ones).
  Rational degree() const;

  /// log|formula(n)| in extended precision for indices where it is defined.
  long double log_abs_formula(std::int64_t n) const;

  bool is_zero() const;

  std::int64_t min_override() const;
  std::int64_t max_override() const;

  /// Canonical literal in the symbol grammar.
  std::string str() const;

  friend bool operator==(const GrowthSymbol& a, const GrowthSymbol& b);
  friend bool operator<(const GrowthSymbol& a, const GrowthSymbol& b) { return a.str() < b.str(); }

 private:
  Space space_ = Space::Unilateral;
  RadicalComplex coeff_;
  std::vector<RadicalComplex> residues_;
  std::vector<PowerFactor> factors_;
  Rational base_ = 1;
  std::map<std::int64_t, RadicalComplex> overrides_;
};

std::int64_t floor_mod(std::int64_t n, std::int64_t m);
std::int64_t lcm_period(std::int64_t a, std::int64_t b);

// ---- combinators ---------------------------------------------------------

GrowthSymbol mul(const GrowthSymbol& a, const GrowthSymbol& b);
GrowthSymbol conj(const GrowthSymbol& a);
GrowthSymbol abs(const GrowthSymbol& a);
/// σʲ(a)_n = a_{n-j}; on ℕ the indices pushed in from the left become zero.
GrowthSymbol shift(const GrowthSymbol& a, std::int64_t j);
/// Pointwise 1/a; requires an empty zero set.
GrowthSymbol reciprocal(const GrowthSymbol& a);
/// a with the given indices forced to the given values.
GrowthSymbol with_overrides(const GrowthSymbol& a, const std::map<std::int64_t, RadicalComplex>& values);
/// 1 where a ≠ 0, 0 where a = 0.
GrowthSymbol support_mask(const GrowthSymbol& a);
/// c · a.
GrowthSymbol scale(const GrowthSymbol& a, const RadicalComplex& c);

// ---- zero sets and classification ------------------------------------------

/// Exact zero set: whole residue classes mod `modulus` minus finitely many
/// exceptions, plus finitely many isolated points.
struct ZeroSet {
  Space space = Space::Unilateral;
  std::int64_t modulus = 1;
  std::vector<std::int64_t> zero_residues;
  std::set<std::int64_t> exceptions;
  std::set<std::int64_t> points;

  bool empty() const { return zero_residues.empty() && points.empty(); }
  bool finite() const { return zero_residues.empty(); }
  bool contains(std::int64_t n) const;
  /// Smallest |n| members first, up to `count` of them.
  std::vector<std::int64_t> sample(std::size_t count) const;
  std::string str() const;
};

ZeroSet zero_set(const GrowthSymbol& a);

struct SymbolClass {
  bool bounded = false;
  /// inf |a_n| over the support is positive.
  bool bounded_below = false;
  ZeroSet zeros;
  std::string growth;
};

SymbolClass classify(const GrowthSymbol& a);

// ---- asymptotic comparison -------------------------------------------------

/// A subsequence n_1, n_2, … along one residue class and direction on which
/// |a_{n_k}| / (1 + |b_{n_k}|) ≥ k.
struct GrowthWitness {
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  int direction = 1;
  std::vector<std::int64_t> indices;
  std::string str() const;
};

struct GrowthVerdict {
  bool holds = true;
  std::optional<GrowthWitness> witness;
  explicit operator bool() const { return holds; }
};

inline constexpr std::size_t kWitnessLength = 20;

/// ∃C: |a_n| ≤ C(1 + |b_n|) for every n.
GrowthVerdict growth_leq(const GrowthSymbol& a, const GrowthSymbol& b);

/// ∃C: |a_n| ≤ C(1 + max_i |b⁽ⁱ⁾_n|) for every n. An empty list means the
/// constant 1.
GrowthVerdict growth_leq_any(const GrowthSymbol& a, std::span<const GrowthSymbol> dominators);

/// log(|a_n| / (1 + max_i |b⁽ⁱ⁾_n|)) evaluated through log magnitudes.
long double log_growth_ratio(const GrowthSymbol& a, std::span<const GrowthSymbol> dominators, std::int64_t n);

// ---- text form ---------------------------------------------------------------

/// Parses the symbol literal grammar:
/// coeff(x,y,s) [* per(q; c0,...)] [* pow(r,p)]* [* qpow(r,q,p)]* [* exp(b)] [@ {i: coeff(...), ...}]
GrowthSymbol parse_symbol(std::string_view text, Space space);

class Lexer;
/// Same grammar, reading from a token stream positioned at `coeff`.
GrowthSymbol parse_symbol(Lexer& lex, Space space);

}  // namespace opcalc
