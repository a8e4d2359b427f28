#include "opcalc/operator_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace opcalc {

// ---- domains -------------------------------------------------------------------

std::vector<std::pair<std::int64_t, long double>> DomainWitness::log_entries() const {
  std::vector<std::pair<std::int64_t, long double>> out;
  for (std::size_t k = 0; k < growth.indices.size(); ++k) {
    std::int64_t n = growth.indices[k];
    long double lm = -INFINITY;
    for (const auto& c : source) {
      auto it = c.overrides().find(n);
      lm = std::max(lm, it != c.overrides().end() ? it->second.log_abs() : c.log_abs_formula(n));
    }
    long double log_one_plus = lm > 0 ? lm + std::log1p(std::exp(-lm)) : std::log1p(std::exp(lm));
    out.emplace_back(n, -std::log(static_cast<long double>(k + 1)) - log_one_plus);
  }
  return out;
}

std::string DomainWitness::str() const {
  std::ostringstream os;
  os << "x_n = 1/(k(1+M(n))) at n = n_k, 0 elsewhere; lies in the first domain but "
     << "Σ|c_n x_n|² diverges for c = " << constraint.str() << "; " << growth.str();
  return os.str();
}

DomainVerdict domain_leq(std::span<const GrowthSymbol> d1, std::span<const GrowthSymbol> d2) {
  for (const auto& c : d2) {
    auto v = growth_leq_any(c, d1);
    if (!v.holds) {
      DomainVerdict out;
      out.holds = false;
      out.witness = DomainWitness{c, std::vector<GrowthSymbol>(d1.begin(), d1.end()), *v.witness};
      return out;
    }
  }
  return {};
}

// ---- construction -----------------------------------------------------------------

namespace {

std::vector<GrowthSymbol> normalise_constraints(const GrowthSymbol& w, std::vector<GrowthSymbol> cs) {
  for (auto& c : cs) {
    if (c.space() != w.space()) throw ModelError("domain constraint lives on a different space");
    c = abs(c);
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  for (std::size_t i = 0; i < cs.size();) {
    std::vector<GrowthSymbol> others{w};
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (j != i) others.push_back(cs[j]);
    if (growth_leq_any(cs[i], others).holds)
      cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return cs;
}

std::string constraint_suffix(const std::vector<GrowthSymbol>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? " & dom(" : " on dom(") + cs[i].str() + ")";
  return out;
}

}  // namespace

MonomialOperator MonomialOperator::make(GrowthSymbol symbol, std::int64_t shift, std::vector<GrowthSymbol> constraints) {
  MonomialOperator t;
  Space space = symbol.space();
  if (space == Space::Unilateral && shift > 0) {
    if (static_cast<std::size_t>(shift) > kMaxOverrides)
      throw ModelError("unilateral shift " + std::to_string(shift) + " exceeds override capacity");
    std::map<std::int64_t, RadicalComplex> zeros;
    for (std::int64_t n = 0; n < shift; ++n) zeros[n] = RadicalComplex();
    symbol = with_overrides(symbol, zeros);
  }
  if (symbol.is_zero()) {
    symbol = GrowthSymbol::zero(space);
    shift = 0;
  }
  t.symbol_ = std::move(symbol);
  t.shift_ = shift;
  t.weights_ = opcalc::shift(t.symbol_, -shift);
  t.constraints_ = normalise_constraints(t.weights_, std::move(constraints));
  return t;
}

std::vector<GrowthSymbol> MonomialOperator::effective_domain() const {
  std::vector<GrowthSymbol> out{weights_};
  out.insert(out.end(), constraints_.begin(), constraints_.end());
  return out;
}

RadicalComplex MonomialOperator::entry(std::int64_t row, std::int64_t col) const {
  if (space() == Space::Unilateral && (row < 0 || col < 0)) return {};
  if (row - col != shift_) return {};
  return symbol_.at(row);
}

std::string MonomialOperator::str() const {
  std::string out = "diag(" + symbol_.str() + ")";
  if (shift_ != 0) out += ".shift(" + std::to_string(shift_) + ")";
  return out + constraint_suffix(constraints_);
}

MonomialOperator restrict_to(const MonomialOperator& t, std::span<const GrowthSymbol> constraints) {
  auto cs = t.constraints();
  cs.insert(cs.end(), constraints.begin(), constraints.end());
  return MonomialOperator::make(t.symbol(), t.shift(), std::move(cs));
}

// ---- algebra ------------------------------------------------------------------------

MonomialOperator adjoint(const MonomialOperator& t) { return MonomialOperator::make(conj(t.weights()), -t.shift()); }

MonomialOperator compose(const MonomialOperator& a, const MonomialOperator& b) {
  if (a.space() != b.space()) throw ModelError("cannot compose operators on different spaces");
  GrowthSymbol symbol = mul(a.symbol(), shift(b.symbol(), a.shift()));
  std::vector<GrowthSymbol> cs{b.weights()};
  cs.insert(cs.end(), b.constraints().begin(), b.constraints().end());
  for (const auto& c : a.constraints()) cs.push_back(mul(shift(c, -b.shift()), b.weights()));
  return MonomialOperator::make(std::move(symbol), a.shift() + b.shift(), std::move(cs));
}

MonomialOperator closure(const MonomialOperator& t) { return MonomialOperator::make(t.symbol(), t.shift()); }

MonomialOperator inverse(const MonomialOperator& t) {
  if (!is_injective(t)) throw ModelError("inverse of a non-injective operator");
  if (!has_dense_range(t)) throw ModelError("inverse would not be densely defined (range not dense)");
  std::vector<GrowthSymbol> cs;
  const GrowthSymbol inv_a = reciprocal(t.symbol());
  for (const auto& c : t.constraints()) cs.push_back(mul(shift(c, t.shift()), inv_a));
  return MonomialOperator::make(reciprocal(t.weights()), -t.shift(), std::move(cs));
}

// ---- comparison -----------------------------------------------------------------------

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::ProperSubset: return "proper-subset";
    case Verdict::ProperSuperset: return "proper-superset";
    case Verdict::Incomparable: return "incomparable";
  }
  return "?";
}

namespace {

// First basis vector on which the two actions differ.
std::string action_difference(const MonomialOperator& s, const MonomialOperator& t) {
  auto differs = [&](std::int64_t m) {
    RadicalComplex ws = s.weights().contains_index(m) ? s.weights().at(m) : RadicalComplex();
    RadicalComplex wt = t.weights().contains_index(m) ? t.weights().at(m) : RadicalComplex();
    if (s.shift() == t.shift()) return !(ws == wt);
    return !ws.is_zero() || !wt.is_zero();
  };
  constexpr std::int64_t kReach = 4096;
  for (std::int64_t r = 0; r <= kReach; ++r) {
    for (std::int64_t m : {r, -r}) {
      if (m < 0 && s.space() == Space::Unilateral) continue;
      if (differs(m)) return "S e_" + std::to_string(m) + " ≠ T e_" + std::to_string(m);
    }
  }
  return "symbols differ";
}

}  // namespace

ComparisonVerdict compare(const MonomialOperator& s, const MonomialOperator& t) {
  if (s.space() != t.space()) throw ModelError("cannot compare operators on different spaces");
  ComparisonVerdict out;
  if (!(s.symbol() == t.symbol()) || s.shift() != t.shift()) {
    out.verdict = Verdict::Incomparable;
    out.witness = action_difference(s, t);
    return out;
  }
  auto ds = s.effective_domain(), dt = t.effective_domain();
  auto le = domain_leq(ds, dt);
  auto ge = domain_leq(dt, ds);
  if (le.holds && ge.holds) {
    out.verdict = Verdict::Equal;
  } else if (le.holds) {
    out.verdict = Verdict::ProperSubset;
    out.domain_witness = ge.witness;
  } else if (ge.holds) {
    out.verdict = Verdict::ProperSuperset;
    out.domain_witness = le.witness;
  } else {
    out.verdict = Verdict::Incomparable;
    out.domain_witness = le.witness;
  }
  if (out.domain_witness) out.witness = out.domain_witness->str();
  return out;
}

bool is_restriction_of(const MonomialOperator& s, const MonomialOperator& t) {
  auto v = compare(s, t).verdict;
  return v == Verdict::Equal || v == Verdict::ProperSubset;
}

// ---- properties ---------------------------------------------------------------------

bool is_closed(const MonomialOperator& t) { return t.is_maximal(); }

bool is_symmetric(const MonomialOperator& t) { return is_restriction_of(t, adjoint(t)); }

bool is_selfadjoint(const MonomialOperator& t) { return compare(t, adjoint(t)).verdict == Verdict::Equal; }

bool is_normal(const MonomialOperator& t) {
  if (!is_closed(t)) return false;
  auto ts = adjoint(t);
  return compare(compose(ts, t), compose(t, ts)).verdict == Verdict::Equal;
}

bool is_quasinormal(const MonomialOperator& t) {
  auto tst = compose(adjoint(t), t);
  return compare(compose(t, tst), compose(tst, t)).verdict == Verdict::Equal;
}

bool is_unitary(const MonomialOperator& t) {
  return is_closed(t) && abs(t.weights()) == GrowthSymbol::one(t.space()) &&
         (t.space() == Space::Bilateral || t.shift() == 0);
}

bool is_injective(const MonomialOperator& t) { return zero_set(t.weights()).empty(); }

bool has_dense_range(const MonomialOperator& t) { return zero_set(t.symbol()).empty(); }

bool is_invertible_bounded(const MonomialOperator& t) {
  return is_closed(t) && is_injective(t) && has_dense_range(t) && classify(t.weights()).bounded_below;
}

bool is_bounded_everywhere(const MonomialOperator& t) { return is_closed(t) && classify(t.weights()).bounded; }

namespace {

std::optional<std::uint64_t> zero_count(const GrowthSymbol& a) {
  auto z = zero_set(a);
  if (!z.finite()) return std::nullopt;
  return z.points.size();
}

}  // namespace

OperatorProperties properties(const MonomialOperator& t) {
  OperatorProperties p;
  auto w = classify(t.weights());
  p.closed = is_closed(t);
  p.bounded = w.bounded;
  p.symmetric = is_symmetric(t);
  p.selfadjoint = is_selfadjoint(t);
  p.normal = is_normal(t);
  p.quasinormal = is_quasinormal(t);
  p.unitary = is_unitary(t);
  p.injective = w.zeros.empty();
  p.dense_range = has_dense_range(t);
  p.invertible_bounded = p.closed && p.injective && p.dense_range && w.bounded_below;
  p.injective_unbounded_inverse = p.injective && !w.bounded_below;
  p.kernel_dimension = zero_count(t.weights());
  p.cokernel_dimension = zero_count(t.symbol());
  return p;
}

std::string OperatorProperties::str() const {
  auto dim = [](const std::optional<std::uint64_t>& d) { return d ? std::to_string(*d) : std::string("inf"); };
  auto b = [](bool v) { return v ? "true" : "false"; };
  std::ostringstream os;
  os << "densely_defined=" << b(densely_defined) << " closeable=" << b(closeable) << " closed=" << b(closed)
     << " bounded=" << b(bounded) << " symmetric=" << b(symmetric) << " selfadjoint=" << b(selfadjoint)
     << " normal=" << b(normal) << " quasinormal=" << b(quasinormal) << " unitary=" << b(unitary)
     << " invertible_bounded=" << b(invertible_bounded) << " injective_unbounded_inverse="
     << b(injective_unbounded_inverse) << " kernel_dimension=" << dim(kernel_dimension)
     << " cokernel_dimension=" << dim(cokernel_dimension);
  return os.str();
}

// ---- polar decomposition and relative bounds ------------------------------------------

PolarDecomposition polar(const MonomialOperator& t) {
  PolarDecomposition out;
  out.used_closure = !is_closed(t);
  out.modulus = MonomialOperator::diagonal(abs(t.weights()));
  // Factors and the exponential part are positive, so a/|a| is the phase of
  // the periodic part away from overrides.
  const GrowthSymbol& a = t.symbol();
  GrowthSymbol::Parts q;
  q.space = a.space();
  for (std::int64_t i = 0; i < a.period(); ++i) q.residues.push_back(a.class_constant(i).unit());
  for (const auto& [n, v] : a.overrides()) q.overrides[n] = v.unit();
  GrowthSymbol unit_symbol = GrowthSymbol::make(std::move(q));
  out.partial_isometry = MonomialOperator::make(unit_symbol, t.shift());
  return out;
}

DomainVerdict rel_bounded(const MonomialOperator& b, const MonomialOperator& t) {
  if (b.space() != t.space()) throw ModelError("cannot relate operators on different spaces");
  auto dt = t.effective_domain(), db = b.effective_domain();
  auto inclusion = domain_leq(dt, db);
  if (!inclusion.holds) return inclusion;
  GrowthSymbol wt = t.weights();
  auto bound = growth_leq(b.weights(), wt);
  if (bound.holds) return {};
  DomainVerdict out;
  out.holds = false;
  out.witness = DomainWitness{b.weights(), {wt}, *bound.witness};
  return out;
}

}  // namespace opcalc
