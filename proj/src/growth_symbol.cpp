#include "opcalc/growth_symbol.hpp"

#include "opcalc/lexer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace opcalc {

std::string_view to_string(Space space) { return space == Space::Unilateral ? "unilateral" : "bilateral"; }

std::int64_t floor_mod(std::int64_t n, std::int64_t m) {
  std::int64_t r = n % m;
  return r < 0 ? r + m : r;
}

std::int64_t lcm_period(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

namespace {

bool is_half_integer(const Rational& q) { return q.get_den() == 1 || q.get_den() == 2; }

// Base value of a factor at n; nullopt where a linear base is nonpositive.
std::optional<Rational> factor_base(const PowerFactor& f, std::int64_t n) {
  Rational v = Rational(static_cast<long>(n)) + f.offset;
  if (f.is_linear()) {
    if (sgn(v) <= 0) return std::nullopt;
    return v;
  }
  return v * v + f.quadratic;
}

RadicalComplex half_power(const Rational& v, const Rational& exponent) {
  // exponent = m/2
  Rational twice = exponent * 2;
  long m = twice.get_num().get_si();
  long whole = m >= 0 ? m / 2 : -((-m + 1) / 2);
  RadicalComplex out(rational_pow(v, whole));
  if (m - 2 * whole == 1) out = out * RadicalComplex::sqrt_of(v);
  return out;
}

long double ld(const Rational& q) { return static_cast<long double>(q.get_d()); }

// Exponential rate then polynomial degree of |a_n| along one direction.
struct Rate {
  Rational base;
  Rational degree;
  friend bool operator<(const Rate& a, const Rate& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.degree < b.degree;
  }
  friend bool operator==(const Rate& a, const Rate& b) { return a.base == b.base && a.degree == b.degree; }
};

Rate rate(const GrowthSymbol& a, int direction) {
  if (direction > 0) return {a.base(), a.degree()};
  return {1 / a.base(), a.degree()};
}

std::vector<int> directions(Space space) {
  if (space == Space::Unilateral) return {1};
  return {1, -1};
}

std::string rate_str(const Rate& r, int direction) {
  std::string out;
  if (r.base != 1) out += to_string(r.base) + "^|n|";
  if (r.degree != 0) out += (out.empty() ? "" : "·") + std::string("|n|^") + to_string(r.degree);
  if (out.empty()) out = "const";
  return std::string(direction > 0 ? "n→+∞: " : "n→-∞: ") + out;
}

long double log_abs_at(const GrowthSymbol& a, std::int64_t n) {
  auto it = a.overrides().find(n);
  if (it != a.overrides().end()) return it->second.log_abs();
  return a.log_abs_formula(n);
}

void check_same_space(const GrowthSymbol& a, const GrowthSymbol& b) {
  if (a.space() != b.space()) throw ModelError("symbols live on different spaces");
}

}  // namespace

GrowthSymbol GrowthSymbol::make(Parts p) {
  GrowthSymbol s;
  s.space_ = p.space;
  if (p.space == Space::Bilateral && !p.factors.empty())
    throw ModelError("bilateral symbols cannot carry polynomial factors");
  if (sgn(p.base) <= 0) throw ModelError("exponential base must be positive");
  if (p.residues.empty()) p.residues.push_back(RadicalComplex(1));
  for (auto& r : p.residues) r = r * p.coeff;

  // Merge factors with equal (offset, quadratic).
  std::vector<PowerFactor> merged;
  for (const auto& f : p.factors) {
    if (!is_half_integer(f.exponent)) throw ModelError("factor exponents must be multiples of 1/2");
    if (sgn(f.quadratic) < 0) throw ModelError("quadratic factor needs a positive constant");
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const PowerFactor& g) { return g.offset == f.offset && g.quadratic == f.quadratic; });
    if (it == merged.end())
      merged.push_back(f);
    else
      it->exponent += f.exponent;
  }
  std::erase_if(merged, [](const PowerFactor& f) { return sgn(f.exponent) == 0; });
  std::sort(merged.begin(), merged.end(), [](const PowerFactor& a, const PowerFactor& b) {
    if (a.quadratic != b.quadratic) return a.quadratic < b.quadratic;
    return a.offset < b.offset;
  });

  // Minimal period.
  std::size_t q = p.residues.size();
  std::size_t period = q;
  for (std::size_t d = 1; d < q; ++d) {
    if (q % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < q && ok; ++i) ok = p.residues[i] == p.residues[i % d];
    if (ok) {
      period = d;
      break;
    }
  }
  p.residues.resize(period);

  bool all_zero = std::all_of(p.residues.begin(), p.residues.end(), [](const RadicalComplex& r) { return r.is_zero(); });
  if (all_zero) {
    merged.clear();
    p.base = 1;
  }
  s.factors_ = std::move(merged);
  s.base_ = p.base;
  if (period == 1) {
    s.coeff_ = p.residues[0];
    s.residues_ = {RadicalComplex(1)};
  } else {
    s.coeff_ = RadicalComplex(1);
    s.residues_ = std::move(p.residues);
  }

  for (auto& [n, v] : p.overrides) {
    if (!s.contains_index(n)) throw ModelError("override index " + std::to_string(n) + " outside the index set");
    auto f = s.formula_at(n);
    if (f && *f == v) continue;
    s.overrides_.emplace(n, v);
  }

  // Every index where the formula is undefined needs an override.
  if (s.space_ == Space::Unilateral) {
    for (const auto& f : s.factors_) {
      if (!f.is_linear() || sgn(f.offset) > 0) continue;
      Rational limit = -f.offset;  // n + offset <= 0  <=>  n <= -offset
      Integer hi = limit.get_num() / limit.get_den();
      if (hi > 1 << 20) throw ModelError("factor undefined on too many indices");
      for (long n = 0; n <= hi.get_si(); ++n) {
        if (s.class_constant(n).is_zero()) continue;
        if (!s.overrides_.count(n))
          throw ModelError("symbol undefined at index " + std::to_string(n) + " (add an override)");
      }
    }
  }
  if (s.overrides_.size() > kMaxOverrides)
    throw ModelError("override capacity exceeded (" + std::to_string(s.overrides_.size()) + " > " +
                     std::to_string(kMaxOverrides) + ")");
  return s;
}

GrowthSymbol GrowthSymbol::constant(Space space, const RadicalComplex& value) {
  Parts p;
  p.space = space;
  p.coeff = value;
  return make(std::move(p));
}

GrowthSymbol::Parts GrowthSymbol::parts() const {
  return Parts{space_, coeff_, residues_, factors_, base_, overrides_};
}

RadicalComplex GrowthSymbol::class_constant(std::int64_t residue) const {
  return coeff_ * residues_[static_cast<std::size_t>(floor_mod(residue, period()))];
}

std::optional<RadicalComplex> GrowthSymbol::formula_at(std::int64_t n) const {
  RadicalComplex c = class_constant(n);
  if (c.is_zero()) return RadicalComplex();
  for (const auto& f : factors_) {
    auto v = factor_base(f, n);
    if (!v) return std::nullopt;
    c = c * half_power(*v, f.exponent);
  }
  if (base_ != 1) c = c * rational_pow(base_, n);
  return c;
}

RadicalComplex GrowthSymbol::at(std::int64_t n) const {
  if (!contains_index(n)) throw ModelError("index " + std::to_string(n) + " outside the unilateral index set");
  auto it = overrides_.find(n);
  if (it != overrides_.end()) return it->second;
  auto v = formula_at(n);
  if (!v) throw ModelError("symbol undefined at index " + std::to_string(n));
  return *v;
}

Rational GrowthSymbol::degree() const {
  Rational d = 0;
  for (const auto& f : factors_) d += f.is_linear() ? f.exponent : f.exponent * 2;
  return d;
}

long double GrowthSymbol::log_abs_formula(std::int64_t n) const {
  long double out = class_constant(n).log_abs();
  if (std::isinf(out)) return out;
  long double nn = static_cast<long double>(n);
  for (const auto& f : factors_) {
    long double v = nn + ld(f.offset);
    if (!f.is_linear()) v = v * v + ld(f.quadratic);
    out += ld(f.exponent) * std::log(v);
  }
  if (base_ != 1) out += nn * opcalc::log_abs(base_);
  return out;
}

bool GrowthSymbol::is_zero() const {
  if (!coeff_.is_zero()) {
    for (const auto& r : residues_)
      if (!r.is_zero()) return false;
  }
  for (const auto& [n, v] : overrides_)
    if (!v.is_zero()) return false;
  return true;
}

std::int64_t GrowthSymbol::min_override() const { return overrides_.empty() ? 0 : overrides_.begin()->first; }
std::int64_t GrowthSymbol::max_override() const { return overrides_.empty() ? 0 : overrides_.rbegin()->first; }

std::string GrowthSymbol::str() const {
  std::string out = coeff_.str();
  if (period() > 1) {
    out += " * per(" + std::to_string(period()) + ";";
    for (std::size_t i = 0; i < residues_.size(); ++i) out += (i ? ", " : " ") + residues_[i].str();
    out += ")";
  }
  for (const auto& f : factors_) {
    if (f.is_linear())
      out += " * pow(" + to_string(f.offset) + "," + to_string(f.exponent) + ")";
    else
      out += " * qpow(" + to_string(f.offset) + "," + to_string(f.quadratic) + "," + to_string(f.exponent) + ")";
  }
  if (base_ != 1) out += " * exp(" + to_string(base_) + ")";
  if (!overrides_.empty()) {
    out += " @ {";
    bool first = true;
    for (const auto& [n, v] : overrides_) {
      out += (first ? "" : ", ") + std::to_string(n) + ": " + v.str();
      first = false;
    }
    out += "}";
  }
  return out;
}

bool operator==(const GrowthSymbol& a, const GrowthSymbol& b) {
  if (a.space_ != b.space_ || a.base_ != b.base_ || a.factors_ != b.factors_) return false;
  if (a.residues_.size() != b.residues_.size() || !(a.coeff_ == b.coeff_)) return false;
  for (std::size_t i = 0; i < a.residues_.size(); ++i)
    if (!(a.residues_[i] == b.residues_[i])) return false;
  if (a.overrides_.size() != b.overrides_.size()) return false;
  for (auto ia = a.overrides_.begin(), ib = b.overrides_.begin(); ia != a.overrides_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

// ---- combinators -------------------------------------------------------------

GrowthSymbol mul(const GrowthSymbol& a, const GrowthSymbol& b) {
  check_same_space(a, b);
  GrowthSymbol::Parts p;
  p.space = a.space();
  p.coeff = RadicalComplex(1);
  std::int64_t L = lcm_period(a.period(), b.period());
  for (std::int64_t i = 0; i < L; ++i) p.residues.push_back(a.class_constant(i) * b.class_constant(i));
  p.factors = a.factors();
  p.factors.insert(p.factors.end(), b.factors().begin(), b.factors().end());
  p.base = a.base() * b.base();
  for (const auto& [n, v] : a.overrides()) p.overrides[n] = v * b.at(n);
  for (const auto& [n, v] : b.overrides()) p.overrides[n] = a.at(n) * v;
  return GrowthSymbol::make(std::move(p));
}

GrowthSymbol conj(const GrowthSymbol& a) {
  auto p = a.parts();
  p.coeff = p.coeff.conj();
  for (auto& r : p.residues) r = r.conj();
  for (auto& [n, v] : p.overrides) v = v.conj();
  return GrowthSymbol::make(std::move(p));
}

GrowthSymbol abs(const GrowthSymbol& a) {
  auto p = a.parts();
  p.coeff = p.coeff.modulus();
  for (auto& r : p.residues) r = r.modulus();
  for (auto& [n, v] : p.overrides) v = v.modulus();
  return GrowthSymbol::make(std::move(p));
}

GrowthSymbol scale(const GrowthSymbol& a, const RadicalComplex& c) {
  auto p = a.parts();
  p.coeff = p.coeff * c;
  for (auto& [n, v] : p.overrides) v = v * c;
  return GrowthSymbol::make(std::move(p));
}

GrowthSymbol shift(const GrowthSymbol& a, std::int64_t j) {
  if (j == 0) return a;
  GrowthSymbol::Parts p;
  p.space = a.space();
  p.coeff = RadicalComplex(rational_pow(a.base(), -j));
  for (std::int64_t i = 0; i < a.period(); ++i) p.residues.push_back(a.class_constant(i - j));
  for (auto f : a.factors()) {
    f.offset -= j;
    p.factors.push_back(f);
  }
  p.base = a.base();
  for (const auto& [n, v] : a.overrides()) {
    std::int64_t m = n + j;
    if (a.space() == Space::Unilateral && m < 0) continue;
    p.overrides[m] = v;
  }
  if (a.space() == Space::Unilateral && j > 0) {
    if (static_cast<std::size_t>(j) > kMaxOverrides)
      throw ModelError("shift by " + std::to_string(j) + " exceeds override capacity");
    for (std::int64_t n = 0; n < j; ++n) p.overrides[n] = RadicalComplex();
  }
  return GrowthSymbol::make(std::move(p));
}

GrowthSymbol reciprocal(const GrowthSymbol& a) {
  if (!zero_set(a).empty()) throw ModelError("reciprocal of a symbol with zeros");
  auto p = a.parts();
  p.coeff = p.coeff.inverse();
  for (auto& r : p.residues) r = r.inverse();
  for (auto& f : p.factors) f.exponent = -f.exponent;
  p.base = 1 / p.base;
  for (auto& [n, v] : p.overrides) v = v.inverse();
  return GrowthSymbol::make(std::move(p));
}

GrowthSymbol with_overrides(const GrowthSymbol& a, const std::map<std::int64_t, RadicalComplex>& values) {
  auto p = a.parts();
  for (const auto& [n, v] : values) p.overrides[n] = v;
  return GrowthSymbol::make(std::move(p));
}

GrowthSymbol support_mask(const GrowthSymbol& a) {
  GrowthSymbol::Parts p;
  p.space = a.space();
  for (std::int64_t i = 0; i < a.period(); ++i)
    p.residues.push_back(a.class_constant(i).is_zero() ? RadicalComplex() : RadicalComplex(1));
  for (const auto& [n, v] : a.overrides()) p.overrides[n] = v.is_zero() ? RadicalComplex() : RadicalComplex(1);
  return GrowthSymbol::make(std::move(p));
}

// ---- zero sets ---------------------------------------------------------------------

bool ZeroSet::contains(std::int64_t n) const {
  if (space == Space::Unilateral && n < 0) return false;
  if (points.count(n)) return true;
  if (exceptions.count(n)) return false;
  return std::find(zero_residues.begin(), zero_residues.end(), floor_mod(n, modulus)) != zero_residues.end();
}

std::vector<std::int64_t> ZeroSet::sample(std::size_t count) const {
  std::vector<std::int64_t> out;
  std::int64_t reach = modulus * static_cast<std::int64_t>(count + 1) + 1;
  for (auto p : points) reach = std::max(reach, std::abs(p) + 1);
  for (auto e : exceptions) reach = std::max(reach, std::abs(e) + modulus * static_cast<std::int64_t>(count + 1));
  for (std::int64_t r = 0; r <= reach && out.size() < count; ++r) {
    if (contains(r)) out.push_back(r);
    if (r > 0 && space == Space::Bilateral && out.size() < count && contains(-r)) out.push_back(-r);
  }
  return out;
}

std::string ZeroSet::str() const {
  if (empty()) return "{}";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto r : zero_residues) {
    os << (first ? "" : ", ") << "n ≡ " << r << " mod " << modulus;
    first = false;
  }
  if (!exceptions.empty()) {
    os << " except";
    for (auto e : exceptions) os << " " << e;
  }
  for (auto p : points) {
    os << (first ? "" : ", ") << p;
    first = false;
  }
  os << "}";
  return os.str();
}

ZeroSet zero_set(const GrowthSymbol& a) {
  ZeroSet z;
  z.space = a.space();
  z.modulus = a.period();
  for (std::int64_t i = 0; i < a.period(); ++i)
    if (a.class_constant(i).is_zero()) z.zero_residues.push_back(i);
  for (const auto& [n, v] : a.overrides()) {
    bool class_zero = a.class_constant(n).is_zero();
    if (class_zero && !v.is_zero()) z.exceptions.insert(n);
    if (!class_zero && v.is_zero()) z.points.insert(n);
  }
  return z;
}

SymbolClass classify(const GrowthSymbol& a) {
  SymbolClass out;
  out.zeros = zero_set(a);
  out.bounded = true;
  out.bounded_below = true;
  const Rate unit{Rational(1), Rational(0)};
  std::string growth;
  for (std::int64_t rho = 0; rho < a.period(); ++rho) {
    if (a.class_constant(rho).is_zero()) continue;
    for (int d : directions(a.space())) {
      Rate r = rate(a, d);
      if (unit < r) out.bounded = false;
      if (r < unit) out.bounded_below = false;
      if (!growth.empty()) growth += "; ";
      if (a.period() > 1) growth += "n ≡ " + std::to_string(rho) + " mod " + std::to_string(a.period()) + ", ";
      growth += rate_str(r, d);
    }
  }
  out.growth = growth.empty() ? "eventually zero" : growth;
  return out;
}

// ---- comparison --------------------------------------------------------------------

std::string GrowthWitness::str() const {
  std::ostringstream os;
  os << "n ≡ " << residue << " mod " << modulus << (direction > 0 ? ", n → +∞" : ", n → -∞") << ", n_k = [";
  for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? ", " : "") << indices[i];
  os << "]";
  return os.str();
}

long double log_growth_ratio(const GrowthSymbol& a, std::span<const GrowthSymbol> dominators, std::int64_t n) {
  long double la = log_abs_at(a, n);
  long double lb = -INFINITY;
  for (const auto& b : dominators) lb = std::max(lb, log_abs_at(b, n));
  long double denom = lb > 0 ? lb + std::log1p(std::exp(-lb)) : std::log1p(std::exp(lb));
  return la - denom;
}

namespace {

GrowthWitness find_witness(const GrowthSymbol& a, std::span<const GrowthSymbol> doms, std::int64_t modulus,
                           std::int64_t residue, int direction) {
  GrowthWitness w;
  w.modulus = modulus;
  w.residue = residue;
  w.direction = direction;
  // Start beyond every override so only formulas are involved.
  std::int64_t edge = direction > 0 ? std::max<std::int64_t>(a.max_override(), 0) : std::min<std::int64_t>(a.min_override(), 0);
  for (const auto& b : doms)
    edge = direction > 0 ? std::max(edge, b.max_override()) : std::min(edge, b.min_override());
  std::int64_t n0 = direction > 0 ? edge + 1 : edge - 1;
  n0 += floor_mod((residue - n0) * direction, modulus) * direction;
  const std::int64_t limit = std::int64_t(1) << 52;
  std::int64_t t = -1;
  for (std::size_t k = 1; k <= kWitnessLength; ++k) {
    long double target = std::log(static_cast<long double>(k));
    std::int64_t step = 1;
    t += 1;
    while (log_growth_ratio(a, doms, n0 + direction * modulus * t) < target) {
      t += step;
      step *= 2;
      if (t > limit / modulus) throw std::logic_error("growth witness search did not terminate");
    }
    w.indices.push_back(n0 + direction * modulus * t);
  }
  return w;
}

}  // namespace

GrowthVerdict growth_leq_any(const GrowthSymbol& a, std::span<const GrowthSymbol> dominators) {
  std::int64_t L = a.period();
  for (const auto& b : dominators) {
    check_same_space(a, b);
    L = lcm_period(L, b.period());
  }
  const Rate unit{Rational(1), Rational(0)};
  for (std::int64_t rho = 0; rho < L; ++rho) {
    if (a.class_constant(rho).is_zero()) continue;
    for (int d : directions(a.space())) {
      Rate best = unit;
      for (const auto& b : dominators) {
        if (b.class_constant(rho).is_zero()) continue;
        Rate rb = rate(b, d);
        if (best < rb) best = rb;
      }
      if (best < rate(a, d)) {
        GrowthVerdict v;
        v.holds = false;
        v.witness = find_witness(a, dominators, L, rho, d);
        return v;
      }
    }
  }
  return {};
}

GrowthVerdict growth_leq(const GrowthSymbol& a, const GrowthSymbol& b) {
  return growth_leq_any(a, std::span<const GrowthSymbol>(&b, 1));
}

// ---- text form -------------------------------------------------------------------

namespace {

RadicalComplex parse_coeff(Lexer& lex) {
  lex.expect_ident("coeff");
  lex.expect_punct('(');
  Rational x = lex.expect_rational();
  lex.expect_punct(',');
  Rational y = lex.expect_rational();
  lex.expect_punct(',');
  const Token& at = lex.peek();
  Rational s = lex.expect_rational();
  if (sgn(s) <= 0) lex.fail_at(at, "radicand must be positive");
  lex.expect_punct(')');
  return RadicalComplex(x, y, s);
}

// A bare rational or coeff(...).
RadicalComplex parse_scalar(Lexer& lex) {
  if (lex.is_ident("coeff")) return parse_coeff(lex);
  return RadicalComplex(lex.expect_rational());
}

}  // namespace

GrowthSymbol parse_symbol(Lexer& lex, Space space) {
  const Token& start = lex.peek();
  GrowthSymbol::Parts p;
  p.space = space;
  p.coeff = parse_coeff(lex);
  bool seen_per = false, seen_exp = false;
  while (lex.is_punct('*') && lex.peek(1).kind == TokenKind::Identifier) {
    const std::string& word = lex.peek(1).text;
    if (word != "per" && word != "pow" && word != "qpow" && word != "exp") break;
    lex.next();
    const Token& tok = lex.next();
    lex.expect_punct('(');
    if (word == "per") {
      if (seen_per) lex.fail_at(tok, "duplicate per(...) factor");
      seen_per = true;
      const Token& qtok = lex.peek();
      std::int64_t q = lex.expect_int64();
      if (q < 1 || q > 4096) lex.fail_at(qtok, "period must lie in 1..4096");
      lex.expect_punct(';');
      for (std::int64_t i = 0; i < q; ++i) {
        if (i) lex.expect_punct(',');
        p.residues.push_back(parse_scalar(lex));
      }
    } else if (word == "pow") {
      PowerFactor f;
      f.offset = lex.expect_rational();
      lex.expect_punct(',');
      f.exponent = lex.expect_rational();
      p.factors.push_back(f);
    } else if (word == "qpow") {
      PowerFactor f;
      f.offset = lex.expect_rational();
      lex.expect_punct(',');
      const Token& qtok = lex.peek();
      f.quadratic = lex.expect_rational();
      if (sgn(f.quadratic) <= 0) lex.fail_at(qtok, "quadratic constant must be positive");
      lex.expect_punct(',');
      f.exponent = lex.expect_rational();
      p.factors.push_back(f);
    } else {
      if (seen_exp) lex.fail_at(tok, "duplicate exp(...) factor");
      seen_exp = true;
      const Token& btok = lex.peek();
      p.base = lex.expect_rational();
      if (sgn(p.base) <= 0) lex.fail_at(btok, "exponential base must be positive");
    }
    lex.expect_punct(')');
  }
  if (lex.accept_punct('@')) {
    lex.expect_punct('{');
    if (!lex.is_punct('}')) {
      do {
        const Token& itok = lex.peek();
        std::int64_t n = lex.expect_int64();
        if (p.overrides.count(n)) lex.fail_at(itok, "duplicate override index");
        lex.expect_punct(':');
        p.overrides.emplace(n, parse_scalar(lex));
      } while (lex.accept_punct(','));
    }
    lex.expect_punct('}');
  }
  try {
    return GrowthSymbol::make(std::move(p));
  } catch (const ModelError& e) {
    lex.fail_at(start, e.what());
  }
}

GrowthSymbol parse_symbol(std::string_view text, Space space) {
  Lexer lex(text, false);
  GrowthSymbol s = parse_symbol(lex, space);
  if (!lex.at_end()) lex.fail("trailing input after symbol", {"end of input"});
  return s;
}

}  // namespace opcalc
