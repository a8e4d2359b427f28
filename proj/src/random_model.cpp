#include "opcalc/random_model.hpp"

#include <limits>

namespace opcalc {

std::int64_t ModelRng::uniform(std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the mapping exactly uniform.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

bool ModelRng::chance(std::uint64_t num, std::uint64_t den) {
  return static_cast<std::uint64_t>(uniform(0, static_cast<std::int64_t>(den) - 1)) < num;
}

Space random_space(ModelRng& rng) { return rng.chance(1, 2) ? Space::Unilateral : Space::Bilateral; }

namespace {

RadicalComplex random_unimodular(ModelRng& rng) {
  static const RadicalComplex values[] = {
      RadicalComplex(1), RadicalComplex(-1), RadicalComplex(0, 1), RadicalComplex(0, -1),
      RadicalComplex(make_rational(3, 5), make_rational(4, 5)), RadicalComplex(make_rational(1, 2), make_rational(1, 2), 2),
  };
  return rng.pick(values);
}

Rational random_half_integer(ModelRng& rng, std::int64_t reach) { return make_rational(rng.uniform(-2 * reach, 2 * reach), 2); }

}  // namespace

RadicalComplex random_scalar(ModelRng& rng, bool allow_zero) {
  if (allow_zero && rng.chance(1, 6)) return {};
  static const std::int64_t radicands[] = {1, 1, 1, 2, 3, 5};
  Rational x = make_rational(rng.uniform(-4, 4), rng.uniform(1, 3));
  Rational y = rng.chance(1, 3) ? make_rational(rng.uniform(-3, 3), rng.uniform(1, 2)) : Rational(0);
  if (sgn(x) == 0 && sgn(y) == 0) x = 1;
  return RadicalComplex(x, y, Rational(static_cast<long>(rng.pick(radicands))));
}

GrowthSymbol random_symbol(ModelRng& rng, Space space, const SymbolOptions& options) {
  GrowthSymbol::Parts p;
  p.space = space;
  auto value = [&] { return options.unimodular ? random_unimodular(rng) : random_scalar(rng, options.allow_zeros); };
  std::int64_t period = rng.chance(2, 3) ? 1 : rng.uniform(2, 3);
  for (std::int64_t i = 0; i < period; ++i) p.residues.push_back(value());
  if (options.allow_growth && !options.unimodular) {
    if (space == Space::Unilateral) {
      static const std::int64_t offsets[] = {1, 1, 2, 3};
      std::int64_t count = rng.uniform(0, 2);
      for (std::int64_t i = 0; i < count; ++i) {
        PowerFactor f;
        if (rng.chance(1, 4)) {
          f.quadratic = rng.uniform(1, 2);
          f.offset = rng.uniform(0, 1);
          f.exponent = random_half_integer(rng, 1);
        } else {
          f.offset = make_rational(rng.pick(offsets) * 2 - rng.uniform(0, 1), 2);
          f.exponent = random_half_integer(rng, 2);
        }
        p.factors.push_back(f);
      }
    }
    static const std::int64_t bases[][2] = {{1, 1}, {1, 1}, {1, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 2}, {2, 3}};
    if (rng.chance(1, 3)) {
      const auto& b = rng.pick(bases);
      p.base = make_rational(b[0], b[1]);
    }
  }
  std::int64_t overrides = rng.chance(1, 2) ? 0 : rng.uniform(1, 2);
  std::int64_t lo = space == Space::Unilateral ? 0 : -6;
  for (std::int64_t i = 0; i < overrides; ++i) p.overrides[rng.uniform(lo, 6)] = value();
  return GrowthSymbol::make(std::move(p));
}

MonomialOperator random_operator(ModelRng& rng, Space space, OperatorFamily family) {
  if (family == OperatorFamily::Any) {
    static const OperatorFamily families[] = {OperatorFamily::Diagonal,  OperatorFamily::Unitary,
                                              OperatorFamily::Normal,    OperatorFamily::BoundedInvertible,
                                              OperatorFamily::DenseRange, OperatorFamily::Restricted,
                                              OperatorFamily::Restricted, OperatorFamily::DenseRange};
    if (rng.chance(1, 3)) {
      SymbolOptions opts;
      return MonomialOperator::make(random_symbol(rng, space, opts), rng.uniform(-2, 2));
    }
    family = rng.pick(families);
  }
  std::int64_t reach = space == Space::Unilateral ? 2 : 3;
  switch (family) {
    case OperatorFamily::Diagonal:
      return MonomialOperator::diagonal(random_symbol(rng, space));
    case OperatorFamily::Unitary: {
      SymbolOptions opts;
      opts.unimodular = true;
      std::int64_t k = space == Space::Bilateral ? rng.uniform(-reach, reach) : 0;
      return MonomialOperator::make(random_symbol(rng, space, opts), k);
    }
    case OperatorFamily::Normal: {
      // |a| invariant under the shift: a unimodular symbol times a positive constant.
      SymbolOptions opts;
      opts.unimodular = true;
      std::int64_t k = space == Space::Bilateral ? rng.uniform(-reach, reach) : 0;
      GrowthSymbol a = random_symbol(rng, space, opts);
      if (k == 0) return MonomialOperator::diagonal(random_symbol(rng, space));
      return MonomialOperator::make(scale(a, RadicalComplex(make_rational(rng.uniform(1, 5), rng.uniform(1, 3)))), k);
    }
    case OperatorFamily::BoundedInvertible: {
      SymbolOptions opts;
      opts.allow_zeros = false;
      opts.allow_growth = false;
      GrowthSymbol a = random_symbol(rng, space, opts);
      if (space == Space::Unilateral && rng.chance(1, 3)) {
        // (n+1)/(n+2) is bounded above and below.
        auto p = a.parts();
        p.factors.push_back({Rational(1), Rational(0), Rational(1)});
        p.factors.push_back({Rational(2), Rational(0), Rational(-1)});
        a = GrowthSymbol::make(std::move(p));
      }
      std::int64_t k = space == Space::Bilateral ? rng.uniform(-reach, reach) : 0;
      return MonomialOperator::make(a, k);
    }
    case OperatorFamily::DenseRange: {
      SymbolOptions opts;
      opts.allow_zeros = false;
      std::int64_t k = space == Space::Bilateral ? rng.uniform(-reach, reach) : rng.uniform(-reach, 0);
      return MonomialOperator::make(random_symbol(rng, space, opts), k);
    }
    case OperatorFamily::Restricted: {
      MonomialOperator base = random_operator(rng, space, rng.chance(1, 2) ? OperatorFamily::Diagonal : OperatorFamily::DenseRange);
      std::vector<GrowthSymbol> cs;
      std::int64_t count = rng.uniform(1, 2);
      for (std::int64_t i = 0; i < count; ++i) cs.push_back(random_symbol(rng, space));
      return restrict_to(base, cs);
    }
    case OperatorFamily::Any:
      break;
  }
  return MonomialOperator::identity(space);
}

MonomialOperator random_operator(ModelRng& rng, OperatorFamily family) {
  Space space = random_space(rng);
  return random_operator(rng, space, family);
}

}  // namespace opcalc
