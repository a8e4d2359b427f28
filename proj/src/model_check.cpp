#include "opcalc/model_check.hpp"

#include <set>
#include <sstream>

#include "opcalc/random_model.hpp"

namespace opcalc {

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

Truth truth(bool b) { return b ? Truth::True : Truth::False; }

// R(T) = R(T̄): every domain constraint is dominated by the weights on their
// support, so any preimage under T̄ supported there already lies in D(T).
bool range_matches_closure(const MonomialOperator& t) {
  GrowthSymbol mask = support_mask(t.weights());
  for (const auto& c : t.constraints())
    if (!growth_leq(mul(c, mask), t.weights()).holds) return false;
  return true;
}

bool closed_range(const MonomialOperator& t) {
  if (!classify(t.weights()).bounded_below) return false;
  return is_closed(t) || range_matches_closure(t);
}

}  // namespace

std::optional<MonomialOperator> ModelEvaluator::term(const Term& t) {
  const std::string key = t.str();
  if (auto it = cache_.find(key); it != cache_.end()) {
    if (!it->second) reason_ = "cannot form " + key;
    return it->second;
  }
  std::optional<MonomialOperator> out;
  if (t.kind() == Term::Kind::Atom) {
    auto it = atoms_.find(t.name());
    if (it == atoms_.end()) throw InferenceError("unbound operator '" + t.name() + "'");
    out = it->second;
  } else {
    std::vector<MonomialOperator> args;
    for (std::size_t i = 0; i < t.arity(); ++i) {
      auto a = term(t.arg(i));
      if (!a) {
        cache_.emplace(key, std::nullopt);
        return std::nullopt;
      }
      args.push_back(std::move(*a));
    }
    try {
      switch (t.kind()) {
        case Term::Kind::Adjoint: out = adjoint(args[0]); break;
        case Term::Kind::Closure: out = closure(args[0]); break;
        case Term::Kind::Compose:
          if (args[0].space() != args[1].space()) throw ModelError("operators on different spaces");
          out = compose(args[0], args[1]);
          break;
        case Term::Kind::Inverse:
          if (!is_injective(args[0]) || !has_dense_range(args[0]))
            throw ModelError("inverse needs an injective operator with dense range");
          out = inverse(args[0]);
          break;
        case Term::Kind::Abs: out = polar(args[0]).modulus; break;
        case Term::Kind::Phase: out = polar(args[0]).partial_isometry; break;
        case Term::Kind::Atom: break;
      }
    } catch (const ModelError& e) {
      reason_ = key + ": " + e.what();
      out.reset();
    }
  }
  cache_.emplace(key, out);
  return out;
}

Truth ModelEvaluator::unary(Predicate p, const MonomialOperator& t) {
  switch (p) {
    case Predicate::DenselyDefined:
    case Predicate::Closeable:
    case Predicate::Known: return Truth::True;
    case Predicate::Closed: return truth(is_closed(t));
    case Predicate::Symmetric: return truth(is_symmetric(t));
    case Predicate::SelfAdjoint: return truth(is_selfadjoint(t));
    case Predicate::Normal: return truth(is_normal(t));
    case Predicate::Quasinormal: return truth(is_quasinormal(t));
    case Predicate::Bounded: return truth(is_bounded_everywhere(t));
    case Predicate::Unitary: return truth(is_unitary(t));
    case Predicate::InvertibleBounded: return truth(is_invertible_bounded(t));
    case Predicate::DenseRange: return truth(has_dense_range(t));
    case Predicate::Injective: return truth(is_injective(t));
    case Predicate::FiniteKernel: return truth(zero_set(t.weights()).finite());
    case Predicate::ClosedRange: return truth(closed_range(t));
    case Predicate::FiniteCodimRange: return truth(closed_range(t) && zero_set(t.symbol()).finite());
    default: break;
  }
  reason_ = std::string(to_string(p)) + " is not unary";
  return Truth::Unknown;
}

Truth ModelEvaluator::fact(const Fact& f) {
  std::vector<MonomialOperator> ops;
  for (const auto& a : f.args) {
    auto op = term(a);
    if (!op) return Truth::Unknown;
    ops.push_back(std::move(*op));
  }
  if (f.predicate == Predicate::Permutes) {
    reason_ = "permutes is opaque to the model";
    return Truth::Unknown;
  }
  for (std::size_t i = 1; i < ops.size(); ++i)
    if (ops[i].space() != ops[0].space()) {
      reason_ = "operators on different spaces";
      return Truth::Unknown;
    }
  try {
    switch (f.predicate) {
      case Predicate::Subset: return truth(is_restriction_of(ops[0], ops[1]));
      case Predicate::Equal: return truth(compare(ops[0], ops[1]).verdict == Verdict::Equal);
      case Predicate::CommutesExt:
        return truth(is_restriction_of(compose(ops[0], ops[1]), compose(ops[1], ops[0])));
      case Predicate::RelBounded: return truth(rel_bounded(ops[0], ops[1]).holds);
      case Predicate::DomSubset: {
        auto d1 = ops[0].effective_domain();
        auto d2 = ops[1].effective_domain();
        return truth(domain_leq(d1, d2).holds);
      }
      case Predicate::CoreFor: return truth(has_dense_range(ops[1]));
      case Predicate::Intertwines:
        return truth(is_restriction_of(compose(ops[0], ops[1]), compose(ops[2], ops[0])));
      default: return unary(f.predicate, ops[0]);
    }
  } catch (const ModelError& e) {
    reason_ = f.str() + ": " + e.what();
    return Truth::Unknown;
  }
}

SoundnessReport model_check_soundness(std::span<const Fact> assumptions, std::span<const Rule> rules,
                                      const Instantiation& instantiation, const InferenceOptions& options) {
  SoundnessReport report;
  ModelEvaluator eval(instantiation);
  for (const auto& a : assumptions) {
    std::vector<std::string> names;
    for (const auto& t : a.args) t.atoms(names);
    for (const auto& n : names)
      if (!instantiation.contains(n)) throw InferenceError("unbound operator '" + n + "' in " + a.str());
  }
  for (const auto& a : assumptions) {
    Truth t = eval.fact(a);
    if (t != Truth::True) {
      report.failing_premise = a.str() + " is " + std::string(to_string(t));
      return report;
    }
  }
  InferenceResult result = infer(assumptions, rules, options);
  for (std::size_t i : result.derived()) {
    FactCheck c;
    c.fact = result.facts()[i].str();
    c.truth = eval.fact(result.facts()[i]);
    c.conjectural = result.uses_conjectural(i);
    c.rule = result.derivation(i).rule;
    if (c.truth == Truth::False) {
      if (c.conjectural)
        ++report.conjectural_failures;
      else
        ++report.hard_failures;
    } else if (c.truth == Truth::Unknown) {
      ++report.unknown;
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

namespace {

MonomialOperator sample_operator(ModelRng& rng, Space space) {
  switch (rng.uniform(0, 10)) {
    case 0: return random_operator(rng, space, OperatorFamily::Diagonal);
    case 1: return random_operator(rng, space, OperatorFamily::Unitary);
    case 2: return random_operator(rng, space, OperatorFamily::Normal);
    case 3: return random_operator(rng, space, OperatorFamily::BoundedInvertible);
    case 4: return random_operator(rng, space, OperatorFamily::DenseRange);
    case 5: return random_operator(rng, space, OperatorFamily::Restricted);
    case 6: {
      // real diagonal, hence self-adjoint
      GrowthSymbol a = abs(random_symbol(rng, space));
      if (rng.chance(1, 2)) a = scale(a, RadicalComplex(-1));
      return MonomialOperator::diagonal(std::move(a));
    }
    case 7: {
      SymbolOptions opts;
      opts.allow_growth = false;
      return MonomialOperator::diagonal(random_symbol(rng, space, opts));
    }
    case 8: return closure(random_operator(rng, space));
    default: return random_operator(rng, space);
  }
}

std::string describe(const Instantiation& inst) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, op] : inst) {
    out << (first ? "" : ", ") << name << " = " << op.str();
    first = false;
  }
  return out.str();
}

}  // namespace

RuleSample sample_rule(const Rule& rule, std::uint64_t seed, std::size_t count) {
  RuleSample sample;
  sample.rule = rule.id;
  sample.status = rule.status;
  ModelRng rng(seed);
  const auto vars = rule.variables();
  for (std::size_t k = 0; k < count; ++k) {
    Space space = random_space(rng);
    Instantiation inst;
    std::vector<std::string> bound;
    try {
      for (const auto& v : vars) {
        if (!bound.empty() && rng.chance(1, 2)) {
          const MonomialOperator& prev = inst.at(bound[static_cast<std::size_t>(
              rng.uniform(0, static_cast<std::int64_t>(bound.size()) - 1))]);
          switch (rng.uniform(0, 3)) {
            case 0:
            case 1: inst.emplace(v, prev); break;
            case 2: inst.emplace(v, adjoint(prev)); break;
            default: inst.emplace(v, closure(prev)); break;
          }
        } else {
          inst.emplace(v, sample_operator(rng, space));
        }
        bound.push_back(v);
      }
    } catch (const ModelError&) {
      ++sample.instances;
      continue;
    }
    ++sample.instances;
    ModelEvaluator eval(inst);
    bool holds = true;
    for (const auto& p : rule.premises)
      if (eval.fact(p) != Truth::True) {
        holds = false;
        break;
      }
    if (!holds) continue;
    ++sample.nonvacuous;
    bool unevaluated = false;
    for (const auto& c : rule.conclusions) {
      Truth t = eval.fact(c);
      if (t == Truth::Unknown) unevaluated = true;
      if (t == Truth::False) {
        ++sample.violations;
        if (sample.counterexamples.size() < 3) sample.counterexamples.push_back(describe(inst) + ": " + c.str());
      }
    }
    if (unevaluated) ++sample.unevaluated;
  }
  return sample;
}

}  // namespace opcalc
