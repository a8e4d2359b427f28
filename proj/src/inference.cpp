#include "opcalc/inference.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "opcalc/lexer.hpp"

namespace opcalc {

std::string_view to_string(RuleStatus s) {
  switch (s) {
    case RuleStatus::Sound: return "SOUND";
    case RuleStatus::Conjectural: return "CONJECTURAL";
    case RuleStatus::Axiom: return "AXIOM";
  }
  return "?";
}

std::vector<std::string> Rule::variables() const {
  std::vector<std::string> out;
  for (const auto* list : {&premises, &conclusions})
    for (const auto& f : *list)
      for (const auto& a : f.args) a.atoms(out);
  return out;
}

std::string Rule::str() const {
  auto join = [](const std::vector<Fact>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? "; " : "") + fs[i].str();
    return out;
  };
  return id + " [" + std::string(to_string(status)) + "] " + join(premises) + " => " + join(conclusions);
}

namespace {

std::vector<Fact> parse_fact_list(std::string_view text) {
  std::vector<Fact> out;
  if (text.find_first_not_of(" \t\n") == std::string_view::npos) return out;
  Lexer lex(text, false);
  do {
    out.push_back(parse_fact(lex).normalized());
  } while (lex.accept_punct(';'));
  if (!lex.at_end()) lex.fail("unexpected " + describe(lex.peek()), {"';'", "end of input"});
  return out;
}

bool reflexive_trivial(const Fact& f) {
  switch (f.predicate) {
    case Predicate::Subset:
    case Predicate::Equal:
    case Predicate::CommutesExt:
    case Predicate::DomSubset: return f.args[0] == f.args[1];
    default: return false;
  }
}

using Bindings = std::vector<std::pair<std::string, Term>>;

const Term* lookup(const Bindings& b, const std::string& name) {
  for (const auto& [k, v] : b)
    if (k == name) return &v;
  return nullptr;
}

bool unify(const Term& pattern, const Term& t, Bindings& b) {
  if (pattern.kind() == Term::Kind::Atom) {
    if (const Term* bound = lookup(b, pattern.name())) return *bound == t;
    b.emplace_back(pattern.name(), t);
    return true;
  }
  if (pattern.kind() != t.kind()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!unify(pattern.arg(i), t.arg(i), b)) return false;
  return true;
}

bool fully_bound(const Term& pattern, const Bindings& b) {
  if (pattern.kind() == Term::Kind::Atom) return lookup(b, pattern.name()) != nullptr;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!fully_bound(pattern.arg(i), b)) return false;
  return true;
}

Term substitute(const Term& pattern, const Bindings& b) {
  switch (pattern.kind()) {
    case Term::Kind::Atom: return *lookup(b, pattern.name());
    case Term::Kind::Compose: return Term::compose(substitute(pattern.arg(0), b), substitute(pattern.arg(1), b));
    default: return Term::unary(pattern.kind(), substitute(pattern.arg(), b));
  }
}

Fact instantiate(const Fact& pattern, const Bindings& b) {
  Fact f{pattern.predicate, {}};
  for (const auto& a : pattern.args) f.args.push_back(substitute(a, b));
  return f.normalized();
}

std::string arg_key(Predicate p, std::size_t pos, const Term& t) {
  return std::to_string(static_cast<int>(p)) + "#" + std::to_string(pos) + "#" + t.str();
}

}  // namespace

Rule make_rule(std::string id, RuleStatus status, std::string citation, std::string_view premises,
               std::string_view conclusions) {
  Rule r;
  r.id = std::move(id);
  r.status = status;
  r.citation = std::move(citation);
  r.premises = parse_fact_list(premises);
  r.conclusions = parse_fact_list(conclusions);
  for (const auto& f : r.conclusions)
    if (f.predicate == Predicate::Known) throw InferenceError("rule " + r.id + ": known() cannot be concluded");
  return r;
}

// ---- result queries --------------------------------------------------------------------

std::optional<std::size_t> InferenceResult::find(const Fact& f) const {
  auto it = index_.find(f.normalized().str());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> InferenceResult::derived() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < facts_.size(); ++i)
    if (!is_assumed(i)) out.push_back(i);
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return facts_[a].str() < facts_[b].str(); });
  return out;
}

std::set<std::string> InferenceResult::fact_set() const {
  std::set<std::string> out;
  for (const auto& f : facts_) out.insert(f.str());
  return out;
}

std::set<std::string> InferenceResult::rules_used(std::size_t i) const {
  std::set<std::string> out;
  std::vector<bool> seen(facts_.size(), false);
  std::vector<std::size_t> stack{i};
  while (!stack.empty()) {
    std::size_t j = stack.back();
    stack.pop_back();
    if (seen[j]) continue;
    seen[j] = true;
    if (!derivations_[j].rule.empty()) out.insert(derivations_[j].rule);
    for (std::size_t p : derivations_[j].premises) stack.push_back(p);
  }
  return out;
}

bool InferenceResult::uses_conjectural(std::size_t i) const {
  for (const auto& id : rules_used(i)) {
    auto it = rules_.find(id);
    if (it != rules_.end() && it->second.status == RuleStatus::Conjectural) return true;
  }
  return false;
}

std::string InferenceResult::explain(const Fact& f) const {
  auto idx = find(f);
  if (!idx) throw InferenceError("not derived: " + f.normalized().str());
  std::ostringstream os;
  std::vector<bool> shown(facts_.size(), false);
  std::function<void(std::size_t, int)> render = [&](std::size_t i, int indent) {
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << facts_[i].str();
    const Derivation& d = derivations_[i];
    if (d.rule.empty()) {
      os << "  [assumed]\n";
      return;
    }
    if (shown[i]) {
      os << "  [" << d.rule << ", shown above]\n";
      return;
    }
    shown[i] = true;
    auto it = rules_.find(d.rule);
    os << "  [" << d.rule;
    if (it != rules_.end() && !it->second.citation.empty()) os << ": " << it->second.citation;
    os << "]\n";
    for (std::size_t p : d.premises) render(p, indent + 1);
  };
  render(*idx, 0);
  return os.str();
}

// ---- engine -------------------------------------------------------------------------------

void validate_assumptions(std::span<const Fact> assumptions, int max_depth) {
  std::set<std::string> invertible;
  for (const auto& raw : assumptions) {
    Fact f = raw.normalized();
    if (f.predicate == Predicate::Injective || f.predicate == Predicate::InvertibleBounded ||
        f.predicate == Predicate::Unitary)
      invertible.insert(f.args[0].str());
  }
  for (const auto& raw : assumptions) {
    Fact f = raw.normalized();
    if (f.predicate == Predicate::Known) throw InferenceError("known() is only available in rule premises");
    if (f.depth() > max_depth)
      throw InferenceError(f.str() + " is deeper than the depth bound " + std::to_string(max_depth));
    std::vector<Term> subs;
    for (const auto& a : f.args) a.subterms(subs);
    for (const auto& t : subs)
      if (t.kind() == Term::Kind::Inverse && !invertible.count(t.arg().str()))
        throw InferenceError(f.str() + " uses " + t.str() + " without injective(" + t.arg().str() +
                             ") or invertible_bounded(" + t.arg().str() + ")");
  }
}

class Engine {
 public:
  Engine(std::span<const Rule> rules, const InferenceOptions& options) : options_(options) {
    for (const auto& r : rules)
      if (r.status != RuleStatus::Conjectural || options.conjectural) out_.rules_.emplace(r.id, r);
    out_.max_depth_ = options.max_depth;
    by_predicate_.resize(predicates().size());
  }

  InferenceResult run(std::span<const Fact> assumptions) {
    for (const auto& f : assumptions) add(f.normalized(), Derivation{});
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [id, rule] : out_.rules_) changed |= apply(rule);
    }
    return std::move(out_);
  }

 private:
  bool add(Fact f, Derivation d) {
    std::string key = f.str();
    if (out_.index_.count(key)) return false;
    std::size_t i = out_.facts_.size();
    out_.index_.emplace(key, i);
    for (std::size_t pos = 0; pos < f.args.size(); ++pos)
      by_arg_[arg_key(f.predicate, pos, f.args[pos])].push_back(i);
    by_predicate_[static_cast<std::size_t>(f.predicate)].push_back(i);
    std::vector<Term> subs;
    for (const auto& a : f.args) a.subterms(subs);
    for (auto& t : subs)
      if (universe_keys_.insert(t.str()).second) universe_.push_back(t);
    out_.facts_.push_back(std::move(f));
    out_.derivations_.push_back(std::move(d));
    return true;
  }

  struct Pending {
    Fact fact;
    Derivation derivation;
  };

  bool apply(const Rule& rule) {
    std::vector<Pending> pending;
    std::set<std::string> pending_keys;
    std::vector<bool> used(rule.premises.size(), false);
    std::vector<std::size_t> chosen(rule.premises.size(), SIZE_MAX);
    Bindings b;
    match(rule, used, chosen, b, [&] {
      std::vector<std::size_t> premises;
      for (std::size_t c : chosen)
        if (c != SIZE_MAX) premises.push_back(c);
      for (const auto& pattern : rule.conclusions) {
        Fact f = instantiate(pattern, b);
        if (reflexive_trivial(f)) continue;
        if (f.depth() > options_.max_depth) {
          out_.truncated_.insert({rule.id, f.str()});
          continue;
        }
        std::string key = f.str();
        if (out_.index_.count(key) || !pending_keys.insert(key).second) continue;
        pending.push_back({std::move(f), Derivation{rule.id, premises}});
      }
    });
    bool changed = false;
    for (auto& p : pending) changed |= add(std::move(p.fact), std::move(p.derivation));
    return changed;
  }

  // Candidate fact indices for a premise under the current bindings; the
  // smallest of the per-predicate list and the per-argument lists.
  const std::vector<std::size_t>& candidates(const Fact& premise, const Bindings& b) const {
    const std::vector<std::size_t>* best = &by_predicate_[static_cast<std::size_t>(premise.predicate)];
    for (std::size_t pos = 0; pos < premise.args.size(); ++pos) {
      if (!fully_bound(premise.args[pos], b)) continue;
      Term t = normalize(substitute(premise.args[pos], b));
      auto it = by_arg_.find(arg_key(premise.predicate, pos, t));
      if (it == by_arg_.end()) return empty_;
      if (it->second.size() < best->size()) best = &it->second;
    }
    return *best;
  }

  void match(const Rule& rule, std::vector<bool>& used, std::vector<std::size_t>& chosen, Bindings& b,
             const std::function<void()>& emit) {
    // Fully bound premises are plain lookups; otherwise take the premise with
    // the fewest candidates.
    std::size_t pick = SIZE_MAX, pick_size = SIZE_MAX;
    for (std::size_t i = 0; i < rule.premises.size(); ++i) {
      if (used[i]) continue;
      const Fact& p = rule.premises[i];
      bool bound = std::all_of(p.args.begin(), p.args.end(), [&](const Term& a) { return fully_bound(a, b); });
      std::size_t size = bound ? 0
                         : p.predicate == Predicate::Known ? universe_.size()
                                                           : candidates(p, b).size();
      if (size < pick_size) {
        pick = i;
        pick_size = size;
      }
    }
    if (pick == SIZE_MAX) {
      emit();
      return;
    }
    const Fact& p = rule.premises[pick];
    used[pick] = true;
    bool bound = std::all_of(p.args.begin(), p.args.end(), [&](const Term& a) { return fully_bound(a, b); });
    if (bound) {
      Fact f = instantiate(p, b);
      if (p.predicate == Predicate::Known) {
        if (universe_keys_.count(f.args[0].str())) match(rule, used, chosen, b, emit);
      } else if (auto it = out_.index_.find(f.str()); it != out_.index_.end()) {
        chosen[pick] = it->second;
        match(rule, used, chosen, b, emit);
        chosen[pick] = SIZE_MAX;
      }
    } else if (p.predicate == Predicate::Known) {
      std::size_t n = universe_.size();
      for (std::size_t u = 0; u < n; ++u) {
        std::size_t mark = b.size();
        if (unify(p.args[0], universe_[u], b)) match(rule, used, chosen, b, emit);
        b.resize(mark);
      }
    } else {
      // Conclusions are only added after matching, so the list is stable.
      const auto& list = candidates(p, b);
      for (std::size_t c : list) {
        const Fact& f = out_.facts_[c];
        std::size_t mark = b.size();
        bool ok = true;
        for (std::size_t a = 0; a < p.args.size() && ok; ++a) ok = unify(p.args[a], f.args[a], b);
        if (ok) {
          chosen[pick] = c;
          match(rule, used, chosen, b, emit);
          chosen[pick] = SIZE_MAX;
        }
        b.resize(mark);
      }
    }
    used[pick] = false;
  }

  InferenceOptions options_;
  InferenceResult out_;
  std::vector<std::vector<std::size_t>> by_predicate_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_arg_;
  std::vector<Term> universe_;
  std::set<std::string> universe_keys_;
  static inline const std::vector<std::size_t> empty_{};
};

InferenceResult infer(std::span<const Fact> assumptions, std::span<const Rule> rules, const InferenceOptions& options) {
  validate_assumptions(assumptions, options.max_depth);
  return Engine(rules, options).run(assumptions);
}

}  // namespace opcalc
