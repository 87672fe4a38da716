#include "hcon/normalizer.hpp"

#include <unordered_set>

namespace hcon {

namespace {

std::optional<std::pair<NnfRule, Formula>> rewrite_here(const Formula& f) {
  if (f.kind() == FormulaKind::Implies)
    return {{NnfRule::ImpliesElim, Formula::disjunction(Formula::negation(f.lhs()), f.rhs())}};
  if (f.kind() != FormulaKind::Not) return std::nullopt;
  const Formula& g = f.operand();
  switch (g.kind()) {
    case FormulaKind::Not:
      return {{NnfRule::DoubleNeg, g.operand()}};
    case FormulaKind::Or:
      return {{NnfRule::NegOr, Formula::conjunction(Formula::negation(g.lhs()),
                                                    Formula::negation(g.rhs()))}};
    case FormulaKind::And:
      return {{NnfRule::NegAnd, Formula::disjunction(Formula::negation(g.lhs()),
                                                     Formula::negation(g.rhs()))}};
    case FormulaKind::Forall:
      return {{NnfRule::NegForall, Formula::exists(g.variable(), Formula::negation(g.body()))}};
    case FormulaKind::Exists:
      return {{NnfRule::NegExists, Formula::forall(g.variable(), Formula::negation(g.body()))}};
    default:
      // ~(A -> B) is not a redex at the root; A -> B below it is.
      return std::nullopt;
  }
}

std::optional<std::pair<NnfRule, Formula>> outermost(const Formula& f) {
  if (auto r = rewrite_here(f)) return r;
  auto kids = children(f);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (auto r = outermost(kids[i])) {
      kids[i] = r->second;
      return {{r->first, rebuild(f, std::move(kids))}};
    }
  }
  return std::nullopt;
}

// Connective weight: implications count double.
std::size_t cw(const Formula& f) {
  std::size_t w = f.kind() == FormulaKind::Implies ? 2 : 1;
  for (const auto& c : children(f)) w += cw(c);
  return w;
}

}  // namespace

std::optional<NnfStep> nnf_step(const Formula& f) {
  auto r = outermost(f);
  if (!r) return std::nullopt;
  return NnfStep{r->first, r->second};
}

Formula nnf(const Formula& f, std::vector<NnfStep>* trace) {
  Formula cur = f;
  while (auto r = outermost(cur)) {
    cur = r->second;
    if (trace) trace->push_back({r->first, cur});
  }
  return cur;
}

std::size_t nnf_rank(const Formula& f) {
  std::size_t m = 0;
  if (f.kind() == FormulaKind::Not) m += cw(f.operand());
  if (f.kind() == FormulaKind::Implies) m += 1 + cw(f.lhs());
  for (const auto& c : children(f)) m += nnf_rank(c);
  return m;
}

bool is_nnf(const Formula& f) {
  if (f.kind() == FormulaKind::Implies) return false;
  if (f.kind() == FormulaKind::Not) return f.operand().is_atom();
  for (const auto& c : children(f))
    if (!is_nnf(c)) return false;
  return true;
}

bool is_rectified(const Formula& f) {
  auto free = free_vars(f);
  std::unordered_set<std::string> bound(free.begin(), free.end());
  bool ok = true;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!ok) return;
    if (g.is_quantifier() && !bound.insert(g.variable()).second) ok = false;
    for (const auto& c : children(g)) walk(c);
  };
  walk(f);
  return ok;
}

namespace {

struct Rectifier {
  std::unordered_set<std::string> avoid;
  std::size_t counter = 0;

  std::string fresh() {
    std::string name;
    do {
      name = "x" + std::to_string(++counter);
    } while (avoid.count(name));
    return name;
  }

  Formula run(const Formula& f, const Substitution& env) {
    switch (f.kind()) {
      case FormulaKind::Atom:
        return substitute(f, env);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::string v = fresh();
        Substitution inner = env;
        inner.insert_or_assign(f.variable(), Term::variable(v));
        Formula body = run(f.body(), inner);
        return f.kind() == FormulaKind::Forall ? Formula::forall(v, body)
                                               : Formula::exists(v, body);
      }
      default: {
        std::vector<Formula> kids;
        for (const auto& c : children(f)) kids.push_back(run(c, env));
        return rebuild(f, std::move(kids));
      }
    }
  }
};

}  // namespace

Formula rectify(const Formula& f) {
  Rectifier r;
  for (auto& v : free_vars(f)) r.avoid.insert(v);
  return r.run(f, {});
}

Formula rnnf(const Formula& f) { return rectify(nnf(f)); }

}  // namespace hcon
