#include "hcon/skolem.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hcon/normalizer.hpp"

namespace hcon {

namespace {

Formula canonical_source(const Formula& existential) {
  if (existential.kind() != FormulaKind::Exists)
    throw std::invalid_argument("Skolem symbols are keyed by existential formulas");
  std::map<std::string, std::string> names;
  std::size_t k = 0;
  for (const auto& v : free_vars(existential)) names[v] = "#" + std::to_string(++k);
  return rnnf(rename_free(existential, names));
}

}  // namespace

std::string skolem_key(const Formula& existential) {
  return render(canonical_source(existential));
}

SkolemRegistry::SkolemRegistry(const SkolemRegistry& other) {
  std::lock_guard lock(other.mutex_);
  prefix_ = other.prefix_;
  symbols_ = other.symbols_;
  by_key_ = other.by_key_;
  by_name_ = other.by_name_;
}

SkolemRegistry& SkolemRegistry::operator=(const SkolemRegistry& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  prefix_ = other.prefix_;
  symbols_ = other.symbols_;
  by_key_ = other.by_key_;
  by_name_ = other.by_name_;
  return *this;
}

SkolemSymbol SkolemRegistry::intern(const Formula& existential) {
  Formula source = canonical_source(existential);
  std::string key = render(source);
  std::lock_guard lock(mutex_);
  if (auto it = by_key_.find(key); it != by_key_.end()) return symbols_[it->second];
  SkolemSymbol sym{prefix_ + std::to_string(symbols_.size()),
                   static_cast<int>(free_vars(existential).size()), source, key};
  by_key_.emplace(key, symbols_.size());
  by_name_.emplace(sym.name, symbols_.size());
  symbols_.push_back(sym);
  return sym;
}

std::optional<SkolemSymbol> SkolemRegistry::find(const std::string& name) const {
  std::lock_guard lock(mutex_);
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return symbols_[it->second];
}

std::optional<SkolemSymbol> SkolemRegistry::find_key(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = by_key_.find(key);
  if (it == by_key_.end()) return std::nullopt;
  return symbols_[it->second];
}

std::optional<int> SkolemRegistry::arity(const std::string& name) const {
  auto s = find(name);
  if (!s) return std::nullopt;
  return s->arity;
}

std::vector<SkolemSymbol> SkolemRegistry::symbols() const {
  std::lock_guard lock(mutex_);
  return symbols_;
}

std::size_t SkolemRegistry::size() const {
  std::lock_guard lock(mutex_);
  return symbols_.size();
}

std::optional<std::string> SkolemRegistry::provenance(const std::string& name) const {
  auto s = find(name);
  if (!s) return std::nullopt;
  std::map<std::string, std::string> names;
  for (int i = 1; i <= s->arity; ++i) names["#" + std::to_string(i)] = "_" + std::to_string(i);
  return render(rename_free(s->source, names));
}

void SkolemRegistry::bind(ParseContext& ctx) {
  ctx.extra_function = [this](const std::string& name) { return arity(name); };
  ctx.skolem_resolver = [this](const Formula& f) {
    SkolemSymbol s = intern(f);
    return SkolemReference{s.name, s.arity};
  };
}

RenderOptions SkolemRegistry::provenance_options() const {
  RenderOptions opts;
  opts.provenance = [this](const std::string& name) { return provenance(name); };
  return opts;
}

Formula skolem_step(const Formula& f, SkolemRegistry& reg) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Not:
      return f;
    case FormulaKind::And:
    case FormulaKind::Or:
      return rebuild(f, {skolem_step(f.lhs(), reg), skolem_step(f.rhs(), reg)});
    case FormulaKind::Forall:
      return Formula::forall(f.variable(), skolem_step(f.body(), reg));
    case FormulaKind::Exists: {
      SkolemSymbol sym = reg.intern(f);
      std::vector<Term> args;
      for (const auto& v : free_vars(f)) args.push_back(Term::variable(v));
      Formula body = skolem_step(f.body(), reg);
      return substitute(body, {{f.variable(), Term::apply(sym.name, std::move(args))}});
    }
    case FormulaKind::Implies:
      break;
  }
  throw std::invalid_argument("skolem_step needs a formula in negation normal form");
}

Formula strip_universals(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Not:
      return f;
    case FormulaKind::Forall:
      return strip_universals(f.body());
    case FormulaKind::And:
    case FormulaKind::Or:
      return rebuild(f, {strip_universals(f.lhs()), strip_universals(f.rhs())});
    default:
      throw std::invalid_argument("strip_universals on a non-Skolemized formula");
  }
}

namespace {

void collect_symbols(const Term& t, const SkolemRegistry& reg, std::set<std::string>& out) {
  if (t.is_variable()) return;
  if (reg.arity(t.name())) out.insert(t.name());
  for (const auto& a : t.args()) collect_symbols(a, reg, out);
}

}  // namespace

SkolemizedFormula skolemize(const Formula& f, SkolemRegistry& reg, std::size_t index) {
  Formula open = strip_universals(skolem_step(rnnf(f), reg));
  SkolemizedFormula sf{open, free_vars(open), index, f, {}};
  std::set<std::string> used;
  for (const auto& t : atom_arguments(open)) collect_symbols(t, reg, used);
  for (const auto& s : reg.symbols())
    if (used.count(s.name)) sf.symbols.push_back(s.name);
  return sf;
}

std::vector<SkolemizedFormula> skolemize_theory(const Theory& t, SkolemRegistry& reg) {
  std::lock_guard lock(reg.mutex());
  std::vector<SkolemizedFormula> out;
  out.reserve(t.axioms.size());
  for (std::size_t i = 0; i < t.axioms.size(); ++i) out.push_back(skolemize(t.axioms[i], reg, i));
  return out;
}

Formula induction_axiom(const Formula& psi) {
  auto fv = free_vars(psi);
  if (fv.size() != 1)
    throw std::invalid_argument("induction needs exactly one free variable, got " +
                                std::to_string(fv.size()));
  const std::string& x = fv.front();
  Term zero = Term::constant("0");
  Term var = Term::variable(x);
  Formula base = substitute(psi, {{x, zero}});
  Formula next = substitute(psi, {{x, Term::apply("s", {var})}});
  Formula step = Formula::forall(x, Formula::implication(psi, next));
  return Formula::implication(Formula::conjunction(base, step), Formula::forall(x, psi));
}

SkolemizedFormula skolemize_induction(const Formula& psi, SkolemRegistry& reg,
                                      std::size_t index) {
  return skolemize(induction_axiom(psi), reg, index);
}

}  // namespace hcon
