#include "oracle.hpp"

#include <algorithm>

namespace oracle {

using hcon::FormulaKind;
using hcon::render;

namespace {

void tuples(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k, 0);
  if (k > 0 && n == 0) return;
  while (true) {
    f(idx);
    int p = static_cast<int>(k) - 1;
    while (p >= 0 && ++idx[p] == n) idx[p--] = 0;
    if (p < 0) return;
  }
}

std::vector<std::pair<std::string, int>> preds_with_eq(const Signature& sig) {
  std::vector<std::pair<std::string, int>> out{{"=", 2}};
  for (const auto& p : sig.predicates()) out.emplace_back(p.name, p.arity);
  return out;
}

Formula make_atom(const std::string& pred, std::vector<Term> args) {
  if (pred == "=") return Formula::equals(args[0], args[1]);
  return Formula::atom(pred, std::move(args));
}

}  // namespace

std::vector<Formula> all_atoms(const std::vector<Term>& lambda, const Signature& sig) {
  std::vector<Formula> out;
  for (const auto& [name, arity] : preds_with_eq(sig))
    tuples(lambda.size(), arity, [&](const std::vector<std::size_t>& idx) {
      std::vector<Term> args;
      for (auto i : idx) args.push_back(lambda[i]);
      out.push_back(make_atom(name, args));
    });
  return out;
}

bool is_evaluation(const std::vector<Term>& lambda, const Signature& sig, const Valuation& v) {
  auto eq = [&](const Term& a, const Term& b) { return v.count(render(Formula::equals(a, b))) > 0; };
  std::set<std::string> members;
  for (const auto& t : lambda) members.insert(render(t));
  for (const auto& t : lambda)
    if (!eq(t, t)) return false;
  for (const auto& t : lambda)
    for (const auto& s : lambda) {
      if (!eq(t, s)) continue;
      for (const auto& [name, arity] : preds_with_eq(sig)) {
        bool bad = false;
        tuples(lambda.size(), arity, [&](const std::vector<std::size_t>& idx) {
          for (int pos = 0; pos < arity && !bad; ++pos) {
            if (!(lambda[idx[pos]] == t)) continue;
            std::vector<Term> a, b;
            for (auto i : idx) a.push_back(lambda[i]);
            b = a;
            b[pos] = s;
            if (holds(v, make_atom(name, a)) != holds(v, make_atom(name, b))) bad = true;
          }
        });
        if (bad) return false;
      }
    }
  for (const auto& x : lambda)
    for (const auto& y : lambda) {
      if (x.is_variable() || x.name() != y.name() || x.arity() != y.arity() || x.arity() == 0) continue;
      bool all = true;
      for (std::size_t i = 0; i < x.arity() && all; ++i) {
        const Term& a = x.args()[i];
        const Term& b = y.args()[i];
        if (a == b) continue;
        all = members.count(render(a)) && members.count(render(b)) && eq(a, b);
      }
      if (all && !eq(x, y)) return false;
    }
  return true;
}

bool holds(const Valuation& v, const Formula& g) {
  switch (g.kind()) {
    case FormulaKind::Atom:
      return v.count(render(g)) > 0;
    case FormulaKind::Not:
      return !holds(v, g.operand());
    case FormulaKind::And:
      return holds(v, g.lhs()) && holds(v, g.rhs());
    case FormulaKind::Or:
      return holds(v, g.lhs()) || holds(v, g.rhs());
    case FormulaKind::Implies:
      return !holds(v, g.lhs()) || holds(v, g.rhs());
    default:
      throw std::invalid_argument("quantifier in ground formula");
  }
}

namespace {

bool args_in(const Formula& f, const std::set<std::string>& members) {
  if (f.kind() == FormulaKind::Atom) {
    for (const auto& t : f.terms())
      if (!members.count(render(t))) return false;
    return true;
  }
  for (const auto& c : hcon::children(f))
    if (!args_in(c, members)) return false;
  return true;
}

}  // namespace

std::set<std::string> available(const Formula& open, const std::vector<Term>& lambda,
                                std::vector<Formula>* out) {
  std::set<std::string> members, seen;
  for (const auto& t : lambda) members.insert(render(t));
  auto vars = hcon::free_vars(open);
  tuples(lambda.size(), vars.size(), [&](const std::vector<std::size_t>& idx) {
    hcon::Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], lambda[idx[i]]);
    Formula g = hcon::substitute(open, s);
    if (args_in(g, members) && seen.insert(render(g)).second && out) out->push_back(g);
  });
  return seen;
}

std::uint64_t count_t_evaluations(const std::vector<Term>& lambda, const Signature& sig,
                                  const std::vector<Formula>& opens, const std::vector<Formula>& extra,
                                  std::uint64_t limit) {
  std::vector<Formula> atoms = all_atoms(lambda, sig);
  std::vector<std::string> free_atoms;
  Valuation base;
  for (const auto& a : atoms) {
    if (a.is_equality() && a.terms()[0] == a.terms()[1])
      base.insert(render(a));
    else
      free_atoms.push_back(render(a));
  }
  if (free_atoms.size() > 24) throw std::invalid_argument("oracle cap");
  std::vector<Formula> instances = extra;
  for (const auto& o : opens) available(o, lambda, &instances);
  std::uint64_t found = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_atoms.size()); ++mask) {
    Valuation v = base;
    for (std::size_t i = 0; i < free_atoms.size(); ++i)
      if (mask >> i & 1) v.insert(free_atoms[i]);
    if (!is_evaluation(lambda, sig, v)) continue;
    if (std::all_of(instances.begin(), instances.end(), [&](const Formula& g) { return holds(v, g); }))
      if (++found >= limit) return found;
  }
  return found;
}

bool truth_table_sat(int num_vars, const std::vector<std::vector<int>>& clauses) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << num_vars); ++mask) {
    bool ok = std::all_of(clauses.begin(), clauses.end(), [&](const std::vector<int>& c) {
      return std::any_of(c.begin(), c.end(), [&](int l) {
        bool val = mask >> (std::abs(l) - 1) & 1;
        return l > 0 ? val : !val;
      });
    });
    if (ok) return true;
  }
  return false;
}

Structure random_structure(const Signature& sig, int size, std::mt19937_64& rng) {
  Structure m;
  m.size = size;
  auto cells = [&](int arity) {
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) n *= size;
    return n;
  };
  for (const auto& f : sig.functions()) {
    std::vector<int> table(cells(f.arity));
    for (auto& c : table) c = static_cast<int>(rng() % size);
    m.functions[f.name] = table;
  }
  for (const auto& p : sig.predicates()) {
    std::vector<bool> table(cells(p.arity));
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = rng() & 1;
    m.predicates[p.name] = table;
  }
  return m;
}

int value(const Structure& m, const Term& t, const std::map<std::string, int>& env) {
  if (t.is_variable()) return env.at(t.name());
  std::size_t cell = 0;
  for (const auto& a : t.args()) cell = cell * m.size + value(m, a, env);
  return m.functions.at(t.name())[cell];
}

bool models(const Structure& m, const Signature& sig, const Formula& f, std::map<std::string, int> env) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (f.is_equality()) return value(m, f.terms()[0], env) == value(m, f.terms()[1], env);
      std::size_t cell = 0;
      for (const auto& a : f.terms()) cell = cell * m.size + value(m, a, env);
      return m.predicates.at(f.predicate())[cell];
    }
    case FormulaKind::Not:
      return !models(m, sig, f.operand(), env);
    case FormulaKind::And:
      return models(m, sig, f.lhs(), env) && models(m, sig, f.rhs(), env);
    case FormulaKind::Or:
      return models(m, sig, f.lhs(), env) || models(m, sig, f.rhs(), env);
    case FormulaKind::Implies:
      return !models(m, sig, f.lhs(), env) || models(m, sig, f.rhs(), env);
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool universal = f.kind() == FormulaKind::Forall;
      for (int d = 0; d < m.size; ++d) {
        env[f.variable()] = d;
        bool r = models(m, sig, f.body(), env);
        if (universal && !r) return false;
        if (!universal && r) return true;
      }
      return universal;
    }
  }
  return false;
}

mpz_class sequence_code(const std::vector<mpz_class>& elements) {
  std::string bits = "1";
  for (const auto& e : elements) {
    std::string b = e.get_str(2);
    mpz_class L = b.size();
    std::string lb = L.get_str(2);
    bits += std::string(lb.size() - 1, '0') + lb + b.substr(1);
  }
  return mpz_class(bits, 2);
}

Term random_term(const Signature& sig, const std::vector<std::string>& vars, int depth,
                 std::mt19937_64& rng) {
  std::vector<hcon::SymbolDecl> leaves, inner;
  for (const auto& f : sig.functions()) (f.arity == 0 ? leaves : inner).push_back(f);
  bool leaf = depth <= 0 || inner.empty() || rng() % 3 == 0;
  if (leaf) {
    std::size_t n = leaves.size() + vars.size();
    std::size_t k = rng() % n;
    if (k < vars.size()) return Term::variable(vars[k]);
    return Term::constant(leaves[k - vars.size()].name);
  }
  const auto& f = inner[rng() % inner.size()];
  std::vector<Term> args;
  for (int i = 0; i < f.arity; ++i) args.push_back(random_term(sig, vars, depth - 1, rng));
  return Term::apply(f.name, std::move(args));
}

Term random_ground_term(const Signature& sig, int depth, std::mt19937_64& rng) {
  return random_term(sig, {}, depth, rng);
}

Formula random_formula(const Signature& sig, std::vector<std::string> vars, int depth,
                       std::mt19937_64& rng, bool allow_free) {
  static const std::vector<std::string> pool{"x", "y", "z"};
  if (depth <= 0 || rng() % 5 == 0) {
    std::vector<std::string> usable = vars;
    if (allow_free) usable.insert(usable.end(), pool.begin(), pool.end());
    std::vector<std::pair<std::string, int>> preds{{"=", 2}};
    for (const auto& p : sig.predicates()) preds.emplace_back(p.name, p.arity);
    const auto& [name, arity] = preds[rng() % preds.size()];
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(random_term(sig, usable, 1, rng));
    return name == "=" ? Formula::equals(args[0], args[1]) : Formula::atom(name, args);
  }
  switch (rng() % 7) {
    case 0:
      return Formula::negation(random_formula(sig, vars, depth - 1, rng, allow_free));
    case 1:
      return Formula::conjunction(random_formula(sig, vars, depth - 1, rng, allow_free),
                                  random_formula(sig, vars, depth - 1, rng, allow_free));
    case 2:
      return Formula::disjunction(random_formula(sig, vars, depth - 1, rng, allow_free),
                                  random_formula(sig, vars, depth - 1, rng, allow_free));
    case 3:
      return Formula::implication(random_formula(sig, vars, depth - 1, rng, allow_free),
                                  random_formula(sig, vars, depth - 1, rng, allow_free));
    default: {
      std::string v = pool[rng() % pool.size()];
      vars.push_back(v);
      Formula body = random_formula(sig, vars, depth - 1, rng, allow_free);
      return rng() % 2 ? Formula::forall(v, body) : Formula::exists(v, body);
    }
  }
}

}  // namespace oracle
