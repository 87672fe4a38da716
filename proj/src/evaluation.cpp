#include "hcon/evaluation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "hcon/normalizer.hpp"

namespace hcon {

// ---------------------------------------------------------------- AtomTable

AtomTable::AtomTable(TermSet lambda, const Signature& sig, const Budget& budget)
    : lambda_(std::move(lambda)) {
  preds_.push_back({std::string(kEquality), 2});
  for (const auto& p : sig.predicates()) preds_.push_back(p);
  const double n = static_cast<double>(lambda_.size());
  double total = 0;
  for (const auto& p : preds_) {
    offset_.push_back(total_);
    double count = 1;
    for (int i = 0; i < p.arity; ++i) count *= n;
    total += count;
    if (total > static_cast<double>(budget.max_atoms))
      throw BudgetExceeded("atom table over " + std::to_string(lambda_.size()) +
                           " terms exceeds the atom budget");
    total_ += static_cast<std::size_t>(count);
  }
  offset_.push_back(total_);
}

std::size_t AtomTable::index(std::size_t pred, const std::vector<std::size_t>& args) const {
  std::size_t i = 0;
  for (auto a : args) i = i * lambda_.size() + a;
  return offset_[pred] + i;
}

std::pair<std::size_t, std::vector<std::size_t>> AtomTable::decode(std::size_t index) const {
  std::size_t p = std::upper_bound(offset_.begin(), offset_.end(), index) - offset_.begin() - 1;
  // Zero-ary predicates make empty ranges; upper_bound lands after them.
  std::size_t rel = index - offset_[p];
  std::vector<std::size_t> args(preds_[p].arity);
  for (int k = preds_[p].arity; k-- > 0;) {
    args[k] = rel % lambda_.size();
    rel /= lambda_.size();
  }
  return {p, args};
}

Formula AtomTable::atom(std::size_t index) const {
  auto [p, args] = decode(index);
  std::vector<Term> ts;
  for (auto a : args) ts.push_back(lambda_[a]);
  return Formula::atom(preds_[p].name, std::move(ts));
}

std::optional<std::size_t> AtomTable::index_of(const Formula& atom) const {
  if (!atom.is_atom()) return std::nullopt;
  for (std::size_t p = 0; p < preds_.size(); ++p) {
    if (preds_[p].name != atom.predicate()) continue;
    if (static_cast<int>(atom.terms().size()) != preds_[p].arity) return std::nullopt;
    std::vector<std::size_t> args;
    for (const auto& t : atom.terms()) {
      auto i = lambda_.index_of(t);
      if (!i) return std::nullopt;
      args.push_back(*i);
    }
    return index(p, args);
  }
  return std::nullopt;
}

// --------------------------------------------------------------- Evaluation

Evaluation::Evaluation(std::shared_ptr<const AtomTable> table)
    : table_(std::move(table)), bits_(table_->size(), false) {}

Evaluation::Evaluation(std::shared_ptr<const AtomTable> table, std::vector<bool> bits)
    : table_(std::move(table)), bits_(std::move(bits)) {
  if (bits_.size() != table_->size()) throw std::invalid_argument("bit vector size mismatch");
}

Evaluation Evaluation::from_true_atoms(std::shared_ptr<const AtomTable> table,
                                       const std::vector<Formula>& atoms, bool add_reflexive) {
  Evaluation p(std::move(table));
  for (const auto& a : atoms) {
    auto i = p.table().index_of(a);
    if (!i) throw std::out_of_range("atom not over the term set: " + render(a));
    p.set(*i, true);
  }
  if (add_reflexive)
    for (std::size_t t = 0; t < p.table().lambda().size(); ++t) p.set(p.table().eq(t, t), true);
  return p;
}

bool Evaluation::value(const Formula& atom) const {
  auto i = table_->index_of(atom);
  if (!i) throw std::out_of_range("atom not over the term set: " + render(atom));
  return bits_[*i];
}

std::vector<std::string> Evaluation::true_atoms(const RenderOptions& opts) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(render(table_->atom(i), opts));
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------------- congruence

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Terms grouped by head symbol (compound terms only).
std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> by_head(
    const TermSet& lambda) {
  std::map<std::pair<std::string, std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i].arity() > 0) out[{lambda[i].name(), lambda[i].arity()}].push_back(i);
  return out;
}

// Argument positions that differ, as term index pairs; nullopt when some
// differing argument lies outside the set.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> differing_args(
    const TermSet& lambda, const Term& a, const Term& b) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < a.arity(); ++k) {
    if (a.args()[k] == b.args()[k]) continue;
    auto i = lambda.index_of(a.args()[k]);
    auto j = lambda.index_of(b.args()[k]);
    if (!i || !j) return std::nullopt;
    out.emplace_back(*i, *j);
  }
  return out;
}

std::vector<std::size_t> classes_from_bits(const AtomTable& table,
                                           const std::vector<bool>& bits) {
  const std::size_t n = table.lambda().size();
  UnionFind uf(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (bits[table.eq(a, b)]) uf.unite(a, b);
  std::vector<std::size_t> cls(n);
  for (std::size_t a = 0; a < n; ++a) cls[a] = uf.find(a);
  return cls;
}

// Reflexivity, class consistency and functional congruence.
std::string equality_defect(const AtomTable& table, const std::vector<bool>& bits,
                            std::vector<std::size_t>* classes_out) {
  const TermSet& lambda = table.lambda();
  const std::size_t n = lambda.size();
  for (std::size_t a = 0; a < n; ++a)
    if (!bits[table.eq(a, a)]) return "reflexivity fails for " + render(lambda[a]);
  auto cls = classes_from_bits(table, bits);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (bits[table.eq(a, b)] != (cls[a] == cls[b]))
        return "equality " + render(lambda[a]) + " = " + render(lambda[b]) +
               " disagrees with the closure of the true equalities";
  for (const auto& [head, members] : by_head(lambda))
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const Term& a = lambda[members[x]];
        const Term& b = lambda[members[y]];
        auto diff = differing_args(lambda, a, b);
        if (!diff) continue;
        bool premises = std::all_of(diff->begin(), diff->end(),
                                    [&](auto pr) { return cls[pr.first] == cls[pr.second]; });
        if (premises && cls[members[x]] != cls[members[y]])
          return "functional congruence fails for " + render(a) + " and " + render(b);
      }
  if (classes_out) *classes_out = std::move(cls);
  return {};
}

}  // namespace

std::string evaluation_defect(const Evaluation& p) {
  const AtomTable& table = p.table();
  std::vector<std::size_t> cls;
  if (auto d = equality_defect(table, p.bits(), &cls); !d.empty()) return d;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::pair<bool, std::size_t>> seen;
  const std::size_t n = table.lambda().size();
  for (std::size_t i = n * n; i < table.size(); ++i) {
    auto [pred, args] = table.decode(i);
    for (auto& a : args) a = cls[a];
    auto [it, fresh] = seen.emplace(std::make_pair(pred, args), std::make_pair(p.bit(i), i));
    if (!fresh && it->second.first != p.bit(i))
      return "predicate congruence fails between " + render(table.atom(it->second.second)) +
             " and " + render(table.atom(i));
  }
  return {};
}

bool is_evaluation(const Evaluation& p) { return evaluation_defect(p).empty(); }

EqClasses eq_classes(const Evaluation& p) {
  auto roots = classes_from_bits(p.table(), p.bits());
  EqClasses out;
  out.class_of.resize(roots.size());
  std::map<std::size_t, std::size_t> number;
  for (std::size_t a = 0; a < roots.size(); ++a) {
    auto [it, fresh] = number.emplace(roots[a], out.members.size());
    if (fresh) out.members.emplace_back();
    out.class_of[a] = it->second;
    out.members[it->second].push_back(a);
  }
  return out;
}

// -------------------------------------------------------------- satisfaction

bool satisfies(const Evaluation& p, const Formula& g) {
  switch (g.kind()) {
    case FormulaKind::Atom:
      return p.value(g);
    case FormulaKind::Not:
      return !satisfies(p, g.operand());
    case FormulaKind::And:
      return satisfies(p, g.lhs()) && satisfies(p, g.rhs());
    case FormulaKind::Or:
      return satisfies(p, g.lhs()) || satisfies(p, g.rhs());
    case FormulaKind::Implies:
      return !satisfies(p, g.lhs()) || satisfies(p, g.rhs());
    default:
      throw std::invalid_argument("satisfies needs a quantifier-free formula");
  }
}

std::vector<SkolemInstance> violated_instances(const Evaluation& p,
                                               const std::vector<SkolemizedFormula>& tsk,
                                               const InstanceOptions& opts) {
  std::vector<SkolemInstance> out;
  for (auto& inst : available_instances(tsk, p.table().lambda(), opts))
    if (!satisfies(p, inst.ground)) out.push_back(inst);
  return out;
}

bool is_T_evaluation(const Evaluation& p, const std::vector<SkolemizedFormula>& tsk,
                     const InstanceOptions& opts) {
  for (const auto& inst : available_instances(tsk, p.table().lambda(), opts))
    if (!satisfies(p, inst.ground)) return false;
  return true;
}

// ----------------------------------------------------------------- encoding

namespace {

int literal(const AtomTable& table, const Formula& atom, bool positive) {
  auto i = table.index_of(atom);
  if (!i) throw std::out_of_range("atom not over the term set: " + render(atom));
  int v = static_cast<int>(*i) + 1;
  return positive ? v : -v;
}

std::vector<Clause> cnf_of(const AtomTable& table, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return {{literal(table, f, true)}};
    case FormulaKind::Not:
      return {{literal(table, f.operand(), false)}};
    case FormulaKind::And: {
      auto a = cnf_of(table, f.lhs());
      auto b = cnf_of(table, f.rhs());
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case FormulaKind::Or: {
      auto a = cnf_of(table, f.lhs());
      auto b = cnf_of(table, f.rhs());
      std::vector<Clause> out;
      for (const auto& x : a)
        for (const auto& y : b) {
          Clause c = x;
          c.insert(c.end(), y.begin(), y.end());
          out.push_back(std::move(c));
        }
      return out;
    }
    default:
      throw std::invalid_argument("ground_cnf needs a quantifier-free formula");
  }
}

// Sorted, duplicate-free; nullopt for tautologies.
std::optional<Clause> tidy(Clause c) {
  std::sort(c.begin(), c.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] == -c[i - 1]) return std::nullopt;
  return c;
}

}  // namespace

std::vector<Clause> ground_cnf(const AtomTable& table, const Formula& ground) {
  std::vector<Clause> out;
  std::set<Clause> seen;
  for (auto& c : cnf_of(table, nnf(ground)))
    if (auto t = tidy(std::move(c)); t && seen.insert(*t).second) out.push_back(*t);
  return out;
}

Encoding encode(const AtomTable& table, const std::vector<SkolemizedFormula>& tsk,
                const std::vector<Formula>& extra, const EncodeOptions& opts) {
  Encoding enc;
  enc.cnf.num_vars = static_cast<int>(table.size());
  auto& out = enc.cnf.clauses;
  auto var = [](std::size_t i) { return static_cast<int>(i) + 1; };
  auto push = [&](Clause c) {
    out.push_back(std::move(c));
    if (out.size() > opts.budget.max_clauses)
      throw BudgetExceeded("encoding exceeds the clause budget");
  };
  const TermSet& lambda = table.lambda();
  const std::size_t n = lambda.size();

  enc.blocks.push_back(out.size());
  for (std::size_t a = 0; a < n; ++a) push({var(table.eq(a, a))});

  enc.blocks.push_back(out.size());
  if (opts.symmetry)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b) push({-var(table.eq(a, b)), var(table.eq(b, a))});

  enc.blocks.push_back(out.size());
  if (opts.transitivity)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (a != b && b != c && a != c)
            push({-var(table.eq(a, b)), -var(table.eq(b, c)), var(table.eq(a, c))});

  // t = s -> (P(..t..) -> P(..s..)), one argument position at a time.
  enc.blocks.push_back(out.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto [pred, args] = table.decode(i);
    for (std::size_t k = 0; k < args.size(); ++k)
      for (std::size_t s = 0; s < n; ++s) {
        if (s == args[k]) continue;
        auto moved = args;
        moved[k] = s;
        std::size_t j = table.index(pred, moved);
        push({-var(table.eq(args[k], s)), -var(i), var(j)});
      }
  }

  enc.blocks.push_back(out.size());
  for (const auto& [head, members] : by_head(lambda))
    for (auto x : members)
      for (auto y : members) {
        if (x == y) continue;
        auto diff = differing_args(lambda, lambda[x], lambda[y]);
        if (!diff) continue;
        Clause c;
        for (auto [a, b] : *diff) c.push_back(-var(table.eq(a, b)));
        c.push_back(var(table.eq(x, y)));
        push(std::move(c));
      }

  enc.blocks.push_back(out.size());
  InstanceOptions iopts{opts.budget, opts.parallel_instances};
  enc.instances = available_instances(tsk, lambda, iopts);
  for (const auto& inst : enc.instances)
    for (auto& c : ground_cnf(table, inst.ground)) push(std::move(c));

  enc.blocks.push_back(out.size());
  for (const auto& f : extra)
    for (auto& c : ground_cnf(table, f)) push(std::move(c));
  return enc;
}

// ------------------------------------------------------------------- search

FindResult find_evaluation(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                           const Signature& sig, const FindOptions& opts,
                           const std::vector<Formula>& extra) {
  if (opts.mode == SearchMode::Brute) return brute_force(tsk, lambda, sig, extra, opts.encode.budget);
  FindResult res;
  res.table = std::make_shared<AtomTable>(lambda, sig, opts.encode.budget);
  res.encoding = encode(*res.table, tsk, extra, opts.encode);
  SatResult sat = solve(res.encoding.cnf, opts.sat);
  if (sat.satisfiable) {
    std::vector<bool> bits(res.table->size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = sat.model[i + 1];
    res.evaluation = Evaluation(res.table, std::move(bits));
  } else {
    res.proof = std::move(sat.proof);
  }
  return res;
}

FindResult brute_force(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                       const Signature& sig, const std::vector<Formula>& extra,
                       const Budget& budget) {
  FindResult res;
  res.table = std::make_shared<AtomTable>(lambda, sig, budget);
  const AtomTable& table = *res.table;
  const std::size_t total = table.size();
  if (total > kBruteForceAtomCap)
    throw BudgetExceeded("exhaustive search refused: " + std::to_string(total) +
                         " atoms exceed the cap of " + std::to_string(kBruteForceAtomCap));
  const std::size_t n = lambda.size();
  const std::size_t eq_atoms = n * n;

  // Constraints to check once their last atom is assigned.
  std::vector<Formula> constraints;
  for (const auto& inst : available_instances(tsk, lambda)) constraints.push_back(inst.ground);
  for (const auto& f : extra) constraints.push_back(f);
  std::vector<std::vector<std::size_t>> due(total + 1);
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    std::size_t last = 0;
    bool any = false;
    for (const auto& a : atoms_of(constraints[c])) {
      auto i = table.index_of(a);
      if (!i) throw std::out_of_range("constraint atom not over the term set: " + render(a));
      last = std::max(last, *i);
      any = true;
    }
    due[any ? last : total].push_back(c);
  }

  Evaluation p(res.table);
  std::vector<std::size_t> cls;
  // Class key of each predicate atom, fixed once the equalities are known.
  std::vector<std::size_t> key(total, 0);
  std::vector<int> key_value;
  std::vector<int> key_count;

  auto prepare_keys = [&] {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    for (std::size_t i = eq_atoms; i < total; ++i) {
      auto [pred, args] = table.decode(i);
      for (auto& a : args) a = cls[a];
      key[i] = ids.emplace(std::make_pair(pred, args), ids.size()).first->second;
    }
    key_value.assign(ids.size(), -1);
    key_count.assign(ids.size(), 0);
  };

  bool found = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (found) return;
    if (i == eq_atoms) {
      if (!equality_defect(table, p.bits(), &cls).empty()) return;
      prepare_keys();
    }
    if (i == total) {
      ++res.leaves;
      // Leaves are re-checked in full, independently of the pruning.
      if (is_evaluation(p)) {
        for (const auto& f : constraints)
          if (!satisfies(p, f)) return;
        found = true;
        res.evaluation = p;
      }
      return;
    }
    bool reflexive = false;
    if (i < eq_atoms) {
      auto a = i / n, b = i % n;
      reflexive = a == b;
    }
    for (int v = reflexive ? 1 : 0; v <= 1 && !found; ++v) {
      p.set(i, v == 1);
      bool ok = true;
      bool counted = false;
      if (i >= eq_atoms) {
        std::size_t k = key[i];
        if (key_count[k] > 0 && key_value[k] != v) ok = false;
        if (ok) {
          key_value[k] = v;
          ++key_count[k];
          counted = true;
        }
      }
      if (ok)
        for (auto c : due[i])
          if (!satisfies(p, constraints[c])) {
            ok = false;
            break;
          }
      if (ok) dfs(i + 1);
      if (counted && --key_count[key[i]] == 0) key_value[key[i]] = -1;
      if (found) return;
    }
    p.set(i, false);
  };
  dfs(0);
  return res;
}

ForceResult force_check(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                        const Signature& sig, const Formula& goal, const FindOptions& opts) {
  ForceResult out;
  out.search = find_evaluation(tsk, lambda, sig, opts, {Formula::negation(goal)});
  out.forced = !out.search.evaluation.has_value();
  out.counterexample = out.search.evaluation;
  return out;
}

}  // namespace hcon
