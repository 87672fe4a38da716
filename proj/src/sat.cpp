#include "hcon/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "hcon/budget.hpp"

namespace hcon {

namespace {

inline int lit_of(int dimacs) {
  return dimacs > 0 ? 2 * (dimacs - 1) : 2 * (-dimacs - 1) + 1;
}
inline int dimacs_of(int lit) { return (lit & 1) ? -(lit / 2 + 1) : lit / 2 + 1; }
inline int var_of(int lit) { return lit >> 1; }

class Solver {
 public:
  Solver(const Cnf& cnf, const SatOptions& opts)
      : opts_(opts), n_(cnf.num_vars), base_ids_(cnf.clauses.size()) {
    value_.assign(n_, -1);
    level_.assign(n_, 0);
    reason_.assign(n_, -1);
    trail_pos_.assign(n_, 0);
    mark_.assign(n_, 0);
    watches_.resize(2 * static_cast<std::size_t>(n_));
    original_ = cnf.clauses;
  }

  SatResult run() {
    SatResult res;
    std::vector<int> units;
    for (std::size_t i = 0; i < original_.size(); ++i) {
      std::vector<int> lits;
      bool tautology = false;
      for (int d : original_[i]) {
        if (d == 0 || std::abs(d) > n_) throw std::invalid_argument("literal out of range");
        int l = lit_of(d);
        if (std::find(lits.begin(), lits.end(), l ^ 1) != lits.end()) tautology = true;
        if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
      }
      if (tautology) continue;
      if (lits.empty()) {
        res.proof.push_back({base_ids_, {}, {i}});
        return res;
      }
      int c = add_clause(std::move(lits), i);
      if (clauses_[c].size() == 1) units.push_back(c);
    }
    for (int c : units) {
      int l = clauses_[c][0];
      if (lit_false(l)) {
        return finish_unsat(c, res);
      }
      if (!lit_true(l)) enqueue(l, c);
    }
    while (true) {
      int conflict = propagate();
      if (conflict >= 0) {
        ++res.conflicts;
        if (res.conflicts > opts_.max_conflicts)
          throw BudgetExceeded("SAT search exceeded the conflict budget");
        if (decision_level() == 0) return finish_unsat(conflict, res);
        learn(conflict, res);
        continue;
      }
      int v = pick();
      if (v < 0) break;
      ++res.decisions;
      trail_lim_.push_back(trail_.size());
      enqueue(2 * v + 1, -1);
    }
    res.satisfiable = true;
    res.model.assign(n_ + 1, false);
    for (int v = 0; v < n_; ++v) res.model[v + 1] = value_[v] == 1;
    if (!opts_.log_proof) res.proof.clear();
    return res;
  }

 private:
  int add_clause(std::vector<int> lits, std::size_t id) {
    int c = static_cast<int>(clauses_.size());
    clauses_.push_back(std::move(lits));
    ids_.push_back(id);
    if (clauses_[c].size() >= 2) {
      watches_[clauses_[c][0]].push_back(c);
      watches_[clauses_[c][1]].push_back(c);
    }
    return c;
  }

  bool lit_true(int l) const {
    int v = value_[var_of(l)];
    return v >= 0 && v == ((l & 1) ? 0 : 1);
  }
  bool lit_false(int l) const {
    int v = value_[var_of(l)];
    return v >= 0 && v == ((l & 1) ? 1 : 0);
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(int l, int reason) {
    int v = var_of(l);
    value_[v] = (l & 1) ? 0 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_pos_[v] = trail_.size();
    trail_.push_back(l);
  }

  int propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      int falsified = p ^ 1;
      auto& ws = watches_[falsified];
      std::size_t i = 0, j = 0;
      int conflict = -1;
      while (i < ws.size()) {
        int c = ws[i++];
        auto& cl = clauses_[c];
        if (cl[0] == falsified) std::swap(cl[0], cl[1]);
        if (lit_true(cl[0])) {
          ws[j++] = c;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < cl.size(); ++k) {
          if (!lit_false(cl[k])) {
            std::swap(cl[1], cl[k]);
            watches_[cl[1]].push_back(c);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = c;
        if (lit_false(cl[0])) {
          conflict = c;
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(cl[0], c);
        }
      }
      ws.resize(j);
      if (conflict >= 0) return conflict;
    }
    return -1;
  }

  int pick() {
    while (next_var_ < n_ && value_[next_var_] >= 0) ++next_var_;
    return next_var_ < n_ ? next_var_ : -1;
  }

  void backtrack(int lvl) {
    if (decision_level() <= lvl) return;
    std::size_t stop = trail_lim_[lvl];
    for (std::size_t i = trail_.size(); i-- > stop;) {
      int v = var_of(trail_[i]);
      value_[v] = -1;
      reason_[v] = -1;
      next_var_ = std::min(next_var_, v);
    }
    trail_.resize(stop);
    trail_lim_.resize(lvl);
    qhead_ = stop;
  }

  // Working clause for analysis: mark_[v] holds lit+1 for member literals.
  void add_to_work(int c, int skip_var) {
    for (int l : clauses_[c]) {
      int v = var_of(l);
      if (v == skip_var || mark_[v]) continue;
      mark_[v] = l + 1;
      work_.push_back(v);
      if (level_[v] == decision_level()) ++at_level_;
    }
  }

  void resolve_on(int v, std::vector<std::size_t>& chain) {
    mark_[v] = 0;
    if (level_[v] == decision_level()) --at_level_;
    int r = reason_[v];
    chain.push_back(ids_[r]);
    add_to_work(r, v);
  }

  void drop_level_zero(std::vector<std::size_t>& chain) {
    std::size_t end = trail_lim_.empty() ? trail_.size() : trail_lim_[0];
    for (std::size_t i = end; i-- > 0;) {
      int v = var_of(trail_[i]);
      if (mark_[v]) resolve_on(v, chain);
    }
  }

  std::vector<int> collect_work() {
    std::vector<int> out;
    for (int v : work_)
      if (mark_[v]) {
        out.push_back(mark_[v] - 1);
        mark_[v] = 0;
      }
    work_.clear();
    return out;
  }

  SatResult& finish_unsat(int conflict, SatResult& res) {
    std::vector<std::size_t> chain{ids_[conflict]};
    at_level_ = 0;
    add_to_work(conflict, -1);
    drop_level_zero(chain);
    collect_work();
    res.proof.push_back({base_ids_ + learned_, {}, chain});
    res.satisfiable = false;
    return res;
  }

  void learn(int conflict, SatResult& res) {
    std::vector<std::size_t> chain{ids_[conflict]};
    at_level_ = 0;
    add_to_work(conflict, -1);
    std::size_t idx = trail_.size();
    while (at_level_ > 1) {
      int v;
      do {
        v = var_of(trail_[--idx]);
      } while (!mark_[v] || level_[v] != decision_level());
      resolve_on(v, chain);
    }
    drop_level_zero(chain);
    std::vector<int> lits = collect_work();
    // UIP first, then the literal of highest level for the second watch.
    auto uip = std::find_if(lits.begin(), lits.end(),
                            [&](int l) { return level_[var_of(l)] == decision_level(); });
    std::iter_swap(lits.begin(), uip);
    int back = 0;
    if (lits.size() > 1) {
      auto hi = std::max_element(lits.begin() + 1, lits.end(), [&](int a, int b) {
        return level_[var_of(a)] < level_[var_of(b)];
      });
      std::iter_swap(lits.begin() + 1, hi);
      back = level_[var_of(lits[1])];
    }
    std::size_t id = base_ids_ + learned_++;
    if (opts_.log_proof) {
      Clause dimacs;
      for (int l : lits) dimacs.push_back(dimacs_of(l));
      res.proof.push_back({id, dimacs, chain});
    }
    backtrack(back);
    int c = add_clause(lits, id);
    enqueue(clauses_[c][0], c);
  }

  SatOptions opts_;
  int n_;
  std::size_t base_ids_;
  std::vector<Clause> original_;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::size_t> ids_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> value_, level_, reason_, mark_, work_;
  std::vector<std::size_t> trail_pos_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  int next_var_ = 0;
  int at_level_ = 0;
  std::size_t learned_ = 0;
};

}  // namespace

SatResult solve(const Cnf& cnf, const SatOptions& opts) { return Solver(cnf, opts).run(); }

namespace {

std::set<int> as_set(const Clause& c) { return {c.begin(), c.end()}; }

std::string show(const std::set<int>& c) {
  std::string s = "{";
  for (int l : c) s += " " + std::to_string(l);
  return s + " }";
}

}  // namespace

CheckResult check_refutation(const Cnf& cnf, const std::vector<ResolutionStep>& proof) {
  std::vector<std::set<int>> known;
  known.reserve(cnf.clauses.size() + proof.size());
  for (const auto& c : cnf.clauses) known.push_back(as_set(c));
  if (proof.empty()) return {false, "empty proof"};
  for (const auto& step : proof) {
    if (step.id != known.size())
      return {false, "step id " + std::to_string(step.id) + " out of sequence"};
    if (step.antecedents.empty())
      return {false, "step " + std::to_string(step.id) + " has no antecedents"};
    for (auto a : step.antecedents)
      if (a >= known.size())
        return {false, "step " + std::to_string(step.id) + " cites unknown clause " +
                           std::to_string(a)};
    std::set<int> cur = known[step.antecedents[0]];
    for (std::size_t k = 1; k < step.antecedents.size(); ++k) {
      const auto& other = known[step.antecedents[k]];
      int pivot = 0;
      int clashes = 0;
      for (int l : cur)
        if (other.count(-l)) {
          pivot = l;
          ++clashes;
        }
      if (clashes != 1)
        return {false, "step " + std::to_string(step.id) + ": resolving with clause " +
                           std::to_string(step.antecedents[k]) + " has " +
                           std::to_string(clashes) + " clashing literals"};
      cur.erase(pivot);
      for (int l : other)
        if (l != -pivot) cur.insert(l);
    }
    if (cur != as_set(step.clause))
      return {false, "step " + std::to_string(step.id) + " derives " + show(cur) +
                         ", certificate claims " + show(as_set(step.clause))};
    known.push_back(cur);
  }
  if (!known.back().empty()) return {false, "final clause is not empty"};
  return {true, "refutation of " + std::to_string(proof.size()) + (proof.size() == 1 ? " step" : " steps") + " verified"};
}

bool satisfies(const Cnf& cnf, const std::vector<bool>& model) {
  for (const auto& c : cnf.clauses) {
    bool sat = false;
    for (int l : c) {
      int v = std::abs(l);
      if (v < static_cast<int>(model.size()) && model[v] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace hcon
