// CDCL solver over DIMACS-style clauses with resolution proof logging, and
// an independent refutation checker.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hcon {

using Clause = std::vector<int>;

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

/// A derived clause: resolve antecedents[0] with antecedents[1], the result
/// with antecedents[2], and so on.  Ids below the input clause count refer
/// to input clauses.
struct ResolutionStep {
  std::size_t id = 0;
  Clause clause;
  std::vector<std::size_t> antecedents;
};

struct SatOptions {
  std::uint64_t max_conflicts = 5'000'000;
  bool log_proof = true;
};

struct SatResult {
  bool satisfiable = false;
  /// model[v] for v in 1..num_vars (model[0] unused).
  std::vector<bool> model;
  /// Learned clauses in order; the last one is empty when unsatisfiable.
  std::vector<ResolutionStep> proof;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
};

/// Lowest-index unassigned variable first, false first; no restarts.
/// Throws BudgetExceeded past max_conflicts.
SatResult solve(const Cnf& cnf, const SatOptions& opts = {});

struct CheckResult {
  bool ok = false;
  std::string message;
};

/// Replays a linear resolution refutation: every step must resolve on
/// exactly one clashing literal and the final clause must be empty.
CheckResult check_refutation(const Cnf& cnf, const std::vector<ResolutionStep>& proof);

/// True when `model` satisfies every clause.
bool satisfies(const Cnf& cnf, const std::vector<bool>& model);

std::string to_dimacs(const Cnf& cnf);

}  // namespace hcon
