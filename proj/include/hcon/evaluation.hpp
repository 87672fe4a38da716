// Evaluations over a term set: atom tables, congruence, satisfaction, the
// SAT encoding and the exhaustive oracle.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hcon/budget.hpp"
#include "hcon/instantiation.hpp"
#include "hcon/sat.hpp"
#include "hcon/skolem.hpp"
#include "hcon/syntax.hpp"

namespace hcon {

/// All atoms over a term set: equality first, then the signature's
/// predicates in declaration order, argument tuples in lexicographic order
/// of term indices.
class AtomTable {
 public:
  AtomTable(TermSet lambda, const Signature& sig, const Budget& budget = {});

  const TermSet& lambda() const { return lambda_; }
  std::size_t size() const { return total_; }
  /// Predicate names in table order ("=" first).
  const std::vector<SymbolDecl>& predicates() const { return preds_; }

  Formula atom(std::size_t index) const;
  std::optional<std::size_t> index_of(const Formula& atom) const;
  std::size_t index(std::size_t pred, const std::vector<std::size_t>& args) const;
  /// Predicate position and argument term indices of an atom index.
  std::pair<std::size_t, std::vector<std::size_t>> decode(std::size_t index) const;
  std::size_t eq(std::size_t a, std::size_t b) const { return a * lambda_.size() + b; }

 private:
  TermSet lambda_;
  std::vector<SymbolDecl> preds_;
  std::vector<std::size_t> offset_;
  std::size_t total_ = 0;
};

class Evaluation {
 public:
  Evaluation() = default;
  explicit Evaluation(std::shared_ptr<const AtomTable> table);
  Evaluation(std::shared_ptr<const AtomTable> table, std::vector<bool> bits);

  /// Bits from a list of true atoms; every t = t is added when asked.
  static Evaluation from_true_atoms(std::shared_ptr<const AtomTable> table,
                                    const std::vector<Formula>& atoms, bool add_reflexive = true);

  const AtomTable& table() const { return *table_; }
  std::shared_ptr<const AtomTable> table_ptr() const { return table_; }
  const std::vector<bool>& bits() const { return bits_; }
  bool bit(std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool v) { bits_[i] = v; }
  /// Throws std::out_of_range when the atom is not over the table's terms.
  bool value(const Formula& atom) const;

  /// Rendered true atoms, sorted; the serialization format.
  std::vector<std::string> true_atoms(const RenderOptions& opts = {}) const;

 private:
  std::shared_ptr<const AtomTable> table_;
  std::vector<bool> bits_;
};

/// Reflexivity, equality classes, functional and predicate congruence.
bool is_evaluation(const Evaluation& p);
/// Diagnostic for a failed is_evaluation.
std::string evaluation_defect(const Evaluation& p);

/// Truth of a ground quantifier-free formula.
bool satisfies(const Evaluation& p, const Formula& ground);

std::vector<SkolemInstance> violated_instances(const Evaluation& p,
                                               const std::vector<SkolemizedFormula>& tsk,
                                               const InstanceOptions& opts = {});
bool is_T_evaluation(const Evaluation& p, const std::vector<SkolemizedFormula>& tsk,
                     const InstanceOptions& opts = {});

struct EqClasses {
  /// class_of[i] is the class of term i; classes are numbered by their
  /// smallest member, members ascending.
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> members;
  std::size_t representative(std::size_t cls) const { return members[cls].front(); }
};

EqClasses eq_classes(const Evaluation& p);

struct EncodeOptions {
  bool symmetry = true;
  bool transitivity = true;
  Budget budget{};
  bool parallel_instances = false;
};

struct Encoding {
  Cnf cnf;
  std::vector<SkolemInstance> instances;
  /// Clause index where each block starts: reflexivity, symmetry,
  /// transitivity, predicate congruence, functional congruence, instances,
  /// extra constraints.
  std::vector<std::size_t> blocks;
};

/// One variable per atom (index + 1).  `extra` are ground formulas that must
/// also hold; they are negation normalized first.
Encoding encode(const AtomTable& table, const std::vector<SkolemizedFormula>& tsk,
                const std::vector<Formula>& extra = {}, const EncodeOptions& opts = {});

/// Clauses of a ground formula by distribution.
std::vector<Clause> ground_cnf(const AtomTable& table, const Formula& ground);

enum class SearchMode { Sat, Brute };

inline constexpr std::size_t kBruteForceAtomCap = 24;

struct FindOptions {
  SearchMode mode = SearchMode::Sat;
  EncodeOptions encode{};
  SatOptions sat{};
};

struct FindResult {
  std::optional<Evaluation> evaluation;
  std::shared_ptr<const AtomTable> table;
  Encoding encoding;             // Sat mode
  std::vector<ResolutionStep> proof;  // Sat mode, unsatisfiable
  std::uint64_t leaves = 0;      // Brute mode: complete assignments examined
};

FindResult find_evaluation(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                           const Signature& sig, const FindOptions& opts = {},
                           const std::vector<Formula>& extra = {});

/// Exhaustive search over all bit assignments (reflexive atoms fixed),
/// pruned by partial congruence and instance checks; at most 24 atoms.
FindResult brute_force(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                       const Signature& sig, const std::vector<Formula>& extra = {},
                       const Budget& budget = {});

struct ForceResult {
  bool forced = false;
  std::optional<Evaluation> counterexample;
  FindResult search;
};

/// Forced iff no T-evaluation on the set falsifies `goal`.
ForceResult force_check(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                        const Signature& sig, const Formula& goal, const FindOptions& opts = {});

}  // namespace hcon
