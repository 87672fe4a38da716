// Skolemization of rectified negation normal forms and the symbol registry.
#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hcon/syntax.hpp"

namespace hcon {

struct SkolemSymbol {
  std::string name;
  int arity = 0;
  /// The existential formula, rectified, free variables renamed #1, #2, ...
  Formula source;
  /// render(source); the registry key.
  std::string key;
};

/// Canonical key of an existential formula: free variables replaced by #1,
/// #2, ... in first-occurrence order, then rnnf.  Alpha-variants share a key.
std::string skolem_key(const Formula& existential);

class SkolemRegistry {
 public:
  explicit SkolemRegistry(std::string prefix = "sk") : prefix_(std::move(prefix)) {}
  SkolemRegistry(const SkolemRegistry& other);
  SkolemRegistry& operator=(const SkolemRegistry& other);

  /// Symbol for `exists x. phi`; registers it on first use.  Its arguments are
  /// the free variables of the formula in first-occurrence order.
  SkolemSymbol intern(const Formula& existential);

  std::optional<SkolemSymbol> find(const std::string& name) const;
  std::optional<SkolemSymbol> find_key(const std::string& key) const;
  std::optional<int> arity(const std::string& name) const;
  /// In registration order.
  std::vector<SkolemSymbol> symbols() const;
  std::size_t size() const;

  /// Source formula with placeholders shown as _1, _2, ...; parseable inside
  /// `sk{...}`.
  std::optional<std::string> provenance(const std::string& name) const;

  /// Hooks the registry into a parse context (symbol names and sk{...}).
  void bind(ParseContext& ctx);
  /// Render options printing Skolem symbols as sk{...}.
  RenderOptions provenance_options() const;

  /// Held by skolemize_theory so a theory's symbols are numbered contiguously.
  std::recursive_mutex& mutex() const { return mutex_; }

 private:
  std::string prefix_;
  std::vector<SkolemSymbol> symbols_;
  std::map<std::string, std::size_t> by_key_;
  std::map<std::string, std::size_t> by_name_;
  mutable std::recursive_mutex mutex_;
};

struct SkolemizedFormula {
  Formula open;
  std::vector<std::string> free_vars;
  /// Index of the axiom (or extra formula) it came from.
  std::size_t source_index = 0;
  Formula original;
  /// Skolem symbols occurring in `open`, in registration order.
  std::vector<std::string> symbols;
};

/// phi^S for an RNNF formula: existentials replaced by Skolem terms,
/// universals kept.
Formula skolem_step(const Formula& f, SkolemRegistry& reg);

/// Drops universal quantifiers (the formula must be existential-free).
Formula strip_universals(const Formula& f);

SkolemizedFormula skolemize(const Formula& f, SkolemRegistry& reg, std::size_t index = 0);
std::vector<SkolemizedFormula> skolemize_theory(const Theory& t, SkolemRegistry& reg);

/// Induction axiom (psi(0) & forall x (psi(x) -> psi(s x))) -> forall x psi(x)
/// for a formula with exactly one free variable.
Formula induction_axiom(const Formula& psi);
SkolemizedFormula skolemize_induction(const Formula& psi, SkolemRegistry& reg,
                                      std::size_t index = 0);

}  // namespace hcon
