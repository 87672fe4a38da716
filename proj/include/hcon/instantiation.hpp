// Term sets, Skolem instances and availability.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hcon/budget.hpp"
#include "hcon/skolem.hpp"
#include "hcon/syntax.hpp"

namespace hcon {

/// A finite set of ground terms kept in canonical order.
class TermSet {
 public:
  TermSet() = default;
  explicit TermSet(std::vector<Term> terms, std::string label = {});

  bool insert(const Term& t);
  void insert_all(const TermSet& other);
  bool contains(const Term& t) const { return index_.count(t) > 0; }
  std::optional<std::size_t> index_of(const Term& t) const;

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Term& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<Term>& elements() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  bool subset_of(const TermSet& other) const;
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  friend bool operator==(const TermSet& a, const TermSet& b) { return a.terms_ == b.terms_; }

 private:
  void reindex();
  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::string label_;
};

/// One term per line; `#` starts a comment; `alias NAME = sk{...}` lines
/// name Skolem symbols for the rest of the file.  Returns the alias map
/// (alias -> registry symbol) through `aliases` when given.
TermSet parse_term_set(std::string_view text, const Signature& sig, SkolemRegistry& reg,
                       std::map<std::string, std::string>* aliases = nullptr);
TermSet load_term_set(const std::string& path, const Signature& sig, SkolemRegistry& reg,
                      std::map<std::string, std::string>* aliases = nullptr);

struct SkolemInstance {
  std::size_t source = 0;
  Substitution subst;
  Formula ground;
};

/// Throws std::invalid_argument when a free variable is missing or a
/// substitute is not ground.
SkolemInstance instantiate(const SkolemizedFormula& sf, const Substitution& subst);

/// Every direct argument of every atom belongs to the set.
bool is_available(const Formula& ground, const TermSet& lambda);
bool is_available(const SkolemInstance& inst, const TermSet& lambda);

struct InstanceOptions {
  Budget budget{};
  bool parallel = false;
};

/// All available instances, free variables ranging over the set, deduplicated
/// by ground formula; ordered by source, then by index tuple.
std::vector<SkolemInstance> available_instances(const std::vector<SkolemizedFormula>& tsk,
                                                const TermSet& lambda,
                                                const InstanceOptions& opts = {});

}  // namespace hcon
