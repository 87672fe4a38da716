// Test-side reference implementations, written directly from the
// definitions and sharing no code paths with the library beyond syntax.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hcon/syntax.hpp"

namespace oracle {

using hcon::Formula;
using hcon::Signature;
using hcon::Term;

/// Truth assignment on ground atoms, keyed by rendered atom.
using Valuation = std::set<std::string>;

/// All atoms with arguments in `lambda`, "=" first, then predicates in
/// signature order, arguments in lexicographic index order.
std::vector<Formula> all_atoms(const std::vector<Term>& lambda, const Signature& sig);

/// Reflexivity, single-position congruence for every predicate (equality
/// included) and functional congruence, checked literally.
bool is_evaluation(const std::vector<Term>& lambda, const Signature& sig, const Valuation& v);

bool holds(const Valuation& v, const Formula& ground);

/// Every free-variable substitution over `lambda` whose atoms take only
/// `lambda` members as direct arguments; deduplicated by rendered result.
std::set<std::string> available(const Formula& open, const std::vector<Term>& lambda,
                                std::vector<Formula>* out = nullptr);

/// Exhaustive search over every assignment of the non-reflexive atoms.
/// Returns the number of T-evaluations (stopping at `limit`).
std::uint64_t count_t_evaluations(const std::vector<Term>& lambda, const Signature& sig,
                                  const std::vector<Formula>& opens,
                                  const std::vector<Formula>& extra = {}, std::uint64_t limit = 1);

/// Truth-table satisfiability for clause sets over at most ~22 variables.
bool truth_table_sat(int num_vars, const std::vector<std::vector<int>>& clauses);

// ---------------------------------------------------------- finite models

struct Structure {
  int size = 1;
  std::map<std::string, std::vector<int>> functions;  // flattened tables
  std::map<std::string, std::vector<bool>> predicates;
};

Structure random_structure(const Signature& sig, int size, std::mt19937_64& rng);
/// Standard Tarskian truth; free variables read from `env`.
bool models(const Structure& m, const Signature& sig, const Formula& f,
            std::map<std::string, int> env = {});
int value(const Structure& m, const Term& t, const std::map<std::string, int>& env);

// ---------------------------------------------------------------- codings

/// Bit string 1 gamma(L(n1)) rest(n1) ... as a number, built from strings.
mpz_class sequence_code(const std::vector<mpz_class>& elements);

// ------------------------------------------------------------- generators

/// Random term of depth at most `depth` over the signature's functions and
/// the given variables.
Term random_term(const Signature& sig, const std::vector<std::string>& vars, int depth,
                 std::mt19937_64& rng);
Term random_ground_term(const Signature& sig, int depth, std::mt19937_64& rng);
/// Random formula using every connective and both quantifiers.
Formula random_formula(const Signature& sig, std::vector<std::string> vars, int depth,
                       std::mt19937_64& rng, bool allow_free = true);

}  // namespace oracle
