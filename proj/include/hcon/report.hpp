// Empirical checks of the coding bounds: contract inequalities over random
// corpora, fitted exponents for the growth bounds, and the omega identities.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcon/evaluation.hpp"
#include "hcon/goedel.hpp"
#include "hcon/herbrand.hpp"

namespace hcon {

struct ContractCheck {
  std::string name;  // singleton, concatenation, union, cardinality
  std::size_t samples = 0;
  /// Largest lhs / rhs seen; the inequality holds when this is <= 1.
  double max_ratio = 0;
  bool holds = true;
};

struct CorpusReport {
  std::string corpus;  // terms, formulas, term-sets, evaluations
  std::size_t objects = 0;
  std::size_t collisions = 0;
  std::vector<ContractCheck> checks;
};

/// `objects` random objects per corpus, drawn from a seeded generator over
/// the signature and the registry's Skolem symbols.
std::vector<CorpusReport> contract_report(const Signature& sig, const SkolemRegistry* reg,
                                          std::size_t objects, std::uint64_t seed);

struct ExponentFit {
  std::string name;
  std::vector<BoundSample> samples;
  BoundResult result;
};

/// code(p) against omega_1(code(set)) for each evaluation.
ExponentFit evaluation_code_fit(const std::vector<Evaluation>& evaluations, const CodingScheme& coder,
                                const BoundOptions& opts = {});

struct GrowthOptions {
  std::vector<std::size_t> base_sizes{2, 3, 4, 5, 6};
  std::size_t max_level = 2;
  BoundOptions bound{64, 8, 10};
  Budget budget{};
};

/// |Λ^<n>| against |Λ|^(n!) for numeral bases of Q, 1 <= n <= max_level.
ExponentFit universe_size_fit(const GrowthOptions& opts = {});
/// code(Λ^<j>) against omega_2(code(Λ)) over the same bases.
ExponentFit universe_code_fit(const GrowthOptions& opts = {});

struct OmegaCheck {
  std::string what;
  std::string lhs;
  std::string rhs;
  bool ok = false;
};

/// Agreement of the two omega definitions on small inputs, the identity
/// omega_1(exp^3 j) = exp^3(j+1) for j <= 2, and code^log(code) <= omega_1(code)
/// on the given term sets.
std::vector<OmegaCheck> omega_checks(const std::vector<TermSet>& sets, const CodingScheme& coder,
                                     std::uint64_t ceiling = Budget{}.bit_ceiling);

}  // namespace hcon
