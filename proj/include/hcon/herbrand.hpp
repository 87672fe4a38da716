// Herbrand provability: universe levels, proofs with checkable certificates,
// quotient models, the arithmetic term families and HCon checks.
#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcon/evaluation.hpp"
#include "hcon/goedel.hpp"
#include "hcon/instantiation.hpp"
#include "hcon/sat.hpp"
#include "hcon/skolem.hpp"
#include "hcon/syntax.hpp"

namespace hcon {

// ------------------------------------------------------------ universes

struct UniverseLevel {
  TermSet base;
  /// The level the base is taken to sit at.
  mpz_class origin = 0;
  mpz_class k = 0;
  TermSet terms;
  std::vector<SkolemSymbol> symbols;
};

UniverseLevel make_universe(TermSet base, const SkolemRegistry& reg, mpz_class origin = 0);
/// Largest code of a registered symbol's source body: from this level on,
/// every registered Skolem symbol is admitted.
mpz_class admitting_origin(const SkolemRegistry& reg, const CodingScheme& coder);

/// One closure step: adds f(t1..tm) for every signature function and every
/// Skolem symbol whose source body has code <= k, with all ti at level k.
UniverseLevel grow_universe(const UniverseLevel& u, const Signature& sig,
                            const CodingScheme& coder, const Budget& budget = {});

// --------------------------------------------------------------- proving

struct BruteStamp {
  std::size_t atoms = 0;
  std::uint64_t leaves = 0;
};

struct ProofCertificate {
  Theory theory;
  Formula goal;
  std::vector<SkolemSymbol> skolem;
  TermSet lambda;
  bool symmetry = true;
  bool transitivity = true;
  Cnf cnf;
  std::variant<std::vector<ResolutionStep>, BruteStamp> witness;
};

struct ProveOptions {
  std::size_t max_level = 3;
  /// Tried first, in order.  Terms may mention the goal's Skolem symbols.
  std::vector<TermSet> seeds;
  std::optional<mpz_class> origin;
  SearchMode mode = SearchMode::Sat;
  EncodeOptions encode{};
  SatOptions sat{};
  bool parallel = false;
};

enum class ProveStatus { Proved, Unknown };

struct ProveResult {
  ProveStatus status = ProveStatus::Unknown;
  std::optional<ProofCertificate> certificate;
  std::string message;
  std::size_t candidates_tried = 0;
};

/// Skolemized theory followed by the Skolemized negated goal at the end.
std::vector<SkolemizedFormula> skolemize_refutation(const Theory& t, const Formula& goal,
                                                    SkolemRegistry& reg);

/// Seeds, then universe levels over the negated goal's Skolem constants (or
/// the signature constants when it has none).
ProveResult prove(const Theory& t, const Formula& goal, SkolemRegistry& reg,
                  const ProveOptions& opts = {});

/// Re-derives everything from theory, goal and term set and replays the
/// witness.  `message` names the first mismatch.
CheckResult check_certificate(const ProofCertificate& c);

std::string serialize_certificate(const ProofCertificate& c);
ProofCertificate parse_certificate(const std::string& text);

// -------------------------------------------------------- quotient models

enum class Truth { False, True, Undefined };
std::string to_string(Truth t);

struct HerbrandModel {
  TermSet lambda;
  EqClasses classes;
  /// (symbol, argument classes) -> class; only where the term is in the set.
  std::map<std::pair<std::string, std::vector<std::size_t>>, std::size_t> functions;
  /// Predicate -> true class tuples (equality excluded).
  std::map<std::string, std::set<std::vector<std::size_t>>> relations;

  std::size_t class_of(const Term& t) const;
  bool holds(const std::string& predicate, const std::vector<std::size_t>& args) const;
};

HerbrandModel build_quotient_model(const Evaluation& p);

/// Kleene three-valued truth; quantifiers must be bounded (x <= t guards).
Truth eval_in_model(const HerbrandModel& m, const Formula& f,
                    const std::map<std::string, std::size_t>& assignment = {});
/// Class of a term, nullopt when a function entry is missing.
std::optional<std::size_t> eval_term(const HerbrandModel& m, const Term& t,
                                     const std::map<std::string, std::size_t>& assignment = {});

// ------------------------------------------------------- arithmetic terms

/// Robinson's Q over 0, s, +, * and <=.
Theory robinson_q();

std::vector<Term> numeral_terms(std::size_t n);

/// The unary Skolem symbol for exists y. omega1(x, y).
std::string omega1_symbol(SkolemRegistry& reg);
/// w_0 = 4, w_{j+1} = w(w_j), for j <= n.
std::vector<Term> w_terms(std::size_t n, SkolemRegistry& reg);

/// psi(x) = exists y (y <= x*x & y = x*x), its induction axiom Skolemized,
/// and the symbols q (squaring witness) and c (counterexample constant).
struct SquaringInduction {
  Formula psi;
  SkolemizedFormula axiom;
  std::string q;
  std::string c;
};
SquaringInduction squaring_induction(SkolemRegistry& reg, std::size_t index = 0);

/// z_0 = 2, z_{j+1} = q(z_j), for j <= n.
std::vector<Term> z_terms(std::size_t n, SkolemRegistry& reg);
/// {0, 0+0, 0*0, c, c*c, c*c+0, s(c), q(c), s(c)*s(c), s(c)*s(c)+0}
TermSet upsilon(SkolemRegistry& reg);

enum class LambdaFlavor { Omega1, Delta0 };
TermSet lambda_alpha(std::size_t alpha, LambdaFlavor flavor, SkolemRegistry& reg,
                     const Budget& budget = {});

/// A T-evaluation exists on the set.
bool hcon_check(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                const Signature& sig, const FindOptions& opts = {});

enum class HconStar { Sat, Unsat, NotApplicable };
std::string to_string(HconStar h);
/// NotApplicable unless omega_1 of the set's code fits the ceiling.
HconStar hcon_star_check(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                         const Signature& sig, const CodingScheme& coder,
                         std::uint64_t ceiling, const FindOptions& opts = {});

}  // namespace hcon
