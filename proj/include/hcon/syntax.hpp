// First-order terms, formulas, signatures and theories; parser and printer.
#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hcon {

inline constexpr std::string_view kEquality = "=";

struct SymbolDecl {
  std::string name;
  int arity = 0;
  bool operator==(const SymbolDecl&) const = default;
};

/// Function and predicate symbols of a first-order language.  Equality is
/// built in and never listed among the predicates.
class Signature {
 public:
  Signature() = default;

  void add_function(std::string name, int arity);
  void add_predicate(std::string name, int arity);

  std::optional<int> function_arity(std::string_view name) const;
  std::optional<int> predicate_arity(std::string_view name) const;
  bool declares(std::string_view name) const;

  const std::vector<SymbolDecl>& functions() const { return functions_; }
  const std::vector<SymbolDecl>& predicates() const { return predicates_; }
  std::vector<std::string> constants() const;

  /// Throws if no constant symbol is declared.
  void require_constant() const;

  /// 0, s, +, * and <=.
  static Signature arithmetic();

  bool operator==(const Signature&) const = default;

 private:
  std::vector<SymbolDecl> functions_;
  std::vector<SymbolDecl> predicates_;
};

class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});
  static Term constant(std::string symbol) { return apply(std::move(symbol)); }

  bool is_variable() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;
  std::size_t arity() const { return args().size(); }
  bool is_ground() const;
  std::size_t size() const;
  std::size_t depth() const;
  std::size_t hash() const;

  friend bool operator==(const Term& a, const Term& b);
  /// Canonical order: node count, then symbol name, then arguments.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using Substitution = std::map<std::string, Term>;

Term substitute(const Term& t, const Substitution& s);
/// Replace every occurrence of `from` (as a subterm) by `to`.
Term replace_subterm(const Term& t, const Term& from, const Term& to);

enum class FormulaKind { Atom, Not, And, Or, Implies, Forall, Exists };

class Formula {
 public:
  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula equals(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  FormulaKind kind() const;
  bool is_atom() const { return kind() == FormulaKind::Atom; }
  bool is_literal() const;
  bool is_quantifier() const;
  bool is_binary() const;

  // Atom accessors.
  const std::string& predicate() const;
  const std::vector<Term>& terms() const;
  bool is_equality() const;

  // Connective accessors.
  const Formula& operand() const;  // Not, and quantifier bodies
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return operand(); }
  const std::string& variable() const;

  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula connective(FormulaKind kind, std::string var, std::vector<Formula> kids);
  std::shared_ptr<const Node> node_;
  friend Formula rebuild(const Formula& f, std::vector<Formula> children);
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Same connective and quantifier variable, new children.
Formula rebuild(const Formula& f, std::vector<Formula> children);
std::vector<Formula> children(const Formula& f);

/// Free variables in order of first (leftmost) occurrence.
std::vector<std::string> free_vars(const Formula& f);
std::vector<std::string> term_vars(const Term& t);
/// All variables, bound or free, occurring anywhere.
std::unordered_set<std::string> all_vars(const Formula& f);
bool is_sentence(const Formula& f);

/// Substitutes free occurrences only.  Callers guarantee that no variable of
/// a substituted term is captured by a quantifier of `f`.
Formula substitute(const Formula& f, const Substitution& s);
/// Renames free variables (a formula-level variable-to-variable map).
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& names);

/// `t` and all of its proper subterms.
std::unordered_set<Term, TermHash> subterms(const Term& t);
/// Terms occurring as direct arguments of atoms.
std::vector<Term> atom_arguments(const Formula& f);
std::vector<Formula> atoms_of(const Formula& f);

/// Numeral j: s^j(0), or ((0 + 1) + 1)... when the signature has 1 but no s.
Term numeral(std::size_t j, const Signature& sig);
Term numeral(std::size_t j);

// ---------------------------------------------------------------- printing

struct RenderOptions {
  /// Display names for symbols (e.g. registry names to short aliases).
  const std::map<std::string, std::string>* aliases = nullptr;
  /// Prints Skolem symbols as `sk{source}` when set.
  std::function<std::optional<std::string>(const std::string&)> provenance;
};

std::string render(const Term& t, const RenderOptions& opts = {});
std::string render(const Formula& f, const RenderOptions& opts = {});

// ----------------------------------------------------------------- parsing

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct SkolemReference {
  std::string symbol;
  int arity = 0;
};

struct ParseContext {
  const Signature* signature = nullptr;
  /// Names usable as free variables.
  std::vector<std::string> free_vars;
  /// Every undeclared identifier becomes a free variable.
  bool any_free_vars = false;
  /// Alias -> symbol name.
  const std::map<std::string, std::string>* aliases = nullptr;
  /// Extra function symbols (e.g. registered Skolem symbols) by name.
  std::function<std::optional<int>(const std::string&)> extra_function;
  /// Resolves `sk{ exists x. F }` to a symbol; arguments follow the free
  /// variables of the bracketed formula in first-occurrence order.
  std::function<SkolemReference(const Formula&)> skolem_resolver;
};

Formula parse_formula(std::string_view text, const ParseContext& ctx);
Formula parse_formula(std::string_view text, const Signature& sig);
Term parse_term(std::string_view text, const ParseContext& ctx);

// ------------------------------------------------------------------ theory

struct Theory {
  std::string name;
  Signature signature;
  std::vector<Formula> axioms;
};

/// First line `signature: f/2 g/1 ; P/2`, one axiom per line, `#` comments.
Theory parse_theory(std::string_view text, std::string name);
Theory load_theory(const std::string& path);
std::string render_theory(const Theory& t);
std::string render_signature(const Signature& sig);
Signature parse_signature_line(std::string_view line);

}  // namespace hcon
