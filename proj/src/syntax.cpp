#include "hcon/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace hcon {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------- Signature

void Signature::add_function(std::string name, int arity) {
  if (arity < 0) throw std::invalid_argument("negative arity for " + name);
  if (declares(name) || name == kEquality)
    throw std::invalid_argument("duplicate symbol " + name);
  functions_.push_back({std::move(name), arity});
}

void Signature::add_predicate(std::string name, int arity) {
  if (arity < 0) throw std::invalid_argument("negative arity for " + name);
  if (declares(name) || name == kEquality)
    throw std::invalid_argument("duplicate symbol " + name);
  predicates_.push_back({std::move(name), arity});
}

std::optional<int> Signature::function_arity(std::string_view name) const {
  for (const auto& d : functions_)
    if (d.name == name) return d.arity;
  return std::nullopt;
}

std::optional<int> Signature::predicate_arity(std::string_view name) const {
  if (name == kEquality) return 2;
  for (const auto& d : predicates_)
    if (d.name == name) return d.arity;
  return std::nullopt;
}

bool Signature::declares(std::string_view name) const {
  return function_arity(name).has_value() ||
         (name != kEquality && predicate_arity(name).has_value());
}

std::vector<std::string> Signature::constants() const {
  std::vector<std::string> out;
  for (const auto& d : functions_)
    if (d.arity == 0) out.push_back(d.name);
  return out;
}

void Signature::require_constant() const {
  if (constants().empty())
    throw std::invalid_argument("signature declares no constant symbol");
}

Signature Signature::arithmetic() {
  Signature sig;
  sig.add_function("0", 0);
  sig.add_function("s", 1);
  sig.add_function("+", 2);
  sig.add_function("*", 2);
  sig.add_predicate("<=", 2);
  return sig;
}

// --------------------------------------------------------------------- Term

struct Term::Node {
  bool variable = false;
  std::string name;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 0;
  bool ground = true;
};

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->variable = true;
  n->hash = mix(std::hash<std::string>{}(name), 1);
  n->name = std::move(name);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  std::size_t h = mix(std::hash<std::string>{}(symbol), 2);
  for (const auto& a : args) {
    h = mix(h, a.hash());
    n->size += a.size();
    n->depth = std::max(n->depth, a.depth() + 1);
    n->ground = n->ground && a.is_ground();
  }
  n->hash = h;
  n->name = std::move(symbol);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_variable() const { return node_->variable; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }
bool Term::is_ground() const { return node_->ground; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::depth() const { return node_->depth; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return a.is_variable() == b.is_variable() && a.name() == b.name() &&
         a.args() == b.args();
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (a.is_variable() != b.is_variable())
    return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.name().compare(b.name()); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Term substitute(const Term& t, const Substitution& s) {
  if (t.is_variable()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  if (t.is_ground()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(substitute(a, s));
  return Term::apply(t.name(), std::move(args));
}

Term replace_subterm(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (t.is_variable() || t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(replace_subterm(a, from, to));
  return Term::apply(t.name(), std::move(args));
}

// ------------------------------------------------------------------ Formula

struct Formula::Node {
  FormulaKind kind = FormulaKind::Atom;
  std::string name;  // predicate or bound variable
  std::vector<Term> terms;
  std::vector<Formula> kids;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t formula_hash(FormulaKind k, const std::string& name,
                         const std::vector<Term>& terms,
                         const std::vector<Formula>& kids) {
  std::size_t h = mix(static_cast<std::size_t>(k) + 17, std::hash<std::string>{}(name));
  for (const auto& t : terms) h = mix(h, t.hash());
  for (const auto& f : kids) h = mix(h, f.hash());
  return h;
}

}  // namespace

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->hash = formula_hash(n->kind, predicate, args, {});
  n->name = std::move(predicate);
  n->terms = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::equals(Term lhs, Term rhs) {
  return atom(std::string(kEquality), {std::move(lhs), std::move(rhs)});
}

Formula Formula::connective(FormulaKind kind, std::string var, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(var);
  for (const auto& k : kids) n->size += k.size();
  n->hash = formula_hash(n->kind, n->name, n->terms, kids);
  n->kids = std::move(kids);
  return Formula(std::move(n));
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  if (f.is_atom()) return f;
  return Formula::connective(f.kind(), f.is_quantifier() ? f.variable() : std::string(),
                             std::move(kids));
}

Formula Formula::negation(Formula f) { return connective(FormulaKind::Not, "", {std::move(f)}); }
Formula Formula::conjunction(Formula a, Formula b) {
  return connective(FormulaKind::And, "", {std::move(a), std::move(b)});
}
Formula Formula::disjunction(Formula a, Formula b) {
  return connective(FormulaKind::Or, "", {std::move(a), std::move(b)});
}
Formula Formula::implication(Formula a, Formula b) {
  return connective(FormulaKind::Implies, "", {std::move(a), std::move(b)});
}
Formula Formula::forall(std::string var, Formula body) {
  return connective(FormulaKind::Forall, std::move(var), {std::move(body)});
}
Formula Formula::exists(std::string var, Formula body) {
  return connective(FormulaKind::Exists, std::move(var), {std::move(body)});
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_literal() const {
  return is_atom() || (kind() == FormulaKind::Not && operand().is_atom());
}

bool Formula::is_quantifier() const {
  return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists;
}

bool Formula::is_binary() const {
  auto k = kind();
  return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Implies;
}

const std::string& Formula::predicate() const {
  if (!is_atom()) throw std::logic_error("predicate() on a non-atom");
  return node_->name;
}
const std::vector<Term>& Formula::terms() const { return node_->terms; }
bool Formula::is_equality() const { return is_atom() && node_->name == kEquality; }

const Formula& Formula::operand() const {
  if (node_->kids.empty()) throw std::logic_error("operand() on an atom");
  return node_->kids.front();
}
const Formula& Formula::lhs() const {
  if (!is_binary()) throw std::logic_error("lhs() on a non-binary formula");
  return node_->kids[0];
}
const Formula& Formula::rhs() const {
  if (!is_binary()) throw std::logic_error("rhs() on a non-binary formula");
  return node_->kids[1];
}
const std::string& Formula::variable() const {
  if (!is_quantifier()) throw std::logic_error("variable() on a non-quantifier");
  return node_->name;
}
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
         a.node_->terms == b.node_->terms && a.node_->kids == b.node_->kids;
}

std::vector<Formula> children(const Formula& f) {
  if (f.is_atom()) return {};
  if (f.is_binary()) return {f.lhs(), f.rhs()};
  return {f.operand()};
}

// ---------------------------------------------------------------- variables

namespace {

void collect_term_vars(const Term& t, std::vector<std::string>& out,
                       std::unordered_set<std::string>& seen,
                       const std::vector<std::string>& bound) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    if (std::find(bound.begin(), bound.end(), t.name()) != bound.end()) return;
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_term_vars(a, out, seen, bound);
}

void collect_free(const Formula& f, std::vector<std::string>& out,
                  std::unordered_set<std::string>& seen,
                  std::vector<std::string>& bound) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      for (const auto& t : f.terms()) collect_term_vars(t, out, seen, bound);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      bound.push_back(f.variable());
      collect_free(f.body(), out, seen, bound);
      bound.pop_back();
      return;
    default:
      for (const auto& c : children(f)) collect_free(c, out, seen, bound);
  }
}

}  // namespace

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::vector<std::string> bound;
  collect_free(f, out, seen, bound);
  return out;
}

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_term_vars(t, out, seen, {});
  return out;
}

std::unordered_set<std::string> all_vars(const Formula& f) {
  std::unordered_set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      for (const auto& t : g.terms())
        for (auto& v : term_vars(t)) out.insert(v);
      return;
    }
    if (g.is_quantifier()) out.insert(g.variable());
    for (const auto& c : children(g)) walk(c);
  };
  walk(f);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(f.terms().size());
      for (const auto& t : f.terms()) args.push_back(substitute(t, s));
      return Formula::atom(f.predicate(), std::move(args));
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (s.count(f.variable())) {
        Substitution inner = s;
        inner.erase(f.variable());
        return rebuild(f, {substitute(f.body(), inner)});
      }
      return rebuild(f, {substitute(f.body(), s)});
    }
    default: {
      std::vector<Formula> kids;
      for (const auto& c : children(f)) kids.push_back(substitute(c, s));
      return rebuild(f, std::move(kids));
    }
  }
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& names) {
  Substitution s;
  for (const auto& [from, to] : names) s.emplace(from, Term::variable(to));
  return substitute(f, s);
}

std::unordered_set<Term, TermHash> subterms(const Term& t) {
  std::unordered_set<Term, TermHash> out;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term u = stack.back();
    stack.pop_back();
    if (!out.insert(u).second) continue;
    for (const auto& a : u.args()) stack.push_back(a);
  }
  return out;
}

std::vector<Formula> atoms_of(const Formula& f) {
  std::vector<Formula> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      out.push_back(g);
      return;
    }
    for (const auto& c : children(g)) walk(c);
  };
  walk(f);
  return out;
}

std::vector<Term> atom_arguments(const Formula& f) {
  std::vector<Term> out;
  for (const auto& a : atoms_of(f))
    for (const auto& t : a.terms()) out.push_back(t);
  return out;
}

Term numeral(std::size_t j, const Signature& sig) {
  Term t = Term::constant("0");
  if (sig.function_arity("s") == 1) {
    for (std::size_t i = 0; i < j; ++i) t = Term::apply("s", {t});
    return t;
  }
  if (sig.function_arity("1") == 0 && sig.function_arity("+") == 2) {
    for (std::size_t i = 0; i < j; ++i) t = Term::apply("+", {t, Term::constant("1")});
    return t;
  }
  throw std::invalid_argument("signature has neither s nor 1 and +");
}

Term numeral(std::size_t j) { return numeral(j, Signature::arithmetic()); }

// ----------------------------------------------------------------- printing

namespace {

bool is_infix_term(const Term& t) {
  return !t.is_variable() && t.arity() == 2 && (t.name() == "+" || t.name() == "*");
}

int term_prec(const Term& t) {
  if (is_infix_term(t)) return t.name() == "+" ? 1 : 2;
  return 3;
}

std::string display_name(const std::string& name, const RenderOptions& opts) {
  if (opts.aliases) {
    auto it = opts.aliases->find(name);
    if (it != opts.aliases->end()) return it->second;
  }
  return name;
}

void render_term(const Term& t, const RenderOptions& opts, int min_prec,
                 std::string& out) {
  if (t.is_variable()) {
    out += t.name();
    return;
  }
  int prec = term_prec(t);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  if (is_infix_term(t)) {
    render_term(t.args()[0], opts, prec, out);
    out += t.name() == "+" ? " + " : " * ";
    render_term(t.args()[1], opts, prec + 1, out);
  } else {
    std::optional<std::string> prov;
    if (opts.provenance) prov = opts.provenance(t.name());
    if (prov)
      out += "sk{" + *prov + "}";
    else
      out += display_name(t.name(), opts);
    if (!t.args().empty()) {
      out += '(';
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) out += ", ";
        render_term(t.args()[i], opts, 0, out);
      }
      out += ')';
    }
  }
  if (parens) out += ')';
}

bool is_infix_predicate(const std::string& p) { return p == "=" || p == "<="; }

std::string render_atom(const Formula& f, const RenderOptions& opts) {
  std::string out;
  if (is_infix_predicate(f.predicate()) && f.terms().size() == 2) {
    render_term(f.terms()[0], opts, 0, out);
    out += ' ' + f.predicate() + ' ';
    render_term(f.terms()[1], opts, 0, out);
    return out;
  }
  out += display_name(f.predicate(), opts);
  if (!f.terms().empty()) {
    out += '(';
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
      if (i) out += ", ";
      render_term(f.terms()[i], opts, 0, out);
    }
    out += ')';
  }
  return out;
}

// Quantifier 0, -> 1, | 2, & 3, ~ and atoms 4.
int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Not:
      return 4;
    case FormulaKind::And:
      return 3;
    case FormulaKind::Or:
      return 2;
    case FormulaKind::Implies:
      return 1;
    default:
      return 0;
  }
}

void render_formula(const Formula& f, const RenderOptions& opts, int min_prec,
                    std::string& out) {
  int prec = formula_prec(f);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += render_atom(f, opts);
      break;
    case FormulaKind::Not: {
      const Formula& g = f.operand();
      if (g.is_equality()) {
        std::string a;
        render_term(g.terms()[0], opts, 0, a);
        out += a + " != ";
        std::string b;
        render_term(g.terms()[1], opts, 0, b);
        out += b;
      } else if (g.is_atom() && is_infix_predicate(g.predicate())) {
        out += "~(" + render_atom(g, opts) + ")";
      } else {
        out += '~';
        render_formula(g, opts, 4, out);
      }
      break;
    }
    case FormulaKind::And:
      render_formula(f.lhs(), opts, 3, out);
      out += " & ";
      render_formula(f.rhs(), opts, 4, out);
      break;
    case FormulaKind::Or:
      render_formula(f.lhs(), opts, 2, out);
      out += " | ";
      render_formula(f.rhs(), opts, 3, out);
      break;
    case FormulaKind::Implies:
      render_formula(f.lhs(), opts, 2, out);
      out += " -> ";
      render_formula(f.rhs(), opts, 1, out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f.kind() == FormulaKind::Forall ? "forall " : "exists ";
      out += f.variable() + ". ";
      render_formula(f.body(), opts, 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Term& t, const RenderOptions& opts) {
  std::string out;
  render_term(t, opts, 0, out);
  return out;
}

std::string render(const Formula& f, const RenderOptions& opts) {
  std::string out;
  render_formula(f, opts, 0, out);
  return out;
}

// ------------------------------------------------------------------ parsing

namespace {

enum class Tok {
  Ident, Number, LParen, RParen, LBrace, RBrace, Comma, Dot, Tilde, Amp, Bar,
  Arrow, Eq, Neq, Leq, Plus, Star, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> toks;
  std::size_t i = 0;
  auto ident_start = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      toks.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      toks.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "->") { toks.push_back({Tok::Arrow, "->", start}); i += 2; continue; }
    if (two == "!=") { toks.push_back({Tok::Neq, "!=", start}); i += 2; continue; }
    if (two == "<=") { toks.push_back({Tok::Leq, "<=", start}); i += 2; continue; }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '=': k = Tok::Eq; break;
      case '+': k = Tok::Plus; break;
      case '*': k = Tok::Star; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    toks.push_back({k, std::string(1, c), start});
    ++i;
  }
  toks.push_back({Tok::End, "", s.size()});
  return toks;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx)
      : text_(text), toks_(tokenize(text)), ctx_(ctx) {}

  Formula parse_formula_all() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Term parse_term_all() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k))
      throw ParseError("expected " + what + ", found '" + peek().text + "'", peek().pos);
    return toks_[pos_++];
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implication(lhs, formula());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Bar)) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Tilde)) return Formula::negation(unary());
    if (at(Tok::Ident) && (peek().text == "forall" || peek().text == "exists"))
      return quantifier();
    return primary();
  }

  Formula quantifier() {
    bool universal = toks_[pos_++].text == "forall";
    std::vector<std::string> vars;
    std::optional<Term> bound;
    do {
      vars.push_back(expect(Tok::Ident, "variable").text);
    } while (accept(Tok::Comma));
    if (accept(Tok::Leq)) {
      if (vars.size() != 1)
        throw ParseError("bounded quantifier takes one variable", peek().pos);
      bound = term();
      if (!ctx_.signature || ctx_.signature->predicate_arity("<=") != 2)
        throw ParseError("bounded quantifier needs a binary <= predicate", peek().pos);
    }
    expect(Tok::Dot, "'.'");
    for (const auto& v : vars) scope_.push_back(v);
    Formula body = formula();
    for (std::size_t i = 0; i < vars.size(); ++i) scope_.pop_back();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      if (bound) {
        Formula guard = Formula::atom("<=", {Term::variable(*it), *bound});
        body = universal ? Formula::implication(guard, body)
                         : Formula::conjunction(guard, body);
      }
      body = universal ? Formula::forall(*it, body) : Formula::exists(*it, body);
    }
    return body;
  }

  static bool term_operator(Tok k) {
    return k == Tok::Eq || k == Tok::Neq || k == Tok::Leq || k == Tok::Plus ||
           k == Tok::Star;
  }

  Formula primary() {
    if (at(Tok::LParen)) {
      std::size_t save = pos_;
      std::optional<ParseError> formula_error;
      try {
        ++pos_;
        Formula f = formula();
        expect(Tok::RParen, "')'");
        if (!term_operator(peek().kind)) return f;
      } catch (const ParseError& e) {
        formula_error = e;
      }
      pos_ = save;
      try {
        return atom();
      } catch (const ParseError& e) {
        if (formula_error && formula_error->position() > e.position()) throw *formula_error;
        throw;
      }
    }
    return atom();
  }

  std::optional<int> predicate_arity(const std::string& name) const {
    if (!ctx_.signature) return std::nullopt;
    if (name == kEquality) return std::nullopt;
    return ctx_.signature->predicate_arity(name);
  }

  std::string resolve_alias(const std::string& name) const {
    if (ctx_.aliases) {
      auto it = ctx_.aliases->find(name);
      if (it != ctx_.aliases->end()) return it->second;
    }
    return name;
  }

  Formula atom() {
    if (at(Tok::Ident) && !in_scope(peek().text)) {
      std::string name = resolve_alias(peek().text);
      if (auto ar = predicate_arity(name)) {
        std::size_t p = peek().pos;
        ++pos_;
        std::vector<Term> args = arguments();
        if (static_cast<int>(args.size()) != *ar)
          throw ParseError("predicate " + name + " expects " + std::to_string(*ar) +
                               " arguments, got " + std::to_string(args.size()),
                           p);
        return Formula::atom(name, std::move(args));
      }
    }
    std::size_t p = peek().pos;
    Term lhs = term();
    if (accept(Tok::Eq)) return Formula::equals(lhs, term());
    if (accept(Tok::Neq)) return Formula::negation(Formula::equals(lhs, term()));
    if (accept(Tok::Leq)) {
      if (predicate_arity("<=") != 2)
        throw ParseError("unknown predicate <=", p);
      return Formula::atom("<=", {lhs, term()});
    }
    throw ParseError("expected an atomic formula, found '" + peek().text + "'", peek().pos);
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (!accept(Tok::LParen)) return args;
    if (accept(Tok::RParen)) return args;
    do {
      args.push_back(term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')'");
    return args;
  }

  bool in_scope(const std::string& v) const {
    return std::find(scope_.begin(), scope_.end(), v) != scope_.end();
  }

  std::optional<int> function_arity(const std::string& name) const {
    if (ctx_.signature)
      if (auto a = ctx_.signature->function_arity(name)) return a;
    if (ctx_.extra_function) return ctx_.extra_function(name);
    return std::nullopt;
  }

  Term term() {
    Term t = product();
    while (accept(Tok::Plus)) t = Term::apply("+", {t, product()});
    return t;
  }

  Term product() {
    Term t = application();
    while (accept(Tok::Star)) t = Term::apply("*", {t, application()});
    return t;
  }

  Term application() {
    const Token& tok = peek();
    if (accept(Tok::LParen)) {
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (tok.kind == Tok::Number) {
      ++pos_;
      if (function_arity(tok.text) == 0) return Term::constant(tok.text);
      if (!ctx_.signature) throw ParseError("numeral without a signature", tok.pos);
      try {
        return numeral(std::stoul(tok.text), *ctx_.signature);
      } catch (const std::invalid_argument&) {
        throw ParseError("numeral " + tok.text + " needs 0 and s (or 1 and +)", tok.pos);
      }
    }
    if (tok.kind != Tok::Ident)
      throw ParseError("expected a term, found '" + tok.text + "'", tok.pos);
    std::string name = tok.text;
    std::size_t p = tok.pos;
    ++pos_;
    if (name == "sk" && at(Tok::LBrace)) return skolem_term(p);
    if (in_scope(name)) return Term::variable(name);
    std::string symbol = resolve_alias(name);
    if (auto ar = function_arity(symbol)) {
      std::vector<Term> args = arguments();
      if (static_cast<int>(args.size()) != *ar)
        throw ParseError("function " + symbol + " expects " + std::to_string(*ar) +
                             " arguments, got " + std::to_string(args.size()),
                         p);
      return Term::apply(symbol, std::move(args));
    }
    if (predicate_arity(symbol) || symbol == kEquality)
      throw ParseError("predicate " + symbol + " used as a term", p);
    if (ctx_.any_free_vars ||
        std::find(ctx_.free_vars.begin(), ctx_.free_vars.end(), name) != ctx_.free_vars.end())
      return Term::variable(name);
    throw ParseError("unknown symbol " + name, p);
  }

  Term skolem_term(std::size_t p) {
    if (!ctx_.skolem_resolver)
      throw ParseError("sk{...} needs a Skolem registry", p);
    expect(Tok::LBrace, "'{'");
    std::size_t start = peek().pos;
    int depth = 1;
    std::size_t stop = start;
    while (true) {
      if (at(Tok::End)) throw ParseError("unterminated sk{", p);
      if (at(Tok::LBrace)) ++depth;
      if (at(Tok::RBrace) && --depth == 0) {
        stop = peek().pos;
        ++pos_;
        break;
      }
      ++pos_;
    }
    ParseContext inner = ctx_;
    inner.any_free_vars = true;
    std::optional<Formula> parsed;
    try {
      parsed = Parser(text_.substr(start, stop - start), inner).parse_formula_all();
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " inside sk{...}", p);
    }
    const Formula& source = *parsed;
    if (source.kind() != FormulaKind::Exists)
      throw ParseError("sk{...} needs an existential formula", p);
    SkolemReference ref = ctx_.skolem_resolver(source);
    std::vector<Term> args = arguments();
    if (static_cast<int>(args.size()) != ref.arity)
      throw ParseError("Skolem symbol " + ref.symbol + " expects " +
                           std::to_string(ref.arity) + " arguments",
                       p);
    return Term::apply(ref.symbol, std::move(args));
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseContext& ctx_;
  std::vector<std::string> scope_;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseContext& ctx) {
  return Parser(text, ctx).parse_formula_all();
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  ParseContext ctx;
  ctx.signature = &sig;
  return parse_formula(text, ctx);
}

Term parse_term(std::string_view text, const ParseContext& ctx) {
  return Parser(text, ctx).parse_term_all();
}

// ------------------------------------------------------------------- theory

Signature parse_signature_line(std::string_view line) {
  constexpr std::string_view prefix = "signature:";
  if (line.substr(0, prefix.size()) != prefix)
    throw ParseError("theory must start with 'signature:'", 0);
  std::string rest(line.substr(prefix.size()));
  Signature sig;
  bool predicates = false;
  std::istringstream in(rest);
  std::string word;
  while (in >> word) {
    if (word == ";") {
      predicates = true;
      continue;
    }
    bool trailing_semicolon = false;
    if (word.back() == ';') {
      trailing_semicolon = true;
      word.pop_back();
    }
    auto slash = word.rfind('/');
    if (slash == std::string::npos || slash == 0)
      throw ParseError("malformed symbol declaration '" + word + "'", 0);
    int arity = 0;
    try {
      arity = std::stoi(word.substr(slash + 1));
    } catch (const std::exception&) {
      throw ParseError("malformed arity in '" + word + "'", 0);
    }
    std::string name = word.substr(0, slash);
    try {
      if (predicates)
        sig.add_predicate(name, arity);
      else
        sig.add_function(name, arity);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0);
    }
    if (trailing_semicolon) predicates = true;
  }
  return sig;
}

Theory parse_theory(std::string_view text, std::string name) {
  Theory th;
  th.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_signature = false;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t line_offset = offset;
    offset += line.size() + 1;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (!have_signature) {
      th.signature = parse_signature_line(line);
      th.signature.require_constant();
      have_signature = true;
      continue;
    }
    try {
      Formula f = parse_formula(line, th.signature);
      if (!is_sentence(f)) throw ParseError("axiom has free variables", 0);
      th.axioms.push_back(f);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (axiom " + std::to_string(th.axioms.size() + 1) +
                           ")",
                       line_offset + first + e.position());
    }
  }
  if (!have_signature) throw ParseError("missing signature line", 0);
  return th;
}

Theory load_theory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open theory file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_theory(ss.str(), stem);
}

std::string render_signature(const Signature& sig) {
  std::string out = "signature:";
  for (const auto& d : sig.functions()) out += " " + d.name + "/" + std::to_string(d.arity);
  out += " ;";
  for (const auto& d : sig.predicates()) out += " " + d.name + "/" + std::to_string(d.arity);
  return out;
}

std::string render_theory(const Theory& t) {
  std::string out = render_signature(t.signature) + "\n";
  for (const auto& a : t.axioms) out += render(a) + "\n";
  return out;
}

}  // namespace hcon
