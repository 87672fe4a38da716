#include "hcon/herbrand.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

#include "hcon/normalizer.hpp"

namespace hcon {

// ---------------------------------------------------------------- universes

UniverseLevel make_universe(TermSet base, const SkolemRegistry& reg, mpz_class origin) {
  UniverseLevel u;
  u.base = base;
  u.terms = std::move(base);
  u.origin = origin;
  u.k = origin;
  u.symbols = reg.symbols();
  return u;
}

mpz_class admitting_origin(const SkolemRegistry& reg, const CodingScheme& coder) {
  mpz_class best = 0;
  for (const auto& s : reg.symbols()) best = std::max(best, coder.code_formula(s.source.body()).value);
  return best;
}

namespace {

void apply_all(const std::string& f, int arity, const std::vector<Term>& level,
               std::vector<Term>& out) {
  std::vector<std::size_t> idx(arity, 0);
  if (arity > 0 && level.empty()) return;
  while (true) {
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(level[idx[i]]);
    out.push_back(Term::apply(f, std::move(args)));
    int pos = arity - 1;
    while (pos >= 0 && ++idx[pos] == level.size()) idx[pos--] = 0;
    if (pos < 0) return;
  }
}

}  // namespace

UniverseLevel grow_universe(const UniverseLevel& u, const Signature& sig,
                            const CodingScheme& coder, const Budget& budget) {
  std::vector<std::pair<std::string, int>> symbols;
  for (const auto& f : sig.functions()) symbols.emplace_back(f.name, f.arity);
  for (const auto& s : u.symbols)
    if (coder.code_formula(s.source.body()).value <= u.k) symbols.emplace_back(s.name, s.arity);
  double estimate = static_cast<double>(u.terms.size());
  for (const auto& [name, arity] : symbols) {
    double c = 1;
    for (int i = 0; i < arity; ++i) c *= static_cast<double>(u.terms.size());
    estimate += c;
  }
  if (estimate > static_cast<double>(budget.max_terms))
    throw BudgetExceeded("universe level of up to " + std::to_string(static_cast<long long>(estimate)) +
                         " terms exceeds the term budget");
  std::vector<Term> fresh;
  for (const auto& [name, arity] : symbols) apply_all(name, arity, u.terms.elements(), fresh);
  UniverseLevel next = u;
  next.terms.insert_all(TermSet(std::move(fresh)));
  next.k = u.k + 1;
  return next;
}

// ------------------------------------------------------------------ proving

std::vector<SkolemizedFormula> skolemize_refutation(const Theory& t, const Formula& goal,
                                                    SkolemRegistry& reg) {
  if (!is_sentence(goal)) throw std::invalid_argument("goal must be a sentence");
  std::lock_guard lock(reg.mutex());
  auto tsk = skolemize_theory(t, reg);
  tsk.push_back(skolemize(Formula::negation(goal), reg, t.axioms.size()));
  return tsk;
}

namespace {

ProofCertificate make_certificate(const Theory& t, const Formula& goal,
                                  const std::vector<SkolemizedFormula>& tsk,
                                  const SkolemRegistry& reg, const TermSet& lambda,
                                  const FindResult& r, const ProveOptions& opts) {
  ProofCertificate c{t, goal, reg.symbols(), lambda, opts.encode.symmetry,
                     opts.encode.transitivity, {}, {}};
  if (opts.mode == SearchMode::Brute) {
    // The clause set is recorded in both modes so the certificate is self
    // contained.
    c.cnf = encode(*r.table, tsk, {}, opts.encode).cnf;
    c.witness = BruteStamp{r.table->size(), r.leaves};
  } else {
    c.cnf = r.encoding.cnf;
    c.witness = r.proof;
  }
  return c;
}

}  // namespace

ProveResult prove(const Theory& t, const Formula& goal, SkolemRegistry& reg,
                  const ProveOptions& opts) {
  ProveResult res;
  auto tsk = skolemize_refutation(t, goal, reg);
  const Signature& sig = t.signature;
  FindOptions fopts{opts.mode, opts.encode, opts.sat};

  auto attempt = [&](const TermSet& lambda) { return find_evaluation(tsk, lambda, sig, fopts); };
  auto certify = [&](const TermSet& lambda, const FindResult& r, const std::string& where) {
    res.status = ProveStatus::Proved;
    res.certificate = make_certificate(t, goal, tsk, reg, lambda, r, opts);
    res.message = "no evaluation on " + where + " (" + std::to_string(lambda.size()) + " terms)";
  };

  try {
    if (opts.parallel && opts.seeds.size() > 1) {
      std::vector<std::future<FindResult>> jobs;
      for (const auto& s : opts.seeds) jobs.push_back(std::async(std::launch::async, attempt, s));
      std::vector<FindResult> done;
      for (auto& j : jobs) done.push_back(j.get());
      for (std::size_t i = 0; i < done.size(); ++i) {
        ++res.candidates_tried;
        if (!done[i].evaluation) {
          certify(opts.seeds[i], done[i], "seed " + std::to_string(i));
          return res;
        }
      }
    } else {
      for (std::size_t i = 0; i < opts.seeds.size(); ++i) {
        ++res.candidates_tried;
        auto r = attempt(opts.seeds[i]);
        if (!r.evaluation) {
          certify(opts.seeds[i], r, "seed " + std::to_string(i));
          return res;
        }
      }
    }

    std::vector<Term> base;
    for (const auto& name : tsk.back().symbols)
      if (reg.arity(name) == 0) base.push_back(Term::constant(name));
    if (base.empty())
      for (const auto& c : sig.constants()) base.push_back(Term::constant(c));
    CodingScheme coder(sig, &reg);
    mpz_class origin = opts.origin ? *opts.origin : admitting_origin(reg, coder);
    UniverseLevel u = make_universe(TermSet(base), reg, origin);
    for (std::size_t level = 0; level <= opts.max_level; ++level) {
      if (level > 0) u = grow_universe(u, sig, coder, opts.encode.budget);
      ++res.candidates_tried;
      auto r = attempt(u.terms);
      if (!r.evaluation) {
        certify(u.terms, r, "universe level " + std::to_string(level));
        return res;
      }
    }
    res.message = "evaluations exist on every candidate up to level " + std::to_string(opts.max_level);
  } catch (const BudgetExceeded& e) {
    res.message = std::string("budget exhausted: ") + e.what();
  }
  res.status = ProveStatus::Unknown;
  return res;
}

CheckResult check_certificate(const ProofCertificate& c) {
  try {
    SkolemRegistry reg;
    auto tsk = skolemize_refutation(c.theory, c.goal, reg);
    auto symbols = reg.symbols();
    if (symbols.size() != c.skolem.size())
      return {false, "Skolem table has " + std::to_string(c.skolem.size()) + " symbols, expected " +
                         std::to_string(symbols.size())};
    for (std::size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i].name != c.skolem[i].name || symbols[i].arity != c.skolem[i].arity ||
          symbols[i].key != c.skolem[i].key)
        return {false, "Skolem symbol " + std::to_string(i) + " differs: expected " +
                           symbols[i].name + " for " + symbols[i].key};
    AtomTable table(c.lambda, c.theory.signature);
    EncodeOptions eo;
    eo.symmetry = c.symmetry;
    eo.transitivity = c.transitivity;
    Cnf expected = encode(table, tsk, {}, eo).cnf;
    if (expected.num_vars != c.cnf.num_vars)
      return {false, "certificate has " + std::to_string(c.cnf.num_vars) + " variables, expected " +
                         std::to_string(expected.num_vars)};
    std::size_t common = std::min(expected.clauses.size(), c.cnf.clauses.size());
    for (std::size_t i = 0; i < common; ++i)
      if (expected.clauses[i] != c.cnf.clauses[i]) {
        std::string lits;
        for (int l : expected.clauses[i]) lits += std::to_string(l) + " ";
        return {false, "clause " + std::to_string(i) + " differs; expected " + lits + "0"};
      }
    if (expected.clauses.size() != c.cnf.clauses.size()) {
      std::string what = "certificate has " + std::to_string(c.cnf.clauses.size()) +
                         " clauses, expected " + std::to_string(expected.clauses.size());
      if (common < expected.clauses.size()) {
        std::string lits;
        for (int l : expected.clauses[common]) lits += std::to_string(l) + " ";
        what += "; first missing clause " + std::to_string(common) + ": " + lits + "0";
      }
      return {false, what};
    }
    if (auto* proof = std::get_if<std::vector<ResolutionStep>>(&c.witness))
      return check_refutation(c.cnf, *proof);
    const auto& stamp = std::get<BruteStamp>(c.witness);
    if (stamp.atoms != table.size())
      return {false, "brute stamp covers " + std::to_string(stamp.atoms) + " atoms, table has " +
                         std::to_string(table.size())};
    auto r = brute_force(tsk, c.lambda, c.theory.signature);
    if (r.evaluation) return {false, "exhaustive search found an evaluation"};
    return {true, "exhaustive search over " + std::to_string(table.size()) + " atoms found no evaluation"};
  } catch (const std::exception& e) {
    return {false, std::string("replay failed: ") + e.what()};
  }
}

// ------------------------------------------------------------ serialization

std::string serialize_certificate(const ProofCertificate& c) {
  std::ostringstream out;
  out << "hcon-certificate 1\n";
  out << "theory " << c.theory.name << "\n";
  out << render_signature(c.theory.signature) << "\n";
  for (const auto& a : c.theory.axioms) out << "axiom " << render(a) << "\n";
  out << "goal " << render(c.goal) << "\n";
  for (const auto& s : c.skolem) out << "skolem " << s.name << " " << s.arity << " " << s.key << "\n";
  out << "lambda " << c.lambda.size() << "\n";
  for (const auto& t : c.lambda) out << "term " << render(t) << "\n";
  out << "encoding symmetry " << c.symmetry << " transitivity " << c.transitivity << "\n";
  out << "cnf " << c.cnf.num_vars << " " << c.cnf.clauses.size() << "\n";
  for (const auto& cl : c.cnf.clauses) {
    for (int l : cl) out << l << " ";
    out << "0\n";
  }
  if (auto* proof = std::get_if<std::vector<ResolutionStep>>(&c.witness)) {
    out << "resolution " << proof->size() << "\n";
    for (const auto& s : *proof) {
      out << s.id;
      for (int l : s.clause) out << " " << l;
      out << " 0";
      for (auto a : s.antecedents) out << " " << a;
      out << "\n";
    }
  } else {
    const auto& b = std::get<BruteStamp>(c.witness);
    out << "brute " << b.atoms << " " << b.leaves << "\n";
  }
  out << "end\n";
  return out.str();
}

namespace {

std::string rest_after(const std::string& line, const std::string& word) {
  if (line.rfind(word + " ", 0) != 0) throw ParseError("expected '" + word + "' line, got: " + line, 0);
  return line.substr(word.size() + 1);
}

}  // namespace

ProofCertificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next = [&]() -> std::string {
    if (!std::getline(in, line)) throw ParseError("truncated certificate", 0);
    return line;
  };
  if (next() != "hcon-certificate 1") throw ParseError("not a certificate", 0);
  Theory theory;
  theory.name = rest_after(next(), "theory");
  theory.signature = parse_signature_line(next());
  next();
  while (line.rfind("axiom ", 0) == 0) {
    theory.axioms.push_back(parse_formula(line.substr(6), theory.signature));
    next();
  }
  Formula goal = parse_formula(rest_after(line, "goal"), theory.signature);
  // Skolem sources are re-derived; a mismatching key is left for the checker.
  SkolemRegistry reg;
  skolemize_refutation(theory, goal, reg);
  ProofCertificate c{theory, goal, {}, {}, true, true, {}, {}};
  next();
  while (line.rfind("skolem ", 0) == 0) {
    std::istringstream ls(line.substr(7));
    std::string name, key;
    int arity = 0;
    ls >> name >> arity;
    std::getline(ls >> std::ws, key);
    auto found = reg.find(name);
    Formula source = found ? found->source : goal;
    c.skolem.push_back(SkolemSymbol{name, arity, source, key});
    next();
  }
  ParseContext ctx;
  ctx.signature = &c.theory.signature;
  ctx.extra_function = [&](const std::string& name) -> std::optional<int> {
    for (const auto& s : c.skolem)
      if (s.name == name) return s.arity;
    return std::nullopt;
  };
  std::size_t n = std::stoul(rest_after(line, "lambda"));
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n; ++i) terms.push_back(parse_term(rest_after(next(), "term"), ctx));
  c.lambda = TermSet(std::move(terms));
  {
    std::istringstream ls(rest_after(next(), "encoding"));
    std::string w;
    ls >> w >> c.symmetry >> w >> c.transitivity;
  }
  {
    std::istringstream ls(rest_after(next(), "cnf"));
    std::size_t m;
    ls >> c.cnf.num_vars >> m;
    for (std::size_t i = 0; i < m; ++i) {
      std::istringstream cl(next());
      Clause clause;
      int l;
      while (cl >> l && l != 0) clause.push_back(l);
      c.cnf.clauses.push_back(std::move(clause));
    }
  }
  next();
  if (line.rfind("resolution ", 0) == 0) {
    std::size_t steps = std::stoul(line.substr(11));
    std::vector<ResolutionStep> proof;
    for (std::size_t i = 0; i < steps; ++i) {
      std::istringstream ls(next());
      ResolutionStep s;
      ls >> s.id;
      int l;
      while (ls >> l && l != 0) s.clause.push_back(l);
      std::size_t a;
      while (ls >> a) s.antecedents.push_back(a);
      proof.push_back(std::move(s));
    }
    c.witness = std::move(proof);
  } else if (line.rfind("brute ", 0) == 0) {
    std::istringstream ls(line.substr(6));
    BruteStamp b;
    ls >> b.atoms >> b.leaves;
    c.witness = b;
  } else {
    throw ParseError("expected a witness, got: " + line, 0);
  }
  if (next() != "end") throw ParseError("missing end marker", 0);
  return c;
}

// ----------------------------------------------------------- quotient models

std::string to_string(Truth t) {
  switch (t) {
    case Truth::False:
      return "false";
    case Truth::True:
      return "true";
    default:
      return "undefined";
  }
}

std::size_t HerbrandModel::class_of(const Term& t) const {
  auto i = lambda.index_of(t);
  if (!i) throw std::out_of_range("term not in the model's set: " + render(t));
  return classes.class_of[*i];
}

bool HerbrandModel::holds(const std::string& predicate, const std::vector<std::size_t>& args) const {
  if (predicate == kEquality) return args.size() == 2 && args[0] == args[1];
  auto it = relations.find(predicate);
  return it != relations.end() && it->second.count(args) > 0;
}

HerbrandModel build_quotient_model(const Evaluation& p) {
  HerbrandModel m;
  m.lambda = p.table().lambda();
  m.classes = eq_classes(p);
  for (std::size_t i = 0; i < m.lambda.size(); ++i) {
    const Term& t = m.lambda[i];
    std::vector<std::size_t> args;
    bool inside = true;
    for (const auto& a : t.args()) {
      auto j = m.lambda.index_of(a);
      if (!j) {
        inside = false;
        break;
      }
      args.push_back(m.classes.class_of[*j]);
    }
    if (!inside) continue;
    auto [it, fresh] = m.functions.emplace(std::make_pair(t.name(), args), m.classes.class_of[i]);
    if (!fresh && it->second != m.classes.class_of[i])
      throw std::logic_error("function table ill-defined at " + render(t));
  }
  const AtomTable& table = p.table();
  const std::size_t n = m.lambda.size();
  for (std::size_t i = n * n; i < table.size(); ++i) {
    if (!p.bit(i)) continue;
    auto [pred, args] = table.decode(i);
    for (auto& a : args) a = m.classes.class_of[a];
    m.relations[table.predicates()[pred].name].insert(args);
  }
  return m;
}

std::optional<std::size_t> eval_term(const HerbrandModel& m, const Term& t,
                                     const std::map<std::string, std::size_t>& assignment) {
  if (t.is_variable()) {
    auto it = assignment.find(t.name());
    if (it == assignment.end()) throw std::invalid_argument("unassigned variable " + t.name());
    return it->second;
  }
  if (t.is_ground())
    if (auto i = m.lambda.index_of(t)) return m.classes.class_of[*i];
  std::vector<std::size_t> args;
  for (const auto& a : t.args()) {
    auto c = eval_term(m, a, assignment);
    if (!c) return std::nullopt;
    args.push_back(*c);
  }
  auto it = m.functions.find({t.name(), args});
  if (it == m.functions.end()) return std::nullopt;
  return it->second;
}

namespace {

Truth k_not(Truth a) {
  if (a == Truth::Undefined) return a;
  return a == Truth::True ? Truth::False : Truth::True;
}
Truth k_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Undefined;
}
Truth k_or(Truth a, Truth b) { return k_not(k_and(k_not(a), k_not(b))); }

bool is_guard(const Formula& g, const std::string& x, Term& bound) {
  if (!g.is_atom() || g.predicate() != "<=" || g.terms().size() != 2) return false;
  const Term& lhs = g.terms()[0];
  if (!lhs.is_variable() || lhs.name() != x) return false;
  auto vars = term_vars(g.terms()[1]);
  if (std::find(vars.begin(), vars.end(), x) != vars.end()) return false;
  bound = g.terms()[1];
  return true;
}

}  // namespace

Truth eval_in_model(const HerbrandModel& m, const Formula& f,
                    const std::map<std::string, std::size_t>& assignment) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<std::size_t> args;
      for (const auto& t : f.terms()) {
        auto c = eval_term(m, t, assignment);
        if (!c) return Truth::Undefined;
        args.push_back(*c);
      }
      return m.holds(f.predicate(), args) ? Truth::True : Truth::False;
    }
    case FormulaKind::Not:
      return k_not(eval_in_model(m, f.operand(), assignment));
    case FormulaKind::And:
      return k_and(eval_in_model(m, f.lhs(), assignment), eval_in_model(m, f.rhs(), assignment));
    case FormulaKind::Or:
      return k_or(eval_in_model(m, f.lhs(), assignment), eval_in_model(m, f.rhs(), assignment));
    case FormulaKind::Implies:
      return k_or(k_not(eval_in_model(m, f.lhs(), assignment)), eval_in_model(m, f.rhs(), assignment));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const std::string& x = f.variable();
      const Formula& body = f.body();
      Term bound = Term::constant("0");
      std::optional<Formula> scope;
      bool universal = f.kind() == FormulaKind::Forall;
      if (universal && body.kind() == FormulaKind::Implies && is_guard(body.lhs(), x, bound))
        scope = body.rhs();
      else if (universal && body.kind() == FormulaKind::Or && body.lhs().kind() == FormulaKind::Not &&
               is_guard(body.lhs().operand(), x, bound))
        scope = body.rhs();
      else if (!universal && body.kind() == FormulaKind::And && is_guard(body.lhs(), x, bound))
        scope = body.rhs();
      if (!scope) throw std::invalid_argument("unbounded quantifier in " + render(f));
      auto limit = eval_term(m, bound, assignment);
      if (!limit) return Truth::Undefined;
      Truth acc = universal ? Truth::True : Truth::False;
      for (std::size_t c = 0; c < m.classes.members.size(); ++c) {
        if (!m.holds("<=", {c, *limit})) continue;
        auto inner = assignment;
        inner[x] = c;
        Truth v = eval_in_model(m, *scope, inner);
        acc = universal ? k_and(acc, v) : k_or(acc, v);
      }
      return acc;
    }
  }
  return Truth::Undefined;
}

// ---------------------------------------------------------- arithmetic terms

Theory robinson_q() {
  static const char* text =
      "signature: 0/0 s/1 +/2 */2 ; <=/2\n"
      "forall x. s(x) != 0\n"
      "forall x. forall y. (s(x) = s(y) -> x = y)\n"
      "forall x. (x != 0 -> exists y. x = s(y))\n"
      "forall x. forall y. ((x <= y -> exists z. x + z = y) & ((exists z. x + z = y) -> x <= y))\n"
      "forall x. x + 0 = x\n"
      "forall x. forall y. x + s(y) = s(x + y)\n"
      "forall x. x * 0 = 0\n"
      "forall x. forall y. x * s(y) = x * y + x\n";
  return parse_theory(text, "Q");
}

std::vector<Term> numeral_terms(std::size_t n) {
  std::vector<Term> out;
  for (std::size_t j = 0; j <= n; ++j) out.push_back(numeral(j));
  return out;
}

std::string omega1_symbol(SkolemRegistry& reg) {
  Formula graph = Formula::exists(
      "y", Formula::atom("omega1", {Term::variable("x"), Term::variable("y")}));
  return reg.intern(graph).name;
}

std::vector<Term> w_terms(std::size_t n, SkolemRegistry& reg) {
  std::string w = omega1_symbol(reg);
  std::vector<Term> out{numeral(4)};
  for (std::size_t j = 0; j < n; ++j) out.push_back(Term::apply(w, {out.back()}));
  return out;
}

SquaringInduction squaring_induction(SkolemRegistry& reg, std::size_t index) {
  ParseContext ctx;
  Signature sig = Signature::arithmetic();
  ctx.signature = &sig;
  ctx.free_vars = {"x"};
  Formula psi = parse_formula("exists y. (y <= x * x & y = x * x)", ctx);
  SquaringInduction si{psi, skolemize_induction(psi, reg, index), reg.intern(psi).name, {}};
  for (const auto& s : si.axiom.symbols)
    if (reg.arity(s) == 0) si.c = s;
  return si;
}

std::vector<Term> z_terms(std::size_t n, SkolemRegistry& reg) {
  std::string q = squaring_induction(reg).q;
  std::vector<Term> out{numeral(2)};
  for (std::size_t j = 0; j < n; ++j) out.push_back(Term::apply(q, {out.back()}));
  return out;
}

TermSet upsilon(SkolemRegistry& reg) {
  auto si = squaring_induction(reg);
  Term zero = Term::constant("0");
  Term c = Term::constant(si.c);
  Term sc = Term::apply("s", {c});
  auto plus = [](Term a, Term b) { return Term::apply("+", {std::move(a), std::move(b)}); };
  auto sq = [](const Term& a) { return Term::apply("*", {a, a}); };
  return TermSet({zero, plus(zero, zero), sq(zero), c, sq(c), plus(sq(c), zero), sc,
                  Term::apply(si.q, {c}), sq(sc), plus(sq(sc), zero)},
                 "upsilon");
}

TermSet lambda_alpha(std::size_t alpha, LambdaFlavor flavor, SkolemRegistry& reg,
                     const Budget& budget) {
  Tower w = omega_direct(1, Tower(mpz_class(static_cast<unsigned long>(alpha))));
  if (!w.is_exact() || w.value() > budget.max_terms)
    throw BudgetExceeded("omega_1(" + std::to_string(alpha) + ") numerals exceed the term budget");
  std::size_t top = w.value().get_ui();
  TermSet out;
  std::vector<Term> terms = numeral_terms(top);
  if (flavor == LambdaFlavor::Omega1) {
    for (auto& t : w_terms(alpha, reg)) terms.push_back(t);
    out = TermSet(std::move(terms), "lambda-omega1-" + std::to_string(alpha));
  } else {
    std::size_t zn = 4 * alpha * alpha * alpha * alpha;
    if (zn > budget.max_terms) throw BudgetExceeded("z-term count exceeds the term budget");
    for (auto& t : z_terms(zn, reg)) terms.push_back(t);
    out = TermSet(std::move(terms), "lambda-delta0-" + std::to_string(alpha));
    out.insert_all(upsilon(reg));
  }
  return out;
}

bool hcon_check(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                const Signature& sig, const FindOptions& opts) {
  return find_evaluation(tsk, lambda, sig, opts).evaluation.has_value();
}

std::string to_string(HconStar h) {
  switch (h) {
    case HconStar::Sat:
      return "SAT";
    case HconStar::Unsat:
      return "UNSAT";
    default:
      return "NOT_APPLICABLE";
  }
}

HconStar hcon_star_check(const std::vector<SkolemizedFormula>& tsk, const TermSet& lambda,
                         const Signature& sig, const CodingScheme& coder,
                         std::uint64_t ceiling, const FindOptions& opts) {
  Code code = coder.code_set(lambda);
  if (!omega_direct(1, Tower(code.value, ceiling)).is_exact()) return HconStar::NotApplicable;
  return hcon_check(tsk, lambda, sig, opts) ? HconStar::Sat : HconStar::Unsat;
}

}  // namespace hcon
