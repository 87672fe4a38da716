#include "hcon/report.hpp"

#include <cmath>
#include <random>
#include <set>

namespace hcon {

namespace {

double log2_of(const mpz_class& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(m) + static_cast<double>(exp);
}

struct Generator {
  std::vector<SymbolDecl> functions;
  std::vector<SymbolDecl> predicates;
  std::mt19937_64 rng;

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

  Term term(int depth, const std::vector<std::string>& vars) {
    std::vector<const SymbolDecl*> leaves;
    for (const auto& f : functions)
      if (f.arity == 0) leaves.push_back(&f);
    bool leaf = depth <= 0 || pick(3) == 0;
    if (leaf) {
      if (!vars.empty() && (leaves.empty() || pick(2) == 0)) return Term::variable(vars[pick(vars.size())]);
      return Term::constant(leaves[pick(leaves.size())]->name);
    }
    const SymbolDecl& f = functions[pick(functions.size())];
    std::vector<Term> args;
    for (int i = 0; i < f.arity; ++i) args.push_back(term(depth - 1, vars));
    return Term::apply(f.name, std::move(args));
  }

  Formula atom(const std::vector<std::string>& vars) {
    std::size_t choice = pick(predicates.size() + 1);
    if (choice == predicates.size()) return Formula::equals(term(2, vars), term(2, vars));
    std::vector<Term> args;
    for (int i = 0; i < predicates[choice].arity; ++i) args.push_back(term(2, vars));
    return Formula::atom(predicates[choice].name, std::move(args));
  }

  Formula formula(int depth, std::vector<std::string> vars) {
    if (depth <= 0) return atom(vars);
    switch (pick(6)) {
      case 0: return Formula::negation(formula(depth - 1, vars));
      case 1: return Formula::conjunction(formula(depth - 1, vars), formula(depth - 1, vars));
      case 2: return Formula::disjunction(formula(depth - 1, vars), formula(depth - 1, vars));
      case 3: return Formula::implication(formula(depth - 1, vars), formula(depth - 1, vars));
      default: {
        std::string v = "v" + std::to_string(vars.size());
        vars.push_back(v);
        Formula b = formula(depth - 1, vars);
        return pick(2) ? Formula::forall(v, b) : Formula::exists(v, b);
      }
    }
  }
};

struct Accumulator {
  ContractCheck c;
  void add(double log_lhs, double log_rhs) {
    ++c.samples;
    double r = std::exp2(log_lhs - log_rhs);
    c.max_ratio = std::max(c.max_ratio, r);
    if (log_lhs > log_rhs + 1e-12) c.holds = false;
  }
};

CorpusReport check_corpus(std::string name, const std::vector<std::pair<std::string, Code>>& objects,
                          std::mt19937_64& rng) {
  CorpusReport r;
  r.corpus = std::move(name);
  r.objects = objects.size();
  std::map<mpz_class, std::string> seen;
  for (const auto& [text, code] : objects) {
    auto [it, fresh] = seen.emplace(code.value, text);
    if (!fresh && it->second != text) ++r.collisions;
  }
  Accumulator single{{"singleton"}}, cat{{"concatenation"}}, uni{{"union"}}, card{{"cardinality"}};
  auto group = [&] {
    std::vector<mpz_class> g;
    std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) g.push_back(objects[rng() % objects.size()].second.value);
    return g;
  };
  for (const auto& [text, code] : objects) {
    mpz_class rhs = code.value + 1;
    rhs = 9 * rhs * rhs;
    single.add(log2_of(code_sequence({code.value}).value), log2_of(rhs));

    auto ga = group(), gb = group();
    Code a = code_sequence(ga), b = code_sequence(gb);
    cat.add(log2_of(concat(a, b).value), 6 + log2_of(a.value) + log2_of(b.value));

    Code sa = code_set_of(ga), sb = code_set_of(gb);
    std::vector<mpz_class> both = ga;
    both.insert(both.end(), gb.begin(), gb.end());
    uni.add(log2_of(code_set_of(both).value), 6 + log2_of(sa.value) + log2_of(sb.value));

    // |A| <= log code(A), for the sequence and the set
    double la = static_cast<double>(log_iter(1, a.value).get_ui());
    double ls = static_cast<double>(log_iter(1, sa.value).get_ui());
    std::set<mpz_class> distinct(ga.begin(), ga.end());
    card.add(std::log2(static_cast<double>(ga.size())), std::log2(la));
    card.add(std::log2(static_cast<double>(distinct.size())), std::log2(ls));
  }
  r.checks = {single.c, cat.c, uni.c, card.c};
  return r;
}

}  // namespace

std::vector<CorpusReport> contract_report(const Signature& sig, const SkolemRegistry* reg,
                                          std::size_t objects, std::uint64_t seed) {
  CodingScheme coder(sig, reg);
  Generator gen{sig.functions(), sig.predicates(), std::mt19937_64(seed)};
  if (reg)
    for (const auto& s : reg->symbols()) gen.functions.push_back({s.name, s.arity});
  bool has_constant = std::any_of(gen.functions.begin(), gen.functions.end(),
                                  [](const SymbolDecl& f) { return f.arity == 0; });
  if (!has_constant) gen.functions.push_back({"0", 0});
  Signature gsig = sig;
  if (!sig.function_arity("0") && !has_constant) gsig.add_function("0", 0);
  CodingScheme gcoder(gsig, reg);

  std::vector<std::pair<std::string, Code>> terms, formulas, sets, evals;
  for (std::size_t i = 0; i < objects; ++i) {
    Term t = gen.term(4, {});
    terms.emplace_back(render(t), gcoder.code_term(t));
    Formula f = gen.formula(3, {});
    formulas.emplace_back(render(f), gcoder.code_formula(f));
  }
  // term sets and evaluations are larger; a tenth as many
  std::size_t few = std::max<std::size_t>(objects / 10, 8);
  for (std::size_t i = 0; i < few; ++i) {
    std::vector<Term> ts;
    std::size_t n = 1 + gen.pick(3);
    while (ts.size() < n) {
      Term t = gen.term(2, {});
      if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
    }
    TermSet l(ts);
    std::string key;
    for (const auto& t : l) key += render(t) + ";";
    sets.emplace_back(key, gcoder.code_set(l));
    auto table = std::make_shared<AtomTable>(l, gsig);
    std::vector<bool> bits(table->size());
    for (std::size_t b = 0; b < bits.size(); ++b) bits[b] = gen.rng() & 1;
    std::string ekey = key;
    for (bool b : bits) ekey += b ? '1' : '0';
    evals.emplace_back(ekey, gcoder.code_evaluation(Evaluation(table, bits)));
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return {check_corpus("terms", terms, rng), check_corpus("formulas", formulas, rng),
          check_corpus("term-sets", sets, rng), check_corpus("evaluations", evals, rng)};
}

ExponentFit evaluation_code_fit(const std::vector<Evaluation>& evaluations, const CodingScheme& coder,
                                const BoundOptions& opts) {
  ExponentFit fit;
  fit.name = "evaluation code vs omega_1(set code)";
  for (const auto& p : evaluations) {
    Tower x(coder.code_evaluation(p).value);
    Tower y = omega_direct(1, Tower(coder.code_set(p.table().lambda()).value));
    fit.samples.push_back({x, y});
  }
  fit.result = p_bound_check(fit.samples, opts);
  return fit;
}

namespace {

template <class F>
ExponentFit universe_fit(std::string name, const GrowthOptions& opts, F&& sample) {
  ExponentFit fit;
  fit.name = std::move(name);
  Theory q = robinson_q();
  SkolemRegistry reg;
  skolemize_theory(q, reg);
  CodingScheme coder(q.signature, &reg);
  mpz_class origin = admitting_origin(reg, coder);
  for (std::size_t k : opts.base_sizes) {
    TermSet base(numeral_terms(k - 1));
    UniverseLevel u = make_universe(base, reg, origin);
    for (std::size_t n = 1; n <= opts.max_level; ++n) {
      u = grow_universe(u, q.signature, coder, opts.budget);
      fit.samples.push_back(sample(k, n, base, u.terms, coder));
    }
  }
  fit.result = p_bound_check(fit.samples, opts.bound);
  return fit;
}

}  // namespace

ExponentFit universe_size_fit(const GrowthOptions& opts) {
  return universe_fit("universe size vs |base|^(n!)", opts,
                      [](std::size_t k, std::size_t n, const TermSet&, const TermSet& level, const CodingScheme&) {
                        unsigned long fact = 1;
                        for (std::size_t i = 2; i <= n; ++i) fact *= i;
                        mpz_class y;
                        mpz_ui_pow_ui(y.get_mpz_t(), k, fact);
                        return BoundSample{Tower(mpz_class(static_cast<unsigned long>(level.size()))), Tower(y)};
                      });
}

ExponentFit universe_code_fit(const GrowthOptions& opts) {
  return universe_fit("universe code vs omega_2(base code)", opts,
                      [](std::size_t, std::size_t, const TermSet& base, const TermSet& level,
                         const CodingScheme& coder) {
                        return BoundSample{Tower(coder.code_set(level).value),
                                           omega_direct(2, Tower(coder.code_set(base).value))};
                      });
}

std::vector<OmegaCheck> omega_checks(const std::vector<TermSet>& sets, const CodingScheme& coder,
                                     std::uint64_t ceiling) {
  std::vector<OmegaCheck> out;
  for (std::size_t m = 0; m <= 2; ++m) {
    for (unsigned long x : {1UL, 2UL, 3UL, 4UL, 5UL, 16UL, 17UL, 100UL, 65536UL}) {
      Tower d = omega_direct(m, Tower(mpz_class(x), ceiling));
      Tower r = omega_recursive(m, Tower(mpz_class(x), ceiling));
      out.push_back({"omega_" + std::to_string(m) + "(" + std::to_string(x) + ") both forms", d.str(), r.str(),
                     compare(d, r) == 0});
    }
  }
  for (unsigned long j = 0; j <= 2; ++j) {
    Tower lhs = omega_direct(1, exp_iter(3, Tower(mpz_class(j), ceiling)));
    Tower rhs = exp_iter(3, Tower(mpz_class(j + 1), ceiling));
    out.push_back({"omega_1(exp^3(" + std::to_string(j) + ")) = exp^3(" + std::to_string(j + 1) + ")",
                   lhs.str(), rhs.str(), compare(lhs, rhs) == 0});
  }
  for (const auto& s : sets) {
    Code c = coder.code_set(s);
    unsigned long l = log_iter(1, c.value).get_ui();
    // code^log(code) in the log domain
    double lhs = log2_of(c.value) * static_cast<double>(l);
    Tower w = omega_direct(1, Tower(c.value, ceiling));
    double rhs = w.log2_approx();
    std::string label = s.label().empty() ? std::to_string(s.size()) + " terms" : s.label();
    out.push_back({"code^log(code) <= omega_1(code) for " + label, "2^" + std::to_string(lhs),
                   "2^" + std::to_string(rhs), lhs <= rhs * (1 + Tower::kTolerance)});
  }
  return out;
}

}  // namespace hcon
