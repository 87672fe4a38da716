#include <doctest.h>

#include <random>

#include "hcon/evaluation.hpp"
#include "hcon/herbrand.hpp"
#include "support/oracle.hpp"

using namespace hcon;

namespace {

const std::string kDir = HCON_FIXTURE_DIR;

struct Grs {
  Theory t = load_theory(kDir + "/grs.thy");
  SkolemRegistry reg;
  std::vector<SkolemizedFormula> tsk = skolemize_theory(t, reg);
  std::map<std::string, std::string> al;
  TermSet lambda = load_term_set(kDir + "/grs.lam", t.signature, reg, &al);
  std::shared_ptr<AtomTable> table = std::make_shared<AtomTable>(lambda, t.signature);

  Formula atom(const std::string& s) {
    ParseContext ctx;
    ctx.signature = &t.signature;
    ctx.aliases = &al;
    reg.bind(ctx);
    return parse_formula(s, ctx);
  }
  Evaluation eval(const std::vector<std::string>& atoms) {
    std::vector<Formula> fs;
    for (const auto& a : atoms) fs.push_back(atom(a));
    return Evaluation::from_true_atoms(table, fs);
  }
};

oracle::Valuation valuation(const Evaluation& p) {
  oracle::Valuation v;
  for (std::size_t i = 0; i < p.table().size(); ++i)
    if (p.bit(i)) v.insert(render(p.table().atom(i)));
  return v;
}

}  // namespace

TEST_CASE("atom table sizes") {
  Signature q = Signature::arithmetic();
  TermSet three({numeral(0), numeral(1), numeral(2)});
  CHECK(AtomTable(three, q).size() == 18);
  Signature r = parse_signature_line("signature: c/0 ; R/1");
  CHECK(AtomTable(TermSet({Term::constant("c")}), r).size() == 2);
  Grs g;
  CHECK(g.table->size() == 24);
  for (std::size_t i = 0; i < g.table->size(); ++i) CHECK(g.table->index_of(g.table->atom(i)) == i);
  Budget tiny;
  tiny.max_atoms = 10;
  CHECK_THROWS_AS(AtomTable(three, q, tiny), BudgetExceeded);
}

TEST_CASE("evaluations of the small theory") {
  Grs g;
  Evaluation q = g.eval({"P(c, f(c))", "R(c)"});
  Evaluation r = g.eval({"P(c, f(c))", "R(c)", "S(c)"});
  CHECK(is_evaluation(q));
  CHECK(is_T_evaluation(q, g.tsk));
  CHECK(is_evaluation(r));
  CHECK_FALSE(is_T_evaluation(r, g.tsk));
  auto bad = violated_instances(r, g.tsk);
  REQUIRE(bad.size() == 1);
  CHECK(render(bad[0].ground) == "~P(c, sk0(c)) | ~S(c)");
  CHECK(satisfies(q, g.atom("~P(c, f(c)) | ~S(c)")));
  CHECK_FALSE(satisfies(r, g.atom("~P(c, f(c)) | ~S(c)")));
  CHECK(satisfies(q, g.atom("R(c) | S(g(c))")));
  CHECK(is_T_evaluation(r, {}));
  CHECK_THROWS_AS(satisfies(q, g.atom("R(g(g(c)))")), std::out_of_range);

  auto cls = eq_classes(q);
  CHECK(cls.members.size() == 3);
}

TEST_CASE("evaluation conditions") {
  Grs g;
  CHECK(is_evaluation(g.eval({"R(c)", "S(g(c))", "P(g(c), c)"})));
  Evaluation broken = g.eval({"c = g(c)", "g(c) = c", "R(c)"});
  CHECK_FALSE(is_evaluation(broken));
  CHECK_FALSE(evaluation_defect(broken).empty());
  Evaluation no_refl(g.table);
  CHECK_FALSE(is_evaluation(no_refl));
  Evaluation all = g.eval({"c = g(c)", "g(c) = c", "c = f(c)", "f(c) = c", "g(c) = f(c)", "f(c) = g(c)"});
  CHECK(is_evaluation(all));
  CHECK(eq_classes(all).members.size() == 1);
  Evaluation merged = g.eval({"c = g(c)", "g(c) = c"});
  auto m = eq_classes(merged);
  CHECK(m.members.size() == 2);
  CHECK(m.class_of[g.lambda.index_of(Term::constant("c")).value()] ==
        m.class_of[g.lambda.index_of(Term::apply("g", {Term::constant("c")})).value()]);
}

TEST_CASE("functional congruence inside the set") {
  Signature sig = parse_signature_line("signature: a/0 b/0 g/1 ; R/1");
  TermSet l({Term::constant("a"), Term::constant("b"), Term::apply("g", {Term::constant("a")}),
             Term::apply("g", {Term::constant("b")})});
  auto table = std::make_shared<AtomTable>(l, sig);
  Evaluation p = Evaluation::from_true_atoms(table, {parse_formula("a = b", sig), parse_formula("b = a", sig)});
  CHECK_FALSE(is_evaluation(p));
  CHECK_FALSE(oracle::is_evaluation(l.elements(), sig, valuation(p)));
}

TEST_CASE("finding evaluations for the refutation") {
  Grs g;
  SkolemRegistry reg;
  Formula goal = parse_formula("forall x. R(x)", g.t.signature);
  auto tsk = skolemize_refutation(g.t, goal, reg);
  TermSet refute = load_term_set(kDir + "/grs_refute.lam", g.t.signature, reg);
  TermSet open = load_term_set(kDir + "/grs_open.lam", g.t.signature, reg);
  auto a = find_evaluation(tsk, refute, g.t.signature);
  CHECK_FALSE(a.evaluation);
  CHECK(check_refutation(a.encoding.cnf, a.proof).ok);
  auto b = find_evaluation(tsk, open, g.t.signature);
  REQUIRE(b.evaluation);
  CHECK(is_evaluation(*b.evaluation));
  CHECK(is_T_evaluation(*b.evaluation, tsk));
  FindOptions brute;
  brute.mode = SearchMode::Brute;
  CHECK_FALSE(find_evaluation(tsk, refute, g.t.signature, brute).evaluation);
  CHECK(find_evaluation(tsk, open, g.t.signature, brute).evaluation);
  auto empty = find_evaluation(tsk, TermSet{}, g.t.signature);
  REQUIRE(empty.evaluation);
  CHECK(empty.evaluation->bits().empty());
}

TEST_CASE("brute force refuses large tables") {
  Theory q = robinson_q();
  SkolemRegistry reg;
  auto tsk = skolemize_theory(q, reg);
  TermSet four(numeral_terms(3));
  CHECK_THROWS_AS(brute_force(tsk, four, q.signature), BudgetExceeded);
}

TEST_CASE("forcing over completed sets") {
  struct Case {
    const char* thy;
    const char* lam;
    const char* goal;
    bool forced;
  };
  const Case cases[] = {
      {"q.thy", "sigma0.lam", "~(0 <= 0) | 0 = 0", true},
      {"q.thy", "gamma00.lam", "~(0 <= s(0)) | 0 = s(0) | 0 <= 0", true},
      {"q.thy", "sigma_c.lam", "~(t <= 0) | t = 0", true},
      {"q.thy", "sigma_c_printed.lam", "~(t <= 0) | t = 0", false},
      {"q.thy", "gamma_uv.lam", "~(u <= s(w(u))) | u = s(w(u)) | u <= w(u)", true},
      {"q.thy", "gamma_uv_printed.lam", "~(u <= s(w(u))) | u = s(w(u)) | u <= w(u)", false},
      {"qind.thy", "squaring.lam", "q(s(s(0))) = s(s(0)) * s(s(0))", true},
      {"qind.thy", "squaring_printed.lam", "q(s(s(0))) = s(s(0)) * s(s(0))", false},
  };
  for (const auto& c : cases) {
    CAPTURE(c.lam);
    Theory t = load_theory(kDir + "/" + c.thy);
    SkolemRegistry reg;
    auto tsk = skolemize_theory(t, reg);
    std::map<std::string, std::string> al;
    TermSet l = load_term_set(kDir + "/" + c.lam, t.signature, reg, &al);
    ParseContext ctx;
    ctx.signature = &t.signature;
    ctx.aliases = &al;
    reg.bind(ctx);
    Formula goal = parse_formula(c.goal, ctx);
    auto r = force_check(tsk, l, t.signature, goal);
    CHECK(r.forced == c.forced);
    if (r.counterexample) {
      CHECK(is_evaluation(*r.counterexample));
      CHECK(is_T_evaluation(*r.counterexample, tsk));
      CHECK_FALSE(satisfies(*r.counterexample, goal));
    }
  }
}

TEST_CASE("every completion term is needed for the generic sets") {
  struct Case {
    const char* lam;
    const char* goal;
  };
  const Case cases[] = {
      {"sigma_c.lam", "~(t <= 0) | t = 0"},
      {"gamma_uv.lam", "~(u <= s(w(u))) | u = s(w(u)) | u <= w(u)"},
  };
  for (const auto& c : cases) {
    Theory t = load_theory(kDir + "/q.thy");
    SkolemRegistry reg;
    auto tsk = skolemize_theory(t, reg);
    std::map<std::string, std::string> al;
    TermSet full = load_term_set(kDir + "/" + c.lam, t.signature, reg, &al);
    std::string printed_name = std::string(c.lam).replace(std::string(c.lam).find(".lam"), 4, "_printed.lam");
    TermSet printed = load_term_set(kDir + "/" + printed_name, t.signature, reg);
    ParseContext ctx;
    ctx.signature = &t.signature;
    ctx.aliases = &al;
    reg.bind(ctx);
    Formula goal = parse_formula(c.goal, ctx);
    for (const auto& term : full) {
      if (printed.contains(term)) continue;
      std::vector<Term> rest;
      for (const auto& u : full)
        if (!(u == term)) rest.push_back(u);
      CAPTURE(render(term));
      CHECK_FALSE(force_check(tsk, TermSet(rest), t.signature, goal).forced);
    }
  }
}

TEST_CASE("the squaring completion terms are needed") {
  Theory t = load_theory(kDir + "/qind.thy");
  SkolemRegistry reg;
  auto tsk = skolemize_theory(t, reg);
  std::map<std::string, std::string> al;
  TermSet full = load_term_set(kDir + "/squaring.lam", t.signature, reg, &al);
  TermSet printed = load_term_set(kDir + "/squaring_printed.lam", t.signature, reg);
  ParseContext ctx;
  ctx.signature = &t.signature;
  ctx.aliases = &al;
  reg.bind(ctx);
  Formula goal = parse_formula("q(s(s(0))) = s(s(0)) * s(s(0))", ctx);
  std::size_t added = 0;
  for (const auto& term : full) {
    if (printed.contains(term)) continue;
    ++added;
    std::vector<Term> rest;
    for (const auto& u : full)
      if (!(u == term)) rest.push_back(u);
    CAPTURE(render(term));
    CHECK_FALSE(force_check(tsk, TermSet(rest), t.signature, goal).forced);
  }
  CHECK(added == 2);
}

namespace {

struct RandomCase {
  Signature sig;
  std::vector<SkolemizedFormula> tsk;
  TermSet lambda;
};

RandomCase random_case(std::mt19937_64& rng) {
  RandomCase rc;
  rc.sig = parse_signature_line("signature: c/0 d/0 g/1 ; R/1 P/2");
  SkolemRegistry reg;
  Theory t{"random", rc.sig, {}};
  int axioms = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < axioms; ++i) t.axioms.push_back(oracle::random_formula(rc.sig, {}, 3, rng, false));
  if (rng() % 3 != 0) {
    // contradictory universal pair; refutable once an instance is available
    Term x = Term::variable("x");
    Formula g = rng() % 2 ? oracle::random_formula(rc.sig, {"x"}, 2, rng, true)
                          : (rng() % 2 ? Formula::atom("R", {x}) : Formula::atom("P", {x, x}));
    t.axioms.push_back(Formula::forall("x", g));
    t.axioms.push_back(Formula::forall("x", Formula::negation(g)));
  }
  rc.tsk = skolemize_theory(t, reg);
  Signature ext = rc.sig;
  for (const auto& s : reg.symbols()) ext.add_function(s.name, s.arity);
  std::vector<Term> terms;
  std::size_t n = rng() % 8 == 0 ? 3 : 1 + rng() % 2;
  while (terms.size() < n) {
    Term cand = oracle::random_ground_term(ext, 2, rng);
    if (std::find(terms.begin(), terms.end(), cand) == terms.end()) terms.push_back(cand);
  }
  rc.lambda = TermSet(terms);
  return rc;
}

}  // namespace

TEST_CASE("property: SAT, brute force and the enumeration oracle agree") {
  std::mt19937_64 rng(51);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 120; ++i) {
    RandomCase rc = random_case(rng);
    bool oracle_sat = oracle::count_t_evaluations(rc.lambda.elements(), rc.sig, [&] {
                        std::vector<Formula> opens;
                        for (const auto& sf : rc.tsk) opens.push_back(sf.open);
                        return opens;
                      }(),
                                                     {}, 1) > 0;
    FindOptions s, b, plain;
    b.mode = SearchMode::Brute;
    plain.encode.symmetry = plain.encode.transitivity = false;
    auto rs = find_evaluation(rc.tsk, rc.lambda, rc.sig, s);
    auto rb = find_evaluation(rc.tsk, rc.lambda, rc.sig, b);
    auto rp = find_evaluation(rc.tsk, rc.lambda, rc.sig, plain);
    CHECK(rs.evaluation.has_value() == oracle_sat);
    CHECK(rb.evaluation.has_value() == oracle_sat);
    CHECK(rp.evaluation.has_value() == oracle_sat);
    for (const auto* r : {&rs, &rb, &rp}) {
      if (!r->evaluation) continue;
      CHECK(is_evaluation(*r->evaluation));
      CHECK(oracle::is_evaluation(rc.lambda.elements(), rc.sig, valuation(*r->evaluation)));
      CHECK(is_T_evaluation(*r->evaluation, rc.tsk));
    }
    (oracle_sat ? sat : unsat)++;
  }
  CHECK(sat > 10);
  CHECK(unsat > 10);
}

TEST_CASE("property: is_evaluation agrees with the literal definition") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 300; ++i) {
    RandomCase rc = random_case(rng);
    auto table = std::make_shared<AtomTable>(rc.lambda, rc.sig);
    std::vector<bool> bits(table->size());
    // sample from partitions so that valid evaluations are common
    std::vector<std::size_t> block(rc.lambda.size());
    for (auto& b : block) b = rng() % 2;
    for (std::size_t a = 0; a < table->size(); ++a) {
      auto [pred, args] = table->decode(a);
      if (pred == 0)
        bits[a] = block[args[0]] == block[args[1]] || args[0] == args[1];
      else
        bits[a] = rng() % 2;
    }
    if (rng() % 4 == 0) bits[rng() % bits.size()] = !bits[rng() % bits.size()];
    Evaluation p(table, bits);
    CHECK(is_evaluation(p) == oracle::is_evaluation(rc.lambda.elements(), rc.sig, valuation(p)));
    if (is_evaluation(p)) {
      auto cls = eq_classes(p);
      for (std::size_t a = 0; a < table->size(); ++a) {
        auto [pred, args] = table->decode(a);
        std::vector<std::size_t> rep = args;
        for (auto& x : rep) x = cls.representative(cls.class_of[x]);
        CHECK(p.bit(a) == p.bit(table->index(pred, rep)));
      }
    }
  }
}

TEST_CASE("search is deterministic") {
  Theory q = robinson_q();
  SkolemRegistry reg;
  auto tsk = skolemize_theory(q, reg);
  TermSet l(numeral_terms(3));
  auto a = find_evaluation(tsk, l, q.signature);
  auto b = find_evaluation(tsk, l, q.signature);
  REQUIRE(a.evaluation);
  CHECK(a.evaluation->true_atoms() == b.evaluation->true_atoms());
}
