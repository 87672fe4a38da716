#include <doctest.h>

#include <random>

#include "hcon/herbrand.hpp"
#include "hcon/instantiation.hpp"
#include "support/oracle.hpp"

using namespace hcon;

namespace {

struct Grs {
  Theory t = parse_theory(
      "signature: c/0 g/1 ; P/2 R/1 S/1\n"
      "forall x. exists y. P(x, y)\nforall x. (R(x) | S(g(x)))\nforall x, y. (~P(x, y) | ~S(x))\n",
      "grs");
  SkolemRegistry reg;
  std::vector<SkolemizedFormula> tsk = skolemize_theory(t, reg);
  std::map<std::string, std::string> al;
  TermSet lambda = parse_term_set("alias f = sk{exists y. P(x, y)}\nc\ng(c)\nf(c)\n", t.signature, reg, &al);
  Term c = Term::constant("c");
  Term gc = Term::apply("g", {c});
  Term fc = Term::apply("sk0", {c});
};

}  // namespace

TEST_CASE("term sets") {
  Grs g;
  CHECK(g.lambda.size() == 3);
  CHECK(g.al.at("f") == "sk0");
  TermSet dup({g.c, g.gc, g.c});
  CHECK(dup.size() == 2);
  CHECK(dup.subset_of(g.lambda));
  CHECK_FALSE(g.lambda.subset_of(dup));
  CHECK(g.lambda.index_of(g.fc).has_value());
  CHECK_THROWS(TermSet({Term::variable("x")}));
}

TEST_CASE("instantiation substitutes simultaneously") {
  Grs g;
  auto i1 = instantiate(g.tsk[0], {{g.tsk[0].free_vars[0], g.c}});
  CHECK(render(i1.ground) == "P(c, sk0(c))");
  auto i2 = instantiate(g.tsk[1], {{g.tsk[1].free_vars[0], g.gc}});
  CHECK(render(i2.ground) == "R(g(c)) | S(g(g(c)))");
  SkolemRegistry reg;
  auto closed = skolemize(parse_formula("R(c)", g.t.signature), reg);
  CHECK(instantiate(closed, {}).ground == closed.open);
  CHECK_THROWS_AS(instantiate(g.tsk[0], {}), std::invalid_argument);
  CHECK_THROWS_AS(instantiate(g.tsk[0], {{g.tsk[0].free_vars[0], Term::variable("z")}}),
                  std::invalid_argument);
}

TEST_CASE("availability verdicts for the small theory") {
  Grs g;
  auto x = [&](std::size_t i) { return g.tsk[i].free_vars[0]; };
  CHECK(is_available(instantiate(g.tsk[0], {{x(0), g.c}}), g.lambda));
  CHECK_FALSE(is_available(instantiate(g.tsk[1], {{x(1), g.gc}}), g.lambda));
  Term fgc = Term::apply("sk0", {g.gc});
  auto t3 = instantiate(g.tsk[2], {{g.tsk[2].free_vars[0], g.gc}, {g.tsk[2].free_vars[1], fgc}});
  CHECK_FALSE(is_available(t3, g.lambda));
  CHECK(is_available(instantiate(g.tsk[1], {{x(1), g.c}}), g.lambda));
}

TEST_CASE("available instances of the small theory, against enumeration") {
  Grs g;
  auto insts = available_instances(g.tsk, g.lambda);
  std::set<std::string> got;
  for (const auto& i : insts) got.insert(render(i.ground));
  std::set<std::string> want;
  for (const auto& sf : g.tsk)
    for (const auto& s : oracle::available(sf.open, g.lambda.elements())) want.insert(s);
  CHECK(got == want);
  CHECK(got.count("P(c, sk0(c))"));
  CHECK(got.count("R(c) | S(g(c))"));
  CHECK(got.count("~P(c, sk0(c)) | ~S(c)"));
  // T1 once, T2 once, T3 on all nine pairs
  CHECK(insts.size() == 1 + 1 + 9);
  CHECK(available_instances(g.tsk, TermSet{}).empty());
}

TEST_CASE("instances over the completed successor set include the derivation's steps") {
  Theory q = robinson_q();
  SkolemRegistry reg;
  auto tsk = skolemize_theory(q, reg);
  TermSet sigma = load_term_set(std::string(HCON_FIXTURE_DIR) + "/sigma0.lam", q.signature, reg);
  std::set<std::string> got;
  for (const auto& i : available_instances(tsk, sigma)) got.insert(render(i.ground));
  CHECK(got.count("(~(0 <= 0) | 0 + sk1(0, 0) = 0) & (0 + 0 != 0 | 0 <= 0)"));  // A4
  CHECK(got.count("0 + 0 = 0"));                                                 // A5
  CHECK(got.count("0 + s(sk0(sk1(0, 0))) = s(0 + sk0(sk1(0, 0)))"));             // A6
  CHECK(got.count("sk1(0, 0) = 0 | sk1(0, 0) = s(sk0(sk1(0, 0)))"));             // A3
  CHECK(got.count("s(0 + sk0(sk1(0, 0))) != 0"));                                // A1
}

TEST_CASE("the instance budget is enforced") {
  Grs g;
  InstanceOptions opts;
  opts.budget.max_substitutions = 5;
  CHECK_THROWS_AS(available_instances(g.tsk, g.lambda, opts), BudgetExceeded);
}

TEST_CASE("property: availability is monotone and matches enumeration") {
  std::mt19937_64 rng(31);
  Theory q = robinson_q();
  SkolemRegistry reg;
  auto tsk = skolemize_theory(q, reg);
  Signature ext = q.signature;
  for (const auto& s : reg.symbols()) ext.add_function(s.name, s.arity);
  for (int round = 0; round < 40; ++round) {
    std::vector<Term> small, big;
    for (int i = 0; i < 4; ++i) small.push_back(oracle::random_ground_term(ext, 2, rng));
    big = small;
    for (int i = 0; i < 3; ++i) big.push_back(oracle::random_ground_term(ext, 2, rng));
    TermSet a(small), b(big);
    std::set<std::string> ia, ib;
    for (const auto& i : available_instances(tsk, a)) {
      CHECK(is_available(i, a));
      ia.insert(render(i.ground));
    }
    for (const auto& i : available_instances(tsk, b, {Budget{}, true})) ib.insert(render(i.ground));
    CHECK(std::includes(ib.begin(), ib.end(), ia.begin(), ia.end()));
    std::set<std::string> want;
    for (const auto& sf : tsk)
      for (const auto& s : oracle::available(sf.open, a.elements())) want.insert(s);
    CHECK(ia == want);
  }
}
