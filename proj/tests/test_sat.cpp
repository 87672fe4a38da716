#include <doctest.h>

#include <random>

#include "hcon/budget.hpp"
#include "hcon/sat.hpp"
#include "support/oracle.hpp"

using namespace hcon;

namespace {

Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses, int width) {
  Cnf c;
  c.num_vars = vars;
  for (int i = 0; i < clauses; ++i) {
    Clause cl;
    int w = 1 + static_cast<int>(rng() % width);
    for (int j = 0; j < w; ++j) {
      int v = 1 + static_cast<int>(rng() % vars);
      cl.push_back(rng() % 2 ? v : -v);
    }
    c.clauses.push_back(cl);
  }
  return c;
}

Cnf pigeonhole(int holes) {
  Cnf c;
  int pigeons = holes + 1;
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  c.num_vars = pigeons * holes;
  for (int p = 0; p < pigeons; ++p) {
    Clause cl;
    for (int h = 0; h < holes; ++h) cl.push_back(var(p, h));
    c.clauses.push_back(cl);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) c.clauses.push_back({-var(p, h), -var(q, h)});
  return c;
}

}  // namespace

TEST_CASE("trivial formulas") {
  CHECK(solve(Cnf{0, {}}).satisfiable);
  Cnf empty_clause{1, {{}}};
  auto r = solve(empty_clause);
  CHECK_FALSE(r.satisfiable);
  CHECK(check_refutation(empty_clause, r.proof).ok);
  Cnf units{1, {{1}, {-1}}};
  auto u = solve(units);
  CHECK_FALSE(u.satisfiable);
  CHECK(check_refutation(units, u.proof).ok);
  Cnf taut{2, {{1, -1}, {2}}};
  auto t = solve(taut);
  REQUIRE(t.satisfiable);
  CHECK(satisfies(taut, t.model));
}

TEST_CASE("pigeonhole refutations replay") {
  for (int holes = 2; holes <= 5; ++holes) {
    Cnf c = pigeonhole(holes);
    auto r = solve(c);
    REQUIRE_FALSE(r.satisfiable);
    auto ck = check_refutation(c, r.proof);
    CHECK_MESSAGE(ck.ok, ck.message);
    CHECK(r.proof.back().clause.empty());
  }
}

TEST_CASE("decisions are false first on the lowest variable") {
  Cnf c{3, {{1, 2, 3}}};
  auto r = solve(c);
  REQUIRE(r.satisfiable);
  CHECK_FALSE(r.model[1]);
  CHECK_FALSE(r.model[2]);
  CHECK(r.model[3]);
}

TEST_CASE("broken proofs are rejected") {
  Cnf c = pigeonhole(3);
  auto r = solve(c);
  REQUIRE_FALSE(r.satisfiable);
  auto proof = r.proof;
  proof.back().antecedents.pop_back();
  CHECK_FALSE(check_refutation(c, proof).ok);
  auto lying = r.proof;
  lying.front().clause.push_back(lying.front().clause.empty() ? 1 : -lying.front().clause[0]);
  CHECK_FALSE(check_refutation(c, lying).ok);
  Cnf smaller = c;
  smaller.clauses.erase(smaller.clauses.begin());
  CHECK_FALSE(check_refutation(smaller, r.proof).ok);
  CHECK_FALSE(check_refutation(c, {}).ok);
}

TEST_CASE("conflict budget") {
  SatOptions opts;
  opts.max_conflicts = 1;
  CHECK_THROWS_AS(solve(pigeonhole(5), opts), BudgetExceeded);
}

TEST_CASE("dimacs output") {
  CHECK(to_dimacs(Cnf{2, {{1, -2}, {2}}}) == "p cnf 2 2\n1 -2 0\n2 0\n");
}

TEST_CASE("property: verdicts agree with truth tables; models and proofs check") {
  std::mt19937_64 rng(41);
  int unsat = 0;
  for (int i = 0; i < 600; ++i) {
    int vars = 3 + static_cast<int>(rng() % 10);
    Cnf c = random_cnf(rng, vars, 4 + static_cast<int>(rng() % (5 * vars)), 3);
    auto r = solve(c);
    CHECK(r.satisfiable == oracle::truth_table_sat(c.num_vars, c.clauses));
    if (r.satisfiable) {
      CHECK(satisfies(c, r.model));
    } else {
      ++unsat;
      auto ck = check_refutation(c, r.proof);
      CHECK_MESSAGE(ck.ok, ck.message);
    }
  }
  CHECK(unsat > 50);
}
