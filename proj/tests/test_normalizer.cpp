#include <doctest.h>

#include <random>

#include "hcon/normalizer.hpp"
#include "support/oracle.hpp"

using namespace hcon;

namespace {

Signature phi_sig() { return parse_signature_line("signature: c/0 ; A/0 B/0 phi/1"); }

Formula F(const std::string& text) {
  static Signature sig = phi_sig();
  ParseContext ctx;
  ctx.signature = &sig;
  ctx.any_free_vars = true;
  return parse_formula(text, ctx);
}

}  // namespace

TEST_CASE("the six rewrite rules") {
  CHECK(render(nnf(F("A -> B"))) == "~A | B");
  CHECK(render(nnf(F("~~A"))) == "A");
  CHECK(render(nnf(F("~(A | B)"))) == "~A & ~B");
  CHECK(render(nnf(F("~(A & B)"))) == "~A | ~B");
  CHECK(render(nnf(F("~forall x. phi(x)"))) == "exists x. ~phi(x)");
  CHECK(render(nnf(F("~exists x. phi(x)"))) == "forall x. ~phi(x)");
}

TEST_CASE("single steps are leftmost outermost") {
  auto step = nnf_step(F("~(A -> B) | (A -> B)"));
  REQUIRE(step);
  CHECK(step->rule == NnfRule::ImpliesElim);
  CHECK(render(step->after) == "~(~A | B) | (A -> B)");
  CHECK_FALSE(nnf_step(F("~A | B")));
  std::vector<NnfStep> trace;
  nnf(F("~(A -> B)"), &trace);
  REQUIRE(trace.size() == 3);
  CHECK(trace[0].rule == NnfRule::ImpliesElim);
  CHECK(trace[1].rule == NnfRule::NegOr);
  CHECK(trace[2].rule == NnfRule::DoubleNeg);
  CHECK(render(trace.back().after) == "A & ~B");
}

TEST_CASE("rectification") {
  CHECK(render(rectify(F("(exists x. ~phi(x)) | forall x. phi(x)"))) ==
        "(exists x1. ~phi(x1)) | (forall x2. phi(x2))");
  Formula r = rectify(F("forall x. phi(x) & forall x. phi(x)"));
  CHECK(is_rectified(r));
  Formula twice = rectify(F("(forall x. A) & (forall x. B)"));
  CHECK(render(twice) == "(forall x1. A) & (forall x2. B)");
  CHECK(rectify(twice) == twice);
  // a free x1 is skipped
  CHECK(render(rectify(F("phi(x1) & forall x. phi(x)"))) == "phi(x1) & (forall x2. phi(x2))");
}

TEST_CASE("rnnf of the tautology F") {
  Formula f = F("(forall x. phi(x)) -> forall x. phi(x)");
  CHECK(render(rnnf(f)) == "(exists x1. ~phi(x1)) | (forall x2. phi(x2))");
  CHECK(rnnf(F("phi(c)")) == F("phi(c)"));
  CHECK(render(rnnf(F("~(A & B)"))) == "~A | ~B");
}

TEST_CASE("property: rnnf is idempotent, normal, and preserves free variables") {
  std::mt19937_64 rng(11);
  Signature sig = parse_signature_line("signature: c/0 g/1 ; P/2 R/1");
  for (int i = 0; i < 400; ++i) {
    Formula f = oracle::random_formula(sig, {}, 5, rng);
    Formula r = rnnf(f);
    CHECK(is_nnf(r));
    CHECK(is_rectified(r));
    CHECK(rnnf(r) == r);
    CHECK(free_vars(nnf(f)) == free_vars(f));
  }
}

TEST_CASE("property: the rank decreases on every step") {
  std::mt19937_64 rng(12);
  Signature sig = parse_signature_line("signature: c/0 g/1 ; P/2 R/1");
  for (int i = 0; i < 400; ++i) {
    Formula f = oracle::random_formula(sig, {}, 6, rng);
    std::size_t bound = nnf_rank(f);
    std::size_t steps = 0;
    Formula cur = f;
    while (auto s = nnf_step(cur)) {
      CHECK(nnf_rank(s->after) < nnf_rank(cur));
      cur = s->after;
      ++steps;
    }
    CHECK(steps <= bound);
    CHECK(is_nnf(cur));
  }
}

TEST_CASE("property: rnnf agrees with the input in every small model") {
  std::mt19937_64 rng(13);
  Signature sig = parse_signature_line("signature: c/0 g/1 ; P/2 R/1");
  for (int i = 0; i < 300; ++i) {
    Formula f = oracle::random_formula(sig, {}, 5, rng, false);
    Formula r = rnnf(f);
    for (int size = 1; size <= 3; ++size) {
      auto m = oracle::random_structure(sig, size, rng);
      CHECK_MESSAGE(oracle::models(m, sig, f) == oracle::models(m, sig, r), render(f));
    }
  }
}
