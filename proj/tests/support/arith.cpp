#include "support/arith.hpp"

namespace arith {

using hcon::numeral;

Term plus(Term a, Term b) { return Term::apply("+", {std::move(a), std::move(b)}); }
Term times(Term a, Term b) { return Term::apply("*", {std::move(a), std::move(b)}); }
Term succ(Term a) { return Term::apply("s", {std::move(a)}); }

std::vector<Term> gamma(const std::string& p, const std::string& h, const Term& t, const Term& k) {
  Term sk = succ(k);
  Term d = Term::apply(h, {t, sk});
  Term pd = Term::apply(p, {d});
  return {Term::constant("0"), t, k, sk, d, pd, succ(pd), plus(t, pd), plus(t, succ(pd)), succ(plus(t, pd)),
          plus(t, d), plus(t, Term::constant("0")), plus(t, Term::apply(h, {t, k}))};
}

std::vector<Term> addition_support(std::size_t i, std::size_t j) {
  std::vector<Term> out;
  for (std::size_t k = 0; k <= j; ++k) {
    out.push_back(plus(numeral(i), numeral(k)));
    out.push_back(succ(plus(numeral(i), numeral(k))));
  }
  return out;
}

std::vector<Term> product_support(std::size_t i, std::size_t j) {
  std::vector<Term> out;
  for (std::size_t k = 0; k <= j; ++k) {
    out.push_back(times(numeral(i), numeral(k)));
    if (k < j) {
      out.push_back(plus(times(numeral(i), numeral(k)), numeral(i)));
      for (const auto& a : addition_support(i * k, i)) out.push_back(a);
    }
  }
  return out;
}

}  // namespace arith
