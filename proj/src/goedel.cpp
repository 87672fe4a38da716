#include "hcon/goedel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hcon/evaluation.hpp"
#include "hcon/instantiation.hpp"

namespace hcon {

std::size_t bit_length(const mpz_class& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

// ----------------------------------------------------------------- sequences

namespace {

std::string binary(const mpz_class& v) { return v.get_str(2); }

void append_element(std::string& bits, const mpz_class& v) {
  if (v <= 0) throw std::invalid_argument("sequence elements must be positive");
  std::string body = binary(v);                          // leading 1 first
  std::string len = binary(mpz_class(static_cast<unsigned long>(body.size())));
  bits.append(len.size() - 1, '0');
  bits += len;
  bits.append(body, 1, std::string::npos);
}

Code from_bits(const std::string& bits) { return Code(mpz_class(bits, 2)); }

}  // namespace

Code code_sequence(const std::vector<mpz_class>& elements) {
  std::string bits = "1";
  for (const auto& e : elements) append_element(bits, e);
  return from_bits(bits);
}

std::vector<mpz_class> decode_sequence(const Code& c) {
  if (c.value <= 0) throw std::invalid_argument("not a sequence code");
  std::string bits = binary(c.value);
  std::vector<mpz_class> out;
  std::size_t i = 1;
  while (i < bits.size()) {
    std::size_t zeros = 0;
    while (i < bits.size() && bits[i] == '0') ++zeros, ++i;
    if (i + zeros > bits.size()) throw std::invalid_argument("truncated sequence code");
    std::size_t len = std::stoul(bits.substr(i, zeros + 1), nullptr, 2);
    i += zeros + 1;
    if (len == 0 || i + len - 1 > bits.size()) throw std::invalid_argument("truncated sequence code");
    out.emplace_back("1" + bits.substr(i, len - 1), 2);
    i += len - 1;
  }
  return out;
}

Code code_set_of(std::vector<mpz_class> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return code_sequence(elements);
}

Code concat(const Code& a, const Code& b) {
  std::string bb = binary(b.value);
  return from_bits(binary(a.value) + bb.substr(1));
}

// ------------------------------------------------------------- CodingScheme

CodingScheme::CodingScheme(const Signature& sig, const SkolemRegistry* reg) {
  unsigned next = kEq + 1;
  ids_[std::string(kEquality)] = kEq;
  for (const auto& f : sig.functions()) ids_[f.name] = next++;
  for (const auto& p : sig.predicates()) ids_[p.name] = next++;
  if (!reg) return;
  for (const auto& s : reg->symbols()) ids_.emplace(s.name, next++);
  // Auxiliary symbols that occur only in Skolem sources (e.g. a graph
  // predicate) are numbered last, in order of appearance.
  std::function<void(const Term&)> term = [&](const Term& t) {
    if (t.is_variable()) return;
    if (ids_.emplace(t.name(), next).second) ++next;
    for (const auto& a : t.args()) term(a);
  };
  for (const auto& s : reg->symbols())
    for (const auto& a : atoms_of(s.source)) {
      if (ids_.emplace(a.predicate(), next).second) ++next;
      for (const auto& t : a.terms()) term(t);
    }
}

unsigned CodingScheme::id(const std::string& symbol) const {
  auto it = ids_.find(symbol);
  if (it == ids_.end()) throw std::invalid_argument("symbol without a code: " + symbol);
  return it->second;
}

mpz_class CodingScheme::term_value(const Term& t) const {
  if (t.is_variable()) {
    mpz_class name;
    for (unsigned char ch : t.name()) name = name * 256 + ch;
    return code_sequence({kVar, name}).value;
  }
  std::vector<mpz_class> seq{id(t.name())};
  for (const auto& a : t.args()) seq.push_back(term_value(a));
  return code_sequence(seq).value;
}

mpz_class CodingScheme::formula_value(const Formula& f) const {
  std::vector<mpz_class> seq;
  switch (f.kind()) {
    case FormulaKind::Atom:
      seq.push_back(id(f.predicate()));
      for (const auto& t : f.terms()) seq.push_back(term_value(t));
      break;
    case FormulaKind::Not:
      seq = {kNot, formula_value(f.operand())};
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      unsigned tag = f.kind() == FormulaKind::And ? kAnd : f.kind() == FormulaKind::Or ? kOr : kImplies;
      seq = {tag, formula_value(f.lhs()), formula_value(f.rhs())};
      break;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      seq = {f.kind() == FormulaKind::Forall ? kForall : kExists,
             term_value(Term::variable(f.variable())), formula_value(f.body())};
      break;
  }
  return code_sequence(seq).value;
}

Code CodingScheme::code_term(const Term& t) const { return Code(term_value(t)); }
Code CodingScheme::code_formula(const Formula& f) const { return Code(formula_value(f)); }

Code CodingScheme::code_set(const TermSet& lambda) const {
  std::vector<mpz_class> els;
  els.reserve(lambda.size());
  for (const auto& t : lambda) els.push_back(term_value(t));
  return code_set_of(std::move(els));
}

Code CodingScheme::code_evaluation(const Evaluation& p) const {
  std::vector<mpz_class> els;
  els.reserve(p.table().size());
  for (std::size_t i = 0; i < p.table().size(); ++i)
    els.push_back(code_sequence({formula_value(p.table().atom(i)), p.bit(i) ? 2 : 1}).value);
  return code_set_of(std::move(els));
}

// -------------------------------------------------------------------- Tower

namespace {

void canonicalize(int& level, double& mu) {
  while (true) {
    if (mu > 1024) {
      mu = std::log2(mu);
      ++level;
    } else if (level > 0 && mu <= 10) {
      mu = std::exp2(mu);
      --level;
    } else {
      return;
    }
  }
}

bool near_integer(double mu, double& rounded) {
  rounded = std::round(mu);
  return std::fabs(mu - rounded) <= Tower::kTolerance * std::max(1.0, std::fabs(mu));
}

// The natural number exp^level(mu) when every stage is an integer and fits.
std::optional<mpz_class> materialize(int level, double mu, std::uint64_t ceiling) {
  if (level == 0) {
    double r;
    if (!near_integer(mu, r)) return std::nullopt;
    mpz_class v(r);
    if (bit_length(v) > ceiling) return std::nullopt;
    return v;
  }
  auto inner = materialize(level - 1, mu, ceiling);
  if (!inner || *inner + 1 > ceiling) return std::nullopt;
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, inner->get_ui());
  return v;
}

double log2_of(const mpz_class& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  long e;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return static_cast<double>(e) + std::log2(d);
}

mpz_class ceil_log(const mpz_class& v) {
  if (v <= 1) return 0;
  return static_cast<unsigned long>(bit_length(v - 1));
}

}  // namespace

Tower::Tower(mpz_class v, std::uint64_t ceiling) : ceiling_(ceiling) {
  if (v < 0) throw std::invalid_argument("towers hold natural numbers");
  exact_ = v;
  set_surrogate_from_exact();
  if (bit_length(v) > ceiling) exact_.reset();
}

void Tower::set_surrogate_from_exact() {
  const mpz_class& v = *exact_;
  if (v <= 1024) {
    level_ = 0;
    mantissa_ = v.get_d();
    return;
  }
  level_ = 1;
  mantissa_ = log2_of(v);
  canonicalize(level_, mantissa_);
}

Tower Tower::surrogate(int level, double mantissa, std::uint64_t ceiling) {
  if (level < 0 || !(mantissa >= 0) || std::isinf(mantissa))
    throw std::invalid_argument("invalid tower surrogate");
  canonicalize(level, mantissa);
  if (auto v = materialize(level, mantissa, ceiling)) return Tower(*v, ceiling);
  Tower t;
  t.exact_.reset();
  t.level_ = level;
  t.mantissa_ = mantissa;
  t.ceiling_ = ceiling;
  return t;
}

const mpz_class& Tower::value() const {
  if (!exact_) throw BudgetExceeded("tower value " + str() + " exceeds the bit ceiling");
  return *exact_;
}

double Tower::log2_approx() const {
  if (exact_) return log2_of(*exact_);
  switch (level_) {
    case 0:
      return std::log2(mantissa_);
    case 1:
      return mantissa_;
    case 2:
      return std::exp2(mantissa_);
    default:
      return std::numeric_limits<double>::infinity();
  }
}

Tower Tower::exp() const {
  if (exact_ && *exact_ + 1 <= ceiling_) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, exact_->get_ui());
    return Tower(v, ceiling_);
  }
  return surrogate(level_ + 1, mantissa_, ceiling_);
}

Tower Tower::log() const {
  if (exact_) return Tower(ceil_log(*exact_), ceiling_);
  if (level_ == 0) return Tower(mpz_class(std::ceil(std::log2(mantissa_) - kTolerance)), ceiling_);
  if (level_ == 1) {
    double r;
    if (!near_integer(mantissa_, r)) r = std::ceil(mantissa_);
    return Tower(mpz_class(r), ceiling_);
  }
  return surrogate(level_ - 1, mantissa_, ceiling_);
}

Tower Tower::square() const {
  if (exact_ && 2 * bit_length(*exact_) <= ceiling_) return Tower(*exact_ * *exact_, ceiling_);
  switch (level_) {
    case 0:
      return surrogate(0, mantissa_ * mantissa_, ceiling_);
    case 1:
      return surrogate(1, 2 * mantissa_, ceiling_);
    case 2:
      return surrogate(2, mantissa_ + 1, ceiling_);
    default:
      return *this;
  }
}

Tower Tower::pow(std::uint64_t n) const {
  if (n == 0) return Tower(mpz_class(1), ceiling_);
  if (exact_ && static_cast<double>(n) * static_cast<double>(bit_length(*exact_)) <=
                    static_cast<double>(ceiling_)) {
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), exact_->get_mpz_t(), n);
    return Tower(v, ceiling_);
  }
  double dn = static_cast<double>(n);
  switch (level_) {
    case 0:
      if (mantissa_ <= 1) return *this;
      return surrogate(1, dn * std::log2(mantissa_), ceiling_);
    case 1:
      return surrogate(1, dn * mantissa_, ceiling_);
    case 2:
      return surrogate(2, mantissa_ + std::log2(dn), ceiling_);
    default:
      return *this;
  }
}

int compare(const Tower& a, const Tower& b) {
  if (a.exact_ && b.exact_) return cmp(*a.exact_, *b.exact_) < 0 ? -1 : (*a.exact_ == *b.exact_ ? 0 : 1);
  if (a.level_ != b.level_) return a.level_ < b.level_ ? -1 : 1;
  double tol = Tower::kTolerance * std::max(a.mantissa_, b.mantissa_);
  if (std::fabs(a.mantissa_ - b.mantissa_) <= tol) return 0;
  return a.mantissa_ < b.mantissa_ ? -1 : 1;
}

std::string Tower::str() const {
  std::ostringstream out;
  if (exact_) {
    if (bit_length(*exact_) <= 64)
      out << exact_->get_str();
    else
      out << "<" << bit_length(*exact_) << "-bit number>";
    return out.str();
  }
  out.precision(12);
  out << "exp^" << level_ << "(" << mantissa_ << ")";
  return out.str();
}

Tower exp_iter(std::size_t n, const Tower& x) {
  Tower t = x;
  for (std::size_t i = 0; i < n; ++i) t = t.exp();
  return t;
}

Tower log_iter(std::size_t n, const Tower& x) {
  Tower t = x;
  for (std::size_t i = 0; i < n; ++i) t = t.log();
  return t;
}

mpz_class log_iter(std::size_t n, const mpz_class& x) {
  mpz_class v = x;
  for (std::size_t i = 0; i < n; ++i) v = ceil_log(v);
  return v;
}

Tower omega_direct(std::size_t m, const Tower& x) {
  return exp_iter(m, log_iter(m, x).square());
}

Tower omega_recursive(std::size_t m, const Tower& x) {
  if (m == 0) return x.square();
  return omega_recursive(m - 1, x.log()).exp();
}

// ----------------------------------------------------------- P-bound check

bool p_bound_holds(const Tower& x, const Tower& y, std::size_t n) {
  if (x.is_exact() && y.is_exact()) {
    const mpz_class& xv = x.value();
    const mpz_class& yv = y.value();
    std::size_t by = bit_length(yv);
    if (by >= 1 && bit_length(xv) <= n * (by - 1)) return true;
    if (static_cast<double>(n) * static_cast<double>(by) <= static_cast<double>(y.ceiling())) {
      mpz_class rhs;
      mpz_pow_ui(rhs.get_mpz_t(), yv.get_mpz_t(), n);
      rhs += static_cast<unsigned long>(n);
      return xv <= rhs;
    }
  }
  // Log domain: y^n dominates the added n.
  return compare(x, y.pow(n)) <= 0;
}

BoundResult p_bound_check(const std::vector<BoundSample>& samples, const BoundOptions& opts) {
  BoundResult res;
  if (samples.size() < opts.min_samples) {
    res.message = "insufficient samples: " + std::to_string(samples.size()) + " < " +
                  std::to_string(opts.min_samples);
    return res;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    lo = std::min(lo, s.y.log2_approx());
    hi = std::max(hi, s.y.log2_approx());
  }
  if (!(hi - lo >= std::log2(opts.min_spread) - Tower::kTolerance)) {
    std::ostringstream m;
    m << "insufficient spread: y spans a factor of " << std::exp2(hi - lo) << ", need "
      << opts.min_spread;
    res.message = m.str();
    return res;
  }
  for (std::size_t n = 0; n <= opts.max_n; ++n) {
    bool all = std::all_of(samples.begin(), samples.end(),
                           [&](const BoundSample& s) { return p_bound_holds(s.x, s.y, n); });
    if (all) {
      res.ok = true;
      res.exponent = n;
      res.message = "x <= y^" + std::to_string(n) + " + " + std::to_string(n) + " on all " +
                    std::to_string(samples.size()) + " samples";
      return res;
    }
  }
  res.message = "FAIL: no exponent up to " + std::to_string(opts.max_n);
  return res;
}

bool in_log_cut(std::size_t n, const mpz_class& x, std::uint64_t ceiling) {
  if (bit_length(x) > ceiling) return false;
  return exp_iter(n, Tower(x, ceiling)).is_exact();
}

}  // namespace hcon
