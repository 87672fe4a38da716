// Goedel coding with size-measured operations, and tower arithmetic for
// the iterated exponential and logarithm.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcon/budget.hpp"
#include "hcon/skolem.hpp"
#include "hcon/syntax.hpp"

namespace hcon {

class Evaluation;
class TermSet;

std::size_t bit_length(const mpz_class& v);

struct Code {
  mpz_class value;
  std::size_t bitlen = 0;

  Code() = default;
  explicit Code(mpz_class v) : value(std::move(v)), bitlen(bit_length(value)) {}
  friend bool operator==(const Code& a, const Code& b) { return a.value == b.value; }
  friend bool operator<(const Code& a, const Code& b) { return a.value < b.value; }
};

/// Sequence codes: the bit string 1 e(n1) e(n2) ... read as a binary number,
/// where e(v) is the Elias gamma code of bit_length(v) followed by the bits of
/// v below its leading one.  Elements must be positive.
Code code_sequence(const std::vector<mpz_class>& elements);
std::vector<mpz_class> decode_sequence(const Code& c);
/// Sorted, duplicate-free sequence of the element codes.
Code code_set_of(std::vector<mpz_class> elements);
/// Concatenation of two sequence codes.
Code concat(const Code& a, const Code& b);

/// Symbol ids: 1 variable tag, 2..7 connectives and quantifiers (not, and,
/// or, implies, forall, exists), 8 equality, then the signature's functions
/// and predicates, then the Skolem symbols in registration order.
class CodingScheme {
 public:
  enum Tag : unsigned { kVar = 1, kNot, kAnd, kOr, kImplies, kForall, kExists, kEq };

  CodingScheme(const Signature& sig, const SkolemRegistry* reg = nullptr);

  unsigned id(const std::string& symbol) const;
  const std::map<std::string, unsigned>& table() const { return ids_; }

  Code code_term(const Term& t) const;
  Code code_formula(const Formula& f) const;
  Code code_set(const TermSet& lambda) const;
  /// The set of pairs <atom, bit + 1>.
  Code code_evaluation(const Evaluation& p) const;

 private:
  mpz_class term_value(const Term& t) const;
  mpz_class formula_value(const Formula& f) const;
  std::map<std::string, unsigned> ids_;
};

/// An iterated-exponential quantity.  Exact when its bit length stays within
/// the ceiling; otherwise kept as exp^level(mantissa) with the mantissa in
/// (10, 1024] (level 0 means the mantissa is the value itself, at most 1024).
class Tower {
 public:
  static constexpr double kTolerance = 1e-9;

  Tower() : Tower(mpz_class(0)) {}
  explicit Tower(mpz_class v, std::uint64_t ceiling = Budget{}.bit_ceiling);
  static Tower surrogate(int level, double mantissa, std::uint64_t ceiling = Budget{}.bit_ceiling);

  bool is_exact() const { return exact_.has_value(); }
  const mpz_class& value() const;
  int level() const { return level_; }
  double mantissa() const { return mantissa_; }
  std::uint64_t ceiling() const { return ceiling_; }
  /// log2 of the value as a double (infinite beyond double range).
  double log2_approx() const;

  Tower exp() const;
  /// Ceiling logarithm: least y with x <= 2^y.
  Tower log() const;
  Tower square() const;
  Tower pow(std::uint64_t n) const;

  /// -1, 0, 1; surrogate mantissas compare with relative tolerance.
  friend int compare(const Tower& a, const Tower& b);
  friend bool operator<=(const Tower& a, const Tower& b) { return compare(a, b) <= 0; }
  friend bool operator==(const Tower& a, const Tower& b) { return compare(a, b) == 0; }

  std::string str() const;

 private:
  void set_surrogate_from_exact();
  std::optional<mpz_class> exact_;
  int level_ = 0;
  double mantissa_ = 0;
  std::uint64_t ceiling_;
};

Tower exp_iter(std::size_t n, const Tower& x);
Tower log_iter(std::size_t n, const Tower& x);
mpz_class log_iter(std::size_t n, const mpz_class& x);

/// exp^m((log^m x)^2)
Tower omega_direct(std::size_t m, const Tower& x);
/// omega_0(x) = x^2, omega_{n+1}(x) = exp(omega_n(log x))
Tower omega_recursive(std::size_t m, const Tower& x);

struct BoundSample {
  Tower x;
  Tower y;
};

struct BoundOptions {
  std::size_t max_n = 64;
  std::size_t min_samples = 8;
  /// Required ratio between the largest and smallest y.
  double min_spread = 100;
};

struct BoundResult {
  bool ok = false;
  std::size_t exponent = 0;
  std::string message;
};

/// Least n <= max_n with x <= y^n + n for every sample.
BoundResult p_bound_check(const std::vector<BoundSample>& samples, const BoundOptions& opts = {});
bool p_bound_holds(const Tower& x, const Tower& y, std::size_t n);

/// exp^n(x) is representable within the ceiling.
bool in_log_cut(std::size_t n, const mpz_class& x, std::uint64_t ceiling);

}  // namespace hcon
