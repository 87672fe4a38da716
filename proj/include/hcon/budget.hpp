// Desk-scale resource caps shared by the engines.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hcon {

struct Budget {
  std::uint64_t max_substitutions = 20'000'000;  // |Lambda|^#vars per formula
  std::uint64_t max_atoms = 2'000'000;
  std::uint64_t max_terms = 100'000;
  std::uint64_t max_clauses = 50'000'000;
  std::uint64_t bit_ceiling = std::uint64_t{1} << 24;
};

/// Thrown instead of silently truncating a search.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hcon
