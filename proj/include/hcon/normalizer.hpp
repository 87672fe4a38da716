// Negation normal form and rectification.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hcon/syntax.hpp"

namespace hcon {

enum class NnfRule { ImpliesElim, DoubleNeg, NegOr, NegAnd, NegForall, NegExists };

struct NnfStep {
  NnfRule rule;
  Formula after;
};

/// Leftmost-outermost single rewrite; nullopt when `f` is in NNF.
std::optional<NnfStep> nnf_step(const Formula& f);

/// Rewrites to NNF with the six rules, outermost-first to fixpoint.  When
/// `trace` is given every intermediate formula is appended to it.
Formula nnf(const Formula& f, std::vector<NnfStep>* trace = nullptr);

/// Termination measure: strictly decreases on every outermost step.
std::size_t nnf_rank(const Formula& f);

bool is_nnf(const Formula& f);
bool is_rectified(const Formula& f);

/// Renames bound variables to x1, x2, ... in pre-order, skipping names that
/// occur free in `f`.  Free variables are untouched.
Formula rectify(const Formula& f);

Formula rnnf(const Formula& f);

}  // namespace hcon
