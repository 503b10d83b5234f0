#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/instance.hpp"

#include <optional>
#include <span>
#include <vector>

namespace decaf {

enum class LpMode { kRational, kFloat };

// Tolerance used by the floating-point engine and by float-mode comparisons.
inline constexpr double kFloatEpsilon = 1e-9;

// sum_{q in mask} gamma_q = rhs
struct LpConstraint {
  Signature mask = 0;
  Rational rhs;
};

struct LpProblem {
  int k = 0;
  std::vector<LpConstraint> constraints;
};

// Finds gamma >= 0 satisfying every equality, or nullopt when none exists.
// Rational mode runs an exact phase-1 simplex (Bland's rule); float mode runs
// the same pivoting in doubles with kFloatEpsilon and returns the exact binary
// value of each double. Throws std::invalid_argument when a mask uses bits
// beyond k.
std::optional<WeightVector> solve_feasibility(const LpProblem& problem,
                                              LpMode mode = LpMode::kRational);

// Builds the clique-weight LP for the assigned rows (nullopt = unassigned):
// one constraint per pair of assigned rows i <= j whose entry A_ij is not a
// wildcard.
LpProblem clique_weight_problem(const AnnotatedMatrix& a,
                                std::span<const std::optional<Signature>> rows, int k);

std::optional<WeightVector> infer_clique_weights(const AnnotatedMatrix& a,
                                                 std::span<const std::optional<Signature>> rows,
                                                 int k, LpMode mode = LpMode::kRational);

}  // namespace decaf
