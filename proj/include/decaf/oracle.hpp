#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/instance.hpp"
#include "decaf/lp.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace decaf {

struct Violation {
  VertexId i = 0;
  VertexId j = 0;
  Rational lhs;    // sum of shared clique weights
  StarValue rhs;   // A_ij
};

struct VerifyReport {
  bool ok = true;
  std::optional<Violation> first_violation;
};

// Checks A =* B W B^T entrywise. Exact in rational mode; float mode compares
// with a relative tolerance of kFloatEpsilon. Throws std::invalid_argument on a
// dimension mismatch.
VerifyReport verify(const AnnotatedMatrix& a, const Decomposition& d,
                    LpMode mode = LpMode::kRational);

std::string describe(const Violation& v);

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  int max_n = 10;
  int max_k = 3;
};

// Exhaustive search over all row assignments with canonical column order
// (columns first used in increasing order). Partial assignments are pruned
// only by LP infeasibility over every assigned row. Throws OracleLimitError
// beyond the limits.
std::optional<Decomposition> brute_force_decide(const AnnotatedMatrix& a, int k,
                                                const OracleLimits& limits = {});

// Smallest k <= k_cap with a decomposition; nullopt means "more than k_cap".
std::optional<int> minimal_k(const AnnotatedMatrix& a, int k_cap, const OracleLimits& limits = {});

}  // namespace decaf
