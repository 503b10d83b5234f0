#pragma once

#include "decaf/instance.hpp"
#include "decaf/rational.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace decaf {

// Clique-membership row of one vertex: bit q set iff the vertex is in clique q.
using Signature = std::uint64_t;

// Signature enumeration is exponential in k; larger k is refused.
inline constexpr int kMaxK = 26;

inline int popcount(Signature s) { return std::popcount(s); }
inline Signature full_mask(int k) { return k >= 64 ? ~Signature{0} : (Signature{1} << k) - 1; }

// Renders bit 0 first, e.g. 0b011 with k=3 -> "110".
std::string signature_string(Signature s, int k);

// Nonnegative clique weights (the diagonal of W).
using WeightVector = std::vector<Rational>;

struct Clique {
  std::vector<VertexId> members;
  Rational weight;

  friend bool operator==(const Clique&, const Clique&) = default;
};

// Binary membership matrix B (one Signature per vertex) plus clique weights.
struct Decomposition {
  int k = 0;
  std::vector<Signature> rows;
  WeightVector gamma;

  int vertex_count() const { return static_cast<int>(rows.size()); }
  // Columns with at least one member and positive weight, in column order.
  std::vector<Clique> cliques() const;
  // Inverse of cliques(): one column per clique, in the given order.
  static Decomposition from_cliques(int n, const std::vector<Clique>& cliques);
};

}  // namespace decaf
