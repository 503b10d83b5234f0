#pragma once

#include "decaf/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace decaf {

using VertexId = int;

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Rational w;
};

// Undirected graph with strictly positive edge weights. Validated on
// construction: no self-loops, no duplicate pairs, ids in range.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<int> degrees() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Vertex weights of the annotated problem; absent vertices are wildcards.
using Annotations = std::map<VertexId, Rational>;

// A nonnegative number or the wildcard that matches anything.
class StarValue {
 public:
  StarValue() = default;  // wildcard
  explicit StarValue(Rational value);

  static StarValue wildcard() { return StarValue(); }

  bool is_wildcard() const { return !value_.has_value(); }
  const Rational& value() const { return *value_; }

  friend bool operator==(const StarValue&, const StarValue&) = default;

 private:
  std::optional<Rational> value_;
};

bool star_equal(const StarValue& a, const StarValue& b);

// Symmetric matrix over nonnegative rationals with wildcards allowed only on
// the diagonal. Off-diagonal zero means "no edge". Rows are stored sparsely
// (sorted by column) so that large pre-kernel graphs stay cheap.
class AnnotatedMatrix {
 public:
  using RowEntry = std::pair<VertexId, Rational>;

  AnnotatedMatrix() = default;
  AnnotatedMatrix(int n, const std::vector<Edge>& edges, std::vector<StarValue> diagonal);

  int size() const { return static_cast<int>(diagonal_.size()); }

  StarValue entry(VertexId i, VertexId j) const;
  const StarValue& diagonal(VertexId i) const { return diagonal_[i]; }
  // Off-diagonal weight; zero for non-edges.
  const Rational& weight(VertexId i, VertexId j) const;
  bool adjacent(VertexId i, VertexId j) const;
  std::span<const RowEntry> row(VertexId i) const { return rows_[i]; }
  int degree(VertexId i) const { return static_cast<int>(rows_[i].size()); }

  // Off-diagonal nonzeros with u < v.
  std::vector<Edge> edges() const;

  // Matrix restricted to `keep` (in that order); row t of the result is
  // original row keep[t]. `diagonal_overrides` replaces diagonal entries by
  // original id.
  AnnotatedMatrix induced(const std::vector<VertexId>& keep,
                          const std::map<VertexId, StarValue>& diagonal_overrides = {}) const;
  AnnotatedMatrix with_diagonal(VertexId i, StarValue value) const;

  friend bool operator==(const AnnotatedMatrix&, const AnnotatedMatrix&) = default;

 private:
  std::vector<std::vector<RowEntry>> rows_;
  std::vector<StarValue> diagonal_;
};

AnnotatedMatrix from_graph(const WeightedGraph& g, const Annotations& annotations = {});

// Columnwise star-equality of rows u and v over the full row.
bool rows_star_equal(const AnnotatedMatrix& a, VertexId u, VertexId v);

struct BlockPartition {
  std::vector<std::vector<VertexId>> blocks;
  // Uniform internal edge weight; empty for singleton blocks.
  std::vector<std::optional<Rational>> block_weight;
  std::vector<int> block_of;

  int block_count() const { return static_cast<int>(blocks.size()); }
};

// Groups vertices into blocks of pairwise star-twins (adjacent vertices with
// star-equal rows). Blocks are ordered by smallest member, members ascending.
// Throws std::logic_error if the emitted grouping fails re-validation.
BlockPartition compute_blocks(const AnnotatedMatrix& a);

}  // namespace decaf
