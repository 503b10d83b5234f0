#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/instance.hpp"

#include <string>
#include <variant>
#include <vector>

namespace decaf {

enum class IsolatedPolicy { kIgnore, kConsumeK };
enum class KernelVariant { kNone, kCricca, kDecaf };

struct PreprocessResult {
  WeightedGraph graph;
  Annotations annotations;
  int k = 0;  // may be negative under kConsumeK; the caller answers NO then
  std::vector<VertexId> removed;     // original ids of dropped isolated vertices
  std::vector<VertexId> vertex_map;  // new id -> original id
};

// Drops isolated vertices. Annotated vertices with a positive weight are kept
// since they still need a clique. Under kConsumeK every dropped vertex costs
// one clique.
PreprocessResult preprocess(const WeightedGraph& g, int k, IsolatedPolicy policy,
                            const Annotations& annotations = {});

// True when the instance survives K-rule 1 (at most 2^k blocks).
bool krule1_passes(const BlockPartition& blocks, int k);

struct ReductionRecord {
  VertexId representative = 0;
  std::vector<VertexId> removed;
  Rational weight;
};

struct BlockReduction {
  AnnotatedMatrix matrix;
  ReductionRecord record;            // ids of the input matrix
  std::vector<VertexId> vertex_map;  // output id -> input id
};

// Keeps the smallest member of block D, annotates it with the block weight
// and deletes the rest of D. Throws std::invalid_argument for |D| < 2.
BlockReduction reduce_block(const AnnotatedMatrix& a, const std::vector<VertexId>& block);

struct KernelTrace {
  int original_size = 0;
  std::vector<ReductionRecord> removed;  // original ids, in application order
  std::vector<VertexId> isolated_removed;
  IsolatedPolicy isolated_policy = IsolatedPolicy::kIgnore;
  std::vector<VertexId> vertex_map;  // kernel id -> original id
  std::vector<bool> original_annotated;

  // Kernel ids of vertices that represent a reduced block.
  std::vector<VertexId> representatives() const;
};

struct KernelStats {
  int n_before = 0;
  int n_after = 0;
  int block_count = 0;
  int rule_applications = 0;
  int passes = 0;
};

struct KernelReduced {
  AnnotatedMatrix matrix;
  KernelTrace trace;
};

struct KernelNo {
  std::string reason;
};

struct KernelResult {
  std::variant<KernelReduced, KernelNo> outcome;
  KernelStats stats;

  bool is_no() const { return std::holds_alternative<KernelNo>(outcome); }
  const KernelReduced& reduced() const { return std::get<KernelReduced>(outcome); }
};

// Largest block size left untouched: 2^k for cricca, k for decaf.
long long block_size_threshold(KernelVariant variant, int k);

// K-rule 1, then reduction of every block above the variant threshold. The
// pass is repeated until no block exceeds the threshold. kNone returns the
// matrix unchanged. Throws std::invalid_argument for k outside [0, kMaxK].
KernelResult kernelize(const AnnotatedMatrix& a, int k, KernelVariant variant);

// Re-expresses a trace produced on a preprocessed graph in the ids of the
// graph given to preprocess().
KernelTrace attach_preprocess(KernelTrace trace, const PreprocessResult& pre, int original_size,
                              const Annotations& original_annotations);

// Copies every representative's signature to the twins it replaced, drops
// singleton cliques on unannotated vertices and, under kConsumeK, gives each
// isolated vertex its own clique. Throws std::invalid_argument on size mismatch.
Decomposition lift_solution(const Decomposition& kernel_solution, const KernelTrace& trace);

}  // namespace decaf
