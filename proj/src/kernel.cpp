#include "decaf/kernel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace decaf {

PreprocessResult preprocess(const WeightedGraph& g, int k, IsolatedPolicy policy,
                            const Annotations& annotations) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  std::vector<int> deg = g.degrees();
  PreprocessResult out;
  std::vector<int> index(g.vertex_count(), -1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto ann = annotations.find(v);
    bool needs_clique = ann != annotations.end() && ann->second > 0;
    if (deg[v] == 0 && !needs_clique) {
      out.removed.push_back(v);
    } else {
      index[v] = static_cast<int>(out.vertex_map.size());
      out.vertex_map.push_back(v);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges()) edges.push_back({index[e.u], index[e.v], e.w});
  out.graph = WeightedGraph(static_cast<int>(out.vertex_map.size()), std::move(edges));
  for (const auto& [v, w] : annotations)
    if (index[v] >= 0) out.annotations.emplace(index[v], w);
  out.k = policy == IsolatedPolicy::kConsumeK ? k - static_cast<int>(out.removed.size()) : k;
  return out;
}

bool krule1_passes(const BlockPartition& blocks, int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (k >= 62) return true;
  return blocks.block_count() <= (1LL << k);
}

BlockReduction reduce_block(const AnnotatedMatrix& a, const std::vector<VertexId>& block) {
  if (block.size() < 2) throw std::invalid_argument("cannot reduce a block with fewer than 2 vertices");
  std::vector<VertexId> members = block;
  std::sort(members.begin(), members.end());
  BlockReduction out;
  out.record.representative = members.front();
  out.record.weight = a.weight(members[0], members[1]);
  out.record.removed.assign(members.begin() + 1, members.end());

  std::vector<bool> drop(a.size(), false);
  for (VertexId v : out.record.removed) drop[v] = true;
  for (VertexId v = 0; v < a.size(); ++v)
    if (!drop[v]) out.vertex_map.push_back(v);
  out.matrix = a.induced(out.vertex_map, {{out.record.representative, StarValue(out.record.weight)}});
  return out;
}

std::vector<VertexId> KernelTrace::representatives() const {
  std::vector<int> index(original_size, -1);
  for (std::size_t t = 0; t < vertex_map.size(); ++t) index[vertex_map[t]] = static_cast<int>(t);
  std::vector<VertexId> reps;
  for (const ReductionRecord& r : removed)
    if (index[r.representative] >= 0) reps.push_back(index[r.representative]);
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

long long block_size_threshold(KernelVariant variant, int k) {
  switch (variant) {
    case KernelVariant::kCricca:
      return 1LL << k;
    case KernelVariant::kDecaf:
      return k;
    case KernelVariant::kNone:
      break;
  }
  return -1;
}

KernelResult kernelize(const AnnotatedMatrix& a, int k, KernelVariant variant) {
  if (k < 0 || k > kMaxK)
    throw std::invalid_argument("k=" + std::to_string(k) + " outside [0," + std::to_string(kMaxK) + "]");
  KernelResult result;
  result.stats.n_before = a.size();

  KernelTrace trace;
  trace.original_size = a.size();
  trace.vertex_map.resize(a.size());
  std::iota(trace.vertex_map.begin(), trace.vertex_map.end(), 0);
  trace.original_annotated.resize(a.size());
  for (VertexId v = 0; v < a.size(); ++v) trace.original_annotated[v] = !a.diagonal(v).is_wildcard();

  if (variant == KernelVariant::kNone) {
    result.stats.n_after = a.size();
    result.stats.block_count = compute_blocks(a).block_count();
    result.outcome = KernelReduced{a, std::move(trace)};
    return result;
  }

  AnnotatedMatrix current = a;
  const long long threshold = block_size_threshold(variant, k);
  for (;;) {
    ++result.stats.passes;
    BlockPartition blocks = compute_blocks(current);
    result.stats.block_count = blocks.block_count();
    if (!krule1_passes(blocks, k)) {
      result.stats.n_after = 0;
      result.outcome = KernelNo{std::to_string(blocks.block_count()) + " blocks exceed 2^" +
                                std::to_string(k)};
      return result;
    }
    std::vector<int> big;
    for (int b = 0; b < blocks.block_count(); ++b)
      if (blocks.blocks[b].size() >= 2 && static_cast<long long>(blocks.blocks[b].size()) > threshold)
        big.push_back(b);
    if (big.empty()) break;
    std::stable_sort(big.begin(), big.end(), [&](int x, int y) {
      return blocks.blocks[x].size() > blocks.blocks[y].size();
    });

    std::vector<bool> drop(current.size(), false);
    std::map<VertexId, StarValue> overrides;
    for (int b : big) {
      const auto& members = blocks.blocks[b];
      ReductionRecord rec;
      rec.representative = trace.vertex_map[members.front()];
      rec.weight = *blocks.block_weight[b];
      for (std::size_t t = 1; t < members.size(); ++t) {
        drop[members[t]] = true;
        rec.removed.push_back(trace.vertex_map[members[t]]);
      }
      overrides.emplace(members.front(), StarValue(rec.weight));
      trace.removed.push_back(std::move(rec));
      ++result.stats.rule_applications;
    }
    std::vector<VertexId> keep;
    std::vector<VertexId> next_map;
    for (VertexId v = 0; v < current.size(); ++v)
      if (!drop[v]) {
        keep.push_back(v);
        next_map.push_back(trace.vertex_map[v]);
      }
    current = current.induced(keep, overrides);
    trace.vertex_map = std::move(next_map);
  }

  result.stats.n_after = current.size();
  result.outcome = KernelReduced{std::move(current), std::move(trace)};
  return result;
}

KernelTrace attach_preprocess(KernelTrace trace, const PreprocessResult& pre, int original_size,
                              const Annotations& original_annotations) {
  auto up = [&](VertexId v) { return pre.vertex_map.at(v); };
  for (ReductionRecord& r : trace.removed) {
    r.representative = up(r.representative);
    for (VertexId& v : r.removed) v = up(v);
  }
  for (VertexId& v : trace.vertex_map) v = up(v);
  for (VertexId v : pre.removed) trace.isolated_removed.push_back(v);
  trace.original_size = original_size;
  trace.original_annotated.assign(original_size, false);
  for (const auto& [v, w] : original_annotations) trace.original_annotated.at(v) = true;
  return trace;
}

Decomposition lift_solution(const Decomposition& kernel_solution, const KernelTrace& trace) {
  if (kernel_solution.vertex_count() != static_cast<int>(trace.vertex_map.size()))
    throw std::invalid_argument("solution has " + std::to_string(kernel_solution.vertex_count()) +
                                " rows but the kernel has " + std::to_string(trace.vertex_map.size()));
  if (static_cast<int>(kernel_solution.gamma.size()) != kernel_solution.k)
    throw std::invalid_argument("weight vector length does not match k");

  Decomposition out;
  out.k = kernel_solution.k;
  out.gamma = kernel_solution.gamma;
  out.rows.assign(trace.original_size, 0);
  for (std::size_t t = 0; t < trace.vertex_map.size(); ++t)
    out.rows.at(trace.vertex_map[t]) = kernel_solution.rows[t];
  for (auto it = trace.removed.rbegin(); it != trace.removed.rend(); ++it)
    for (VertexId v : it->removed) out.rows.at(v) = out.rows.at(it->representative);

  for (int q = 0; q < out.k; ++q) {
    int count = 0;
    VertexId last = -1;
    for (VertexId v = 0; v < trace.original_size; ++v)
      if (out.rows[v] >> q & 1) {
        ++count;
        last = v;
      }
    bool annotated = last >= 0 && last < static_cast<int>(trace.original_annotated.size()) &&
                     trace.original_annotated[last];
    if (count == 1 && !annotated) out.rows[last] &= ~(Signature{1} << q);
  }

  if (trace.isolated_policy == IsolatedPolicy::kConsumeK) {
    for (VertexId v : trace.isolated_removed) {
      if (out.k >= 64) throw std::invalid_argument("too many cliques after lifting");
      out.rows.at(v) |= Signature{1} << out.k;
      out.gamma.emplace_back(1);
      ++out.k;
    }
  }
  return out;
}

}  // namespace decaf
