#include "decaf/instance.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace decaf {
namespace {

const Rational kZero(0);

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t cell_hash(VertexId column, int value_id) {
  return mix64((static_cast<std::uint64_t>(column) << 32) ^ static_cast<std::uint32_t>(value_id));
}

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw InstanceError("negative vertex count");
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw InstanceError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") has a vertex id outside [0," + std::to_string(n) + ")");
    if (e.u == e.v) throw InstanceError("self-loop at vertex " + std::to_string(e.u));
    if (e.w <= 0)
      throw InstanceError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") has non-positive weight " + format_rational(e.w));
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      throw InstanceError("duplicate edge (" + std::to_string(key.first) + "," +
                          std::to_string(key.second) + ")");
  }
}

std::vector<int> WeightedGraph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

StarValue::StarValue(Rational value) : value_(std::move(value)) {
  if (*value_ < 0) throw InstanceError("negative value " + format_rational(*value_));
}

bool star_equal(const StarValue& a, const StarValue& b) {
  if (a.is_wildcard() || b.is_wildcard()) return true;
  return a.value() == b.value();
}

AnnotatedMatrix::AnnotatedMatrix(int n, const std::vector<Edge>& edges,
                                 std::vector<StarValue> diagonal)
    : rows_(n), diagonal_(std::move(diagonal)) {
  if (static_cast<int>(diagonal_.size()) != n)
    throw InstanceError("diagonal length does not match dimension");
  for (const Edge& e : edges) {
    if (e.u == e.v) throw InstanceError("off-diagonal entry on the diagonal");
    if (e.w < 0) throw InstanceError("negative matrix entry");
    if (e.w == 0) continue;
    rows_[e.u].emplace_back(e.v, e.w);
    rows_[e.v].emplace_back(e.u, e.w);
  }
  for (auto& row : rows_) {
    std::sort(row.begin(), row.end(),
              [](const RowEntry& x, const RowEntry& y) { return x.first < y.first; });
    for (std::size_t t = 1; t < row.size(); ++t)
      if (row[t].first == row[t - 1].first) throw InstanceError("duplicate matrix entry");
  }
}

const Rational& AnnotatedMatrix::weight(VertexId i, VertexId j) const {
  const auto& row = rows_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const RowEntry& x, VertexId col) { return x.first < col; });
  if (it != row.end() && it->first == j) return it->second;
  return kZero;
}

bool AnnotatedMatrix::adjacent(VertexId i, VertexId j) const {
  return i != j && weight(i, j) != 0;
}

StarValue AnnotatedMatrix::entry(VertexId i, VertexId j) const {
  if (i == j) return diagonal_[i];
  return StarValue(weight(i, j));
}

std::vector<Edge> AnnotatedMatrix::edges() const {
  std::vector<Edge> out;
  for (VertexId u = 0; u < size(); ++u)
    for (const auto& [v, w] : rows_[u])
      if (u < v) out.push_back({u, v, w});
  return out;
}

AnnotatedMatrix AnnotatedMatrix::induced(const std::vector<VertexId>& keep,
                                         const std::map<VertexId, StarValue>& diagonal_overrides) const {
  std::vector<int> index(size(), -1);
  for (std::size_t t = 0; t < keep.size(); ++t) index[keep[t]] = static_cast<int>(t);
  std::vector<Edge> edges;
  std::vector<StarValue> diag;
  diag.reserve(keep.size());
  for (std::size_t t = 0; t < keep.size(); ++t) {
    auto over = diagonal_overrides.find(keep[t]);
    diag.push_back(over != diagonal_overrides.end() ? over->second : diagonal_[keep[t]]);
    for (const auto& [v, w] : rows_[keep[t]])
      if (index[v] > static_cast<int>(t)) edges.push_back({static_cast<int>(t), index[v], w});
  }
  return AnnotatedMatrix(static_cast<int>(keep.size()), edges, std::move(diag));
}

AnnotatedMatrix AnnotatedMatrix::with_diagonal(VertexId i, StarValue value) const {
  AnnotatedMatrix copy = *this;
  copy.diagonal_[i] = std::move(value);
  return copy;
}

AnnotatedMatrix from_graph(const WeightedGraph& g, const Annotations& annotations) {
  std::vector<StarValue> diag(g.vertex_count());
  for (const auto& [v, w] : annotations) {
    if (v < 0 || v >= g.vertex_count())
      throw InstanceError("annotation on unknown vertex " + std::to_string(v));
    diag[v] = StarValue(w);
  }
  return AnnotatedMatrix(g.vertex_count(), g.edges(), std::move(diag));
}

bool rows_star_equal(const AnnotatedMatrix& a, VertexId u, VertexId v) {
  if (u == v) return true;
  // Columns u and v can involve a diagonal wildcard; every other column is a
  // plain off-diagonal comparison, done by merging the sparse rows.
  if (!star_equal(a.diagonal(u), StarValue(a.weight(v, u)))) return false;
  if (!star_equal(StarValue(a.weight(u, v)), a.diagonal(v))) return false;
  auto ru = a.row(u);
  auto rv = a.row(v);
  std::size_t x = 0, y = 0;
  while (x < ru.size() || y < rv.size()) {
    VertexId cu = x < ru.size() ? ru[x].first : a.size();
    VertexId cv = y < rv.size() ? rv[y].first : a.size();
    VertexId col = std::min(cu, cv);
    bool skip = col == u || col == v;
    if (cu == cv) {
      if (!skip && ru[x].second != rv[y].second) return false;
      ++x;
      ++y;
    } else if (cu < cv) {
      if (!skip) return false;
      ++x;
    } else {
      if (!skip) return false;
      ++y;
    }
  }
  return true;
}

BlockPartition compute_blocks(const AnnotatedMatrix& a) {
  const int n = a.size();

  // Intern every off-diagonal value so rows become integer sequences.
  std::map<Rational, int> ids;
  for (VertexId u = 0; u < n; ++u)
    for (const auto& [v, w] : a.row(u)) ids.emplace(w, 0);
  int next = 1;
  for (auto& [value, id] : ids) id = next++;

  // Twins u,v with internal weight w have identical rows once each diagonal is
  // replaced by w. Candidate keys are (w, hash of that substituted row) for each
  // incident weight w that the diagonal admits.
  struct Key {
    int weight_id;
    std::uint64_t hash;
    VertexId vertex;
  };
  std::vector<Key> keys;
  for (VertexId u = 0; u < n; ++u) {
    std::uint64_t base = 0;
    std::vector<int> incident;
    for (const auto& [v, w] : a.row(u)) {
      int id = ids.at(w);
      base += cell_hash(v, id);
      incident.push_back(id);
    }
    std::sort(incident.begin(), incident.end());
    incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
    for (int id : incident) {
      const StarValue& d = a.diagonal(u);
      if (!d.is_wildcard() && ids.count(d.value()) && ids.at(d.value()) != id) continue;
      if (!d.is_wildcard() && !ids.count(d.value())) continue;
      keys.push_back({id, base + cell_hash(u, id), u});
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
    if (x.weight_id != y.weight_id) return x.weight_id < y.weight_id;
    if (x.hash != y.hash) return x.hash < y.hash;
    return x.vertex < y.vertex;
  });

  std::vector<int> group(n, -1);
  std::vector<std::vector<VertexId>> groups;
  for (std::size_t lo = 0; lo < keys.size();) {
    std::size_t hi = lo;
    while (hi < keys.size() && keys[hi].weight_id == keys[lo].weight_id &&
           keys[hi].hash == keys[lo].hash)
      ++hi;
    // Split the hash bucket into exact classes.
    std::vector<std::vector<VertexId>> classes;
    for (std::size_t t = lo; t < hi; ++t) {
      VertexId u = keys[t].vertex;
      bool placed = false;
      for (auto& cls : classes) {
        VertexId leader = cls.front();
        if (a.adjacent(leader, u) && rows_star_equal(a, leader, u)) {
          cls.push_back(u);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({u});
    }
    for (auto& cls : classes) {
      if (cls.size() < 2) continue;
      for (VertexId u : cls) {
        if (group[u] != -1)
          throw std::logic_error("vertex " + std::to_string(u) +
                                 " qualifies for two twin blocks");
        group[u] = static_cast<int>(groups.size());
      }
      groups.push_back(std::move(cls));
    }
    lo = hi;
  }

  BlockPartition out;
  out.block_of.assign(n, -1);
  for (VertexId u = 0; u < n; ++u) {
    if (out.block_of[u] != -1) continue;
    std::vector<VertexId> members;
    if (group[u] == -1) {
      members = {u};
    } else {
      members = groups[group[u]];
      std::sort(members.begin(), members.end());
    }
    int index = out.block_count();
    for (VertexId v : members) out.block_of[v] = index;
    if (members.size() >= 2)
      out.block_weight.emplace_back(a.weight(members[0], members[1]));
    else
      out.block_weight.emplace_back(std::nullopt);
    out.blocks.push_back(std::move(members));
  }

  // Re-validate: every intra-block pair must be a twin pair with the block weight.
  for (int b = 0; b < out.block_count(); ++b) {
    const auto& members = out.blocks[b];
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        VertexId u = members[x], v = members[y];
        if (!a.adjacent(u, v) || !rows_star_equal(a, u, v) ||
            a.weight(u, v) != *out.block_weight[b])
          throw std::logic_error("block validation failed for pair (" + std::to_string(u) +
                                 "," + std::to_string(v) + ")");
      }
  }
  return out;
}

}  // namespace decaf
