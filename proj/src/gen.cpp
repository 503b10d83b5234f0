#include "decaf/gen.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace decaf {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(next());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range) - 1;
  std::uint64_t x;
  do x = next();
  while (x > limit);
  return lo + static_cast<std::int64_t>(x % range);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ b);
}

void validate(const GenSpec& s) {
  auto fail = [](const std::string& m) { throw std::invalid_argument("invalid spec: " + m); };
  if (s.k_true < 1) fail("k_true must be at least 1");
  if (s.size_min < 2) fail("size_min must be at least 2");
  if (s.size_max < s.size_min) fail("size_max < size_min");
  if (s.weight_min < 1) fail("weights must be positive");
  if (s.weight_max < s.weight_min) fail("weight_max < weight_min");
  if (!(s.overlap_bias >= 0 && s.overlap_bias <= 1)) fail("overlap_bias outside [0,1]");
  if (s.n < s.size_max) fail("n=" + std::to_string(s.n) + " smaller than size_max");
}

PlantedInstance generate(const GenSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  const int n = spec.n;
  std::vector<int> uses(n, 0);
  PlantedInstance out;
  out.k_true = spec.k_true;

  for (int c = 0; c < spec.k_true; ++c) {
    const int size = static_cast<int>(rng.uniform_int(spec.size_min, spec.size_max));
    Clique clique;
    clique.weight = Rational(rng.uniform_int(spec.weight_min, spec.weight_max));
    std::vector<bool> taken(n, false);
    for (int t = 0; t < size; ++t) {
      double total = 0;
      for (int v = 0; v < n; ++v)
        if (!taken[v]) total += 1 + spec.overlap_bias * uses[v];
      double r = rng.uniform01() * total;
      int pick = -1;
      for (int v = 0; v < n; ++v) {
        if (taken[v]) continue;
        pick = v;
        r -= 1 + spec.overlap_bias * uses[v];
        if (r < 0) break;
      }
      taken[pick] = true;
      clique.members.push_back(pick);
    }
    for (VertexId v : clique.members) ++uses[v];
    std::sort(clique.members.begin(), clique.members.end());
    out.planted.push_back(std::move(clique));
  }

  std::vector<VertexId> relabel(n);
  int kept = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (uses[v] == 0) out.isolated.push_back(v);
    relabel[v] = (uses[v] == 0 && spec.prune_isolated) ? -1 : kept++;
  }
  if (spec.prune_isolated)
    for (Clique& c : out.planted)
      for (VertexId& v : c.members) v = relabel[v];

  std::map<std::pair<VertexId, VertexId>, Rational> weights;
  for (const Clique& c : out.planted)
    for (std::size_t x = 0; x < c.members.size(); ++x)
      for (std::size_t y = x + 1; y < c.members.size(); ++y)
        weights[{c.members[x], c.members[y]}] += c.weight;
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (auto& [uv, w] : weights) edges.push_back({uv.first, uv.second, w});
  out.graph = WeightedGraph(kept, std::move(edges));
  return out;
}

int ceil_multiple(const Rational& multiplier, int k) {
  Rational x = multiplier * k;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return static_cast<int>(q.get_si());
}

std::vector<CorpusEntry> corpus(const GenSpec& base, const std::vector<int>& k_values,
                                int instances_per_k, const std::vector<Rational>& kin_multipliers) {
  for (const Rational& m : kin_multipliers)
    if (m <= 0) throw std::invalid_argument("k_in multipliers must be positive");
  std::vector<CorpusEntry> out;
  for (int k : k_values)
    for (int i = 0; i < instances_per_k; ++i) {
      GenSpec spec = base;
      spec.k_true = k;
      spec.seed = derive_seed(base.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i));
      PlantedInstance inst = generate(spec);
      for (const Rational& m : kin_multipliers) {
        CorpusEntry e;
        e.id = "k" + std::to_string(k) + "_i" + std::to_string(i);
        e.spec = spec;
        e.instance = inst;
        e.k_in = ceil_multiple(m, k);
        out.push_back(std::move(e));
      }
    }
  return out;
}

}  // namespace decaf
