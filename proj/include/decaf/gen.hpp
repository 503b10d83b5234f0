#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/instance.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace decaf {

struct GenSpec {
  int n = 10;
  int k_true = 2;
  int size_min = 2;
  int size_max = 4;
  int weight_min = 1;
  int weight_max = 3;
  double overlap_bias = 0;  // in [0, 1]
  std::uint64_t seed = 1;
  bool prune_isolated = false;
};

// Throws std::invalid_argument describing the first violated constraint.
void validate(const GenSpec& spec);

struct PlantedInstance {
  WeightedGraph graph;
  std::vector<Clique> planted;
  int k_true = 0;
  // Vertices covered by no planted clique (ids before pruning).
  std::vector<VertexId> isolated;
};

// Portable random source: std::mt19937_64 (fully specified by the standard)
// with integer and real mappings defined here rather than by the library's
// distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniform double in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer over the combined inputs.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

// Planted instance: each clique draws its size and integer weight uniformly;
// members are sampled without replacement with probability proportional to
// 1 + overlap_bias * (times the vertex was already used). Edge weights are the
// sums of the weights of the cliques covering them.
PlantedInstance generate(const GenSpec& spec);

struct CorpusEntry {
  std::string id;
  GenSpec spec;
  PlantedInstance instance;
  int k_in = 0;
};

// For each k in k_values and i < instances_per_k, generates one instance with
// k_true = k and seed derive_seed(base.seed, k, i), paired with every
// k_in = ceil(multiplier * k). Multipliers must be positive.
std::vector<CorpusEntry> corpus(const GenSpec& base, const std::vector<int>& k_values,
                                int instances_per_k, const std::vector<Rational>& kin_multipliers);

int ceil_multiple(const Rational& multiplier, int k);

}  // namespace decaf
