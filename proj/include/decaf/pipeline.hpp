#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/instance.hpp"
#include "decaf/kernel.hpp"
#include "decaf/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace decaf {

// Which S-rules are active. Rule 0 is an ordering (push_front) rather than a
// filter; it only supplies the default ordering when none is given.
struct SRules {
  bool rule0 = true;
  bool rule1 = true;
  bool rule2 = true;
  friend bool operator==(const SRules&, const SRules&) = default;
};

// "none", or the active rule digits in increasing order ("0", "01", "12", ...).
std::optional<SRules> parse_srules(const std::string& text);
std::string to_string(const SRules& rules);

std::string to_string(KernelVariant v);
std::optional<KernelVariant> parse_kernel_variant(const std::string& text);
std::string to_string(IsolatedPolicy p);
std::optional<IsolatedPolicy> parse_isolated_policy(const std::string& text);

struct PipelineConfig {
  KernelVariant kernel = KernelVariant::kDecaf;
  SRules srules;
  // Empty: push_front when rule 0 is active, arbitrary otherwise.
  std::optional<Ordering> ordering;
  bool column_symmetry_breaking = false;
  LpMode lp_mode = LpMode::kRational;
  double timeout_seconds = 0;
  IsolatedPolicy isolated = IsolatedPolicy::kIgnore;

  Ordering effective_ordering() const;
  SolveConfig solve_config() const;
};

// Named configurations: "decaf", "cricca", "cricca-star".
std::optional<PipelineConfig> preset(const std::string& name);
std::vector<std::string> preset_names();

struct PipelineResult {
  SolveOutcome outcome = SolveOutcome::kNo;
  std::optional<Decomposition> solution;  // on the input graph, verified
  SolveStats search;
  KernelStats kernel;
  int k_effective = 0;   // k after isolated-vertex handling
  int n_kernel = 0;      // 0 when kernelization answered NO
  std::string no_reason; // set when NO was decided before the search
  double kernel_ms = 0;
};

// preprocess -> kernelize -> order -> clique_decomp -> lift -> verify.
// Throws std::logic_error if a lifted solution fails verification.
PipelineResult solve_instance(const WeightedGraph& g, const Annotations& annotations, int k,
                              const PipelineConfig& config);

}  // namespace decaf
