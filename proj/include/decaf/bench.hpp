#pragma once

#include "decaf/io.hpp"
#include "decaf/oracle.hpp"
#include "decaf/pipeline.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace decaf {

struct BenchConfig {
  std::string name;
  PipelineConfig pipeline;
};

// A preset name ("decaf", "cricca", "cricca-star") or
// "custom:<kernel>:<srules>:<ordering>:<sym|nosym>".
std::optional<BenchConfig> parse_bench_config(const std::string& text);

struct BenchInstance {
  std::string id;
  WeightedGraph graph;
  Annotations annotations;
  int k_true = -1;
  int k_in = 0;
};

// Reads every `<id>.ewcd` in dir (sorted by name). A sidecar `<id>.truth`
// provides k_true and the k_in values; without one the instance is skipped
// unless `default_k` is set.
std::vector<BenchInstance> load_corpus(const std::string& dir, std::optional<int> default_k = {});
// Writes `<id>.ewcd` and `<id>.truth` for each distinct instance id; the
// k_in values of entries sharing an id are merged into one sidecar.
void write_corpus(const std::string& dir, const std::vector<CorpusEntry>& entries);

struct BenchOptions {
  double timeout_seconds = 60;
  int jobs = 1;
  bool oracle_labels = true;
  OracleLimits oracle_limits;
  // Called from the aggregating thread after each finished record.
  std::function<void(const BenchRecord&)> on_record;
};

// One record per (instance, config), in instance-major order. Expected
// outcomes come from the oracle within its limits, otherwise "yes" when
// k_in >= k_true and "unlabeled" else.
std::vector<BenchRecord> run_bench(const std::vector<BenchInstance>& instances,
                                   const std::vector<BenchConfig>& configs,
                                   const BenchOptions& options);

struct Quantiles {
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  int count = 0;
};
// Linear interpolation between order statistics; nullopt for no data.
std::optional<Quantiles> quantiles(std::vector<double> values);

// Per-k_true tables: outcome counts per config, and median/quartile ratios of
// wall time, LP runs and kernel size for every config pair, over instances
// both configs finished.
std::string summarize(const std::vector<BenchRecord>& records);

}  // namespace decaf
