#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/gen.hpp"
#include "decaf/instance.hpp"
#include "decaf/kernel.hpp"
#include "decaf/search.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace decaf {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct InstanceFile {
  WeightedGraph graph;
  Annotations annotations;
};

// `ewcd 1 <n> <m>`, then `e <u> <v> <w>` and `a <v> <w>` lines; `#` starts a
// comment. Weights are integers, decimals or fractions, parsed exactly.
InstanceFile parse_instance(std::string_view text);
std::string write_instance(const WeightedGraph& g, const Annotations& annotations = {});

struct SolutionFile {
  SolveOutcome outcome = SolveOutcome::kNo;
  std::vector<Clique> cliques;
  std::vector<std::pair<std::string, std::string>> stats;
  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

// Cliques listed for a decomposition: positive weight and at least two members
// (one member when `annotated` output is requested), sorted by descending
// size, then ascending smallest member.
std::vector<Clique> solution_cliques(const Decomposition& d, bool annotated = false);
void sort_cliques(std::vector<Clique>& cliques);

std::string write_solution(const SolutionFile& s);
SolutionFile parse_solution(std::string_view text);

// Stats block for a solve: lp_runs, signatures_tested, backtracks, wall_ms.
std::vector<std::pair<std::string, std::string>> stats_lines(const SolveStats& stats);

// Ground-truth sidecar of a planted instance:
// `truth 1`, `k <k_true>`, optional `kin <k> ...`, then `c <w> <members...>`.
struct TruthFile {
  int k_true = 0;
  std::vector<int> k_in;
  std::vector<Clique> cliques;
  friend bool operator==(const TruthFile&, const TruthFile&) = default;
};
std::string write_truth(const TruthFile& t);
TruthFile parse_truth(std::string_view text);

// Human-readable kernel trace: `trace 1 <original_size> <kernel_size>`, `m`
// lines (kernel id -> original id), `r <rep> <weight> <removed...>` and
// `i <isolated...>`.
std::string write_trace(const KernelTrace& trace);

struct BenchRecord {
  std::string config;
  std::string instance_id;
  int n = 0;
  int m = 0;
  int k_true = -1;  // -1: unknown
  int k_in = 0;
  std::string kernel_variant;
  int n_kernel = 0;
  std::string ordering;
  std::string srules;
  bool symmetry = false;
  long long lp_runs = 0;
  long long signatures_tested = 0;
  long long backtracks = 0;
  std::string outcome;   // yes, no, timeout, error
  std::string expected;  // yes, no, unlabeled
  double wall_ms = 0;
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

inline constexpr std::string_view kBenchCsvVersion = "# decaf-bench-csv 1";
const std::vector<std::string>& bench_csv_header();
std::string write_bench_csv(const std::vector<BenchRecord>& records);
std::string bench_csv_row(const BenchRecord& r);
// Throws ParseError when the version line or header differ.
std::vector<BenchRecord> parse_bench_csv(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace decaf
