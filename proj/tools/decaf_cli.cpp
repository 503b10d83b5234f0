#include "decaf/bench.hpp"
#include "decaf/gen.hpp"
#include "decaf/io.hpp"
#include "decaf/oracle.hpp"
#include "decaf/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

namespace {

using namespace decaf;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { kOff, kInfo, kDebug };

LogLevel log_level() {
  const char* env = std::getenv("DECAF_LOG");
  std::string v = env ? env : "off";
  if (v == "debug") return LogLevel::kDebug;
  if (v == "info") return LogLevel::kInfo;
  return LogLevel::kOff;
}

void log(LogLevel level, const std::string& message) {
  static const LogLevel active = log_level();
  if (active >= level && level != LogLevel::kOff)
    std::cerr << (level == LogLevel::kDebug ? "[debug] " : "[info] ") << message << '\n';
}

InstanceFile load_instance(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  try {
    return parse_instance(text);
  } catch (const std::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

int exit_code(SolveOutcome o) {
  switch (o) {
    case SolveOutcome::kYes:
      return kExitYes;
    case SolveOutcome::kNo:
      return kExitNo;
    case SolveOutcome::kTimeout:
      return kExitTimeout;
  }
  return kExitData;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) out.push_back(part);
  return out;
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
  std::string input;
  int k = -1;
  std::string preset_name;
  std::string kernel;
  std::string order;
  std::string srules;
  bool symmetry = false;
  std::string lp = "rational";
  double timeout = 0;
  std::string out;
  std::string isolated = "ignore";
  bool annotated_output = false;
};

PipelineConfig build_config(const SolveArgs& a) {
  PipelineConfig c;
  if (!a.preset_name.empty()) c = *preset(a.preset_name);
  if (!a.kernel.empty()) c.kernel = *parse_kernel_variant(a.kernel);
  if (!a.srules.empty()) {
    c.srules = *parse_srules(a.srules);
    c.ordering.reset();
  }
  if (!a.order.empty()) c.ordering = *parse_ordering(a.order);
  c.column_symmetry_breaking = c.column_symmetry_breaking || a.symmetry;
  c.lp_mode = a.lp == "float" ? LpMode::kFloat : LpMode::kRational;
  c.timeout_seconds = a.timeout;
  c.isolated = *parse_isolated_policy(a.isolated);
  return c;
}

int run_solve(const SolveArgs& a) {
  InstanceFile inst = load_instance(a.input);
  PipelineConfig config = build_config(a);
  log(LogLevel::kInfo, "solve n=" + std::to_string(inst.graph.vertex_count()) +
                           " m=" + std::to_string(inst.graph.edge_count()) + " k=" + std::to_string(a.k) +
                           " kernel=" + to_string(config.kernel) + " order=" +
                           to_string(config.effective_ordering()) + " srules=" + to_string(config.srules));
  PipelineResult r = solve_instance(inst.graph, inst.annotations, a.k, config);
  log(LogLevel::kInfo, "kernel " + std::to_string(r.kernel.n_before) + " -> " +
                           std::to_string(r.n_kernel) + ", outcome " + to_string(r.outcome));
  if (!r.no_reason.empty()) log(LogLevel::kDebug, "decided before search: " + r.no_reason);

  SolutionFile s;
  s.outcome = r.outcome;
  if (r.solution) s.cliques = solution_cliques(*r.solution, a.annotated_output || !inst.annotations.empty());
  s.stats = stats_lines(r.search);
  s.stats.emplace_back("n_kernel", std::to_string(r.n_kernel));
  emit(a.out, write_solution(s));
  return exit_code(r.outcome);
}

// -------------------------------------------------------------- kernelize

int run_kernelize(const std::string& input, int k, const std::string& kernel,
                  const std::string& isolated, const std::string& out, const std::string& trace_path) {
  InstanceFile inst = load_instance(input);
  IsolatedPolicy policy = *parse_isolated_policy(isolated);
  PreprocessResult pre = preprocess(inst.graph, k, policy, inst.annotations);
  if (pre.k < 0) {
    std::cout << "no isolated vertices exceed k\n";
    return kExitNo;
  }
  KernelResult kr = kernelize(from_graph(pre.graph, pre.annotations), pre.k, *parse_kernel_variant(kernel));
  log(LogLevel::kInfo, "blocks " + std::to_string(kr.stats.block_count) + ", passes " +
                           std::to_string(kr.stats.passes) + ", reductions " +
                           std::to_string(kr.stats.rule_applications));
  if (kr.is_no()) {
    std::cout << "no " << std::get<KernelNo>(kr.outcome).reason << '\n';
    return kExitNo;
  }
  const KernelReduced& red = kr.reduced();
  std::vector<Edge> edges = red.matrix.edges();
  Annotations ann;
  for (VertexId v = 0; v < red.matrix.size(); ++v)
    if (!red.matrix.diagonal(v).is_wildcard()) ann.emplace(v, red.matrix.diagonal(v).value());
  std::ostringstream text;
  text << "# kernel k=" << pre.k << " n_before=" << inst.graph.vertex_count()
       << " n_after=" << red.matrix.size() << '\n';
  text << write_instance(WeightedGraph(red.matrix.size(), edges), ann);
  emit(out, text.str());
  if (!trace_path.empty()) {
    KernelTrace trace = attach_preprocess(red.trace, pre, inst.graph.vertex_count(), inst.annotations);
    trace.isolated_policy = policy;
    write_file(trace_path, write_trace(trace));
  }
  return kExitYes;
}

// --------------------------------------------------------------- generate

struct GenerateArgs {
  GenSpec spec;
  std::string out;
  std::string truth;
  std::string corpus_dir;
  std::string k_values;
  int per_k = 1;
  std::string kin_mult = "1";
};

int run_generate(GenerateArgs a) {
  if (!a.corpus_dir.empty()) {
    std::vector<int> ks;
    for (const std::string& s : split_list(a.k_values)) ks.push_back(std::stoi(s));
    if (ks.empty()) ks.push_back(a.spec.k_true);
    std::vector<Rational> mults;
    for (const std::string& s : split_list(a.kin_mult)) {
      Rational m;
      if (!parse_rational(s, m)) throw CLI::ValidationError("--kin-mult", "malformed multiplier " + s);
      mults.push_back(m);
    }
    std::vector<CorpusEntry> entries = corpus(a.spec, ks, a.per_k, mults);
    write_corpus(a.corpus_dir, entries);
    log(LogLevel::kInfo, "wrote " + std::to_string(entries.size()) + " corpus entries");
    return kExitYes;
  }
  PlantedInstance p = generate(a.spec);
  if (!p.isolated.empty())
    std::cerr << "note: " << p.isolated.size() << " vertices covered by no clique"
              << (a.spec.prune_isolated ? " (pruned)" : "") << '\n';
  emit(a.out, write_instance(p.graph));
  if (!a.truth.empty()) write_file(a.truth, write_truth({p.k_true, {}, p.planted}));
  return kExitYes;
}

// ----------------------------------------------------------------- verify

int run_verify(const std::string& input, const std::string& solution_path) {
  InstanceFile inst = load_instance(input);
  SolutionFile s;
  try {
    s = parse_solution(read_file(solution_path));
  } catch (const std::exception& e) {
    throw DataError(solution_path + ": " + e.what());
  }
  if (s.outcome != SolveOutcome::kYes) throw DataError("solution carries no decomposition");
  Decomposition d;
  try {
    d = Decomposition::from_cliques(inst.graph.vertex_count(), s.cliques);
  } catch (const std::exception& e) {
    throw DataError(std::string("solution does not match the instance: ") + e.what());
  }
  VerifyReport r = verify(from_graph(inst.graph, inst.annotations), d);
  if (r.ok) {
    std::cout << "ok " << s.cliques.size() << " cliques\n";
    return kExitYes;
  }
  std::cout << "violation " << describe(*r.first_violation) << '\n';
  return kExitNo;
}

// ------------------------------------------------------------------ bench

int run_bench_cmd(const std::string& dir, const std::string& config_list, double timeout, int jobs,
                  const std::string& out, int k_override, bool no_oracle) {
  std::vector<BenchConfig> configs;
  for (const std::string& name : split_list(config_list)) {
    auto c = parse_bench_config(name);
    if (!c) throw CLI::ValidationError("--configs", "unknown config '" + name + "'");
    configs.push_back(*c);
  }
  std::vector<BenchInstance> instances;
  try {
    instances = load_corpus(dir, k_override >= 0 ? std::optional<int>(k_override) : std::nullopt);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  log(LogLevel::kInfo, std::to_string(instances.size()) + " instances x " +
                           std::to_string(configs.size()) + " configs");
  BenchOptions opt;
  opt.timeout_seconds = timeout;
  opt.jobs = jobs;
  opt.oracle_labels = !no_oracle;
  opt.on_record = [](const BenchRecord& r) {
    log(LogLevel::kDebug, r.config + " " + r.instance_id + " k_in=" + std::to_string(r.k_in) + " " +
                              r.outcome + " lp=" + std::to_string(r.lp_runs));
  };
  std::vector<BenchRecord> records = run_bench(instances, configs, opt);
  std::string csv = write_bench_csv(records);
  if (out.empty()) std::cout << csv;
  else write_file(out, csv);
  (out.empty() ? std::cerr : std::cout) << summarize(records);
  return kExitYes;
}

// ----------------------------------------------------------------- oracle

int run_oracle(const std::string& input, int k, int min_k_cap, int max_n, int max_k) {
  InstanceFile inst = load_instance(input);
  AnnotatedMatrix a = from_graph(inst.graph, inst.annotations);
  OracleLimits limits{max_n, max_k};
  if (min_k_cap >= 0) {
    auto m = minimal_k(a, min_k_cap, limits);
    if (m) std::cout << "k " << *m << '\n';
    else std::cout << "k >" << min_k_cap << '\n';
    return m ? kExitYes : kExitNo;
  }
  auto d = brute_force_decide(a, k, limits);
  SolutionFile s;
  s.outcome = d ? SolveOutcome::kYes : SolveOutcome::kNo;
  if (d) s.cliques = solution_cliques(*d, !inst.annotations.empty());
  std::cout << write_solution(s);
  return d ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact weighted clique decomposition: kernelization, search and benchmarking"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "decaf 1.0");

  const std::vector<std::string> kernels = {"none", "cricca", "decaf"};
  const std::vector<std::string> orders = {"arbitrary", "push_front", "push_back", "keep_first"};
  auto srules_check = CLI::Validator(
      [](std::string& s) { return parse_srules(s) ? std::string() : "expected none or rule digits like 012"; },
      "SRULES");

  SolveArgs solve;
  auto* cmd_solve = app.add_subcommand("solve", "decide an instance and print a solution");
  cmd_solve->add_option("--input", solve.input, "instance file")->required();
  cmd_solve->add_option("--k", solve.k, "clique budget")->required()->check(CLI::Range(0, 1 << 20));
  cmd_solve->add_option("--preset", solve.preset_name, "named configuration")
      ->check(CLI::IsMember(preset_names()));
  cmd_solve->add_option("--kernel", solve.kernel, "kernel variant")->check(CLI::IsMember(kernels));
  cmd_solve->add_option("--order", solve.order, "vertex ordering")->check(CLI::IsMember(orders));
  cmd_solve->add_option("--srules", solve.srules, "active S-rules")->check(srules_check);
  cmd_solve->add_flag("--symmetry-break", solve.symmetry, "break clique-label symmetry on basis rows");
  cmd_solve->add_option("--lp", solve.lp, "LP arithmetic")->check(CLI::IsMember({"rational", "float"}));
  cmd_solve->add_option("--timeout", solve.timeout, "seconds, 0 for none")->check(CLI::NonNegativeNumber);
  cmd_solve->add_option("--out", solve.out, "solution file (default stdout)");
  cmd_solve->add_option("--isolated", solve.isolated, "isolated vertex policy")
      ->check(CLI::IsMember({"ignore", "consume-k"}));
  cmd_solve->add_flag("--annotated-output", solve.annotated_output, "also list single-vertex cliques");

  std::string k_input, k_kernel = "decaf", k_isolated = "ignore", k_out, k_trace;
  int k_k = 0;
  auto* cmd_kernel = app.add_subcommand("kernelize", "write the kernel of an instance");
  cmd_kernel->add_option("--input", k_input, "instance file")->required();
  cmd_kernel->add_option("--k", k_k, "clique budget")->required()->check(CLI::Range(0, kMaxK));
  cmd_kernel->add_option("--kernel", k_kernel, "kernel variant")->check(CLI::IsMember(kernels));
  cmd_kernel->add_option("--isolated", k_isolated, "isolated vertex policy")
      ->check(CLI::IsMember({"ignore", "consume-k"}));
  cmd_kernel->add_option("--out", k_out, "kernel instance file (default stdout)");
  cmd_kernel->add_option("--trace", k_trace, "trace file");

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "write planted instances");
  cmd_gen->add_option("--n", gen.spec.n, "vertex count");
  cmd_gen->add_option("--k-true", gen.spec.k_true, "planted clique count");
  cmd_gen->add_option("--size-min", gen.spec.size_min);
  cmd_gen->add_option("--size-max", gen.spec.size_max);
  cmd_gen->add_option("--weight-min", gen.spec.weight_min);
  cmd_gen->add_option("--weight-max", gen.spec.weight_max);
  cmd_gen->add_option("--overlap", gen.spec.overlap_bias, "overlap bias in [0,1]");
  cmd_gen->add_option("--seed", gen.spec.seed);
  cmd_gen->add_flag("--prune-isolated", gen.spec.prune_isolated);
  cmd_gen->add_option("--out", gen.out, "instance file (default stdout)");
  cmd_gen->add_option("--truth", gen.truth, "ground-truth sidecar");
  cmd_gen->add_option("--corpus-dir", gen.corpus_dir, "write a corpus into this directory");
  cmd_gen->add_option("--k-values", gen.k_values, "comma-separated planted k values");
  cmd_gen->add_option("--per-k", gen.per_k, "instances per k")->check(CLI::PositiveNumber);
  cmd_gen->add_option("--kin-mult", gen.kin_mult, "comma-separated k_in multipliers");

  std::string v_input, v_solution;
  auto* cmd_verify = app.add_subcommand("verify", "check a solution against an instance");
  cmd_verify->add_option("--input", v_input, "instance file")->required();
  cmd_verify->add_option("--solution", v_solution, "solution file")->required();

  std::string b_corpus, b_configs = "decaf,cricca,cricca-star", b_out;
  double b_timeout = 60;
  int b_jobs = 1, b_k = -1;
  bool b_no_oracle = false;
  auto* cmd_bench = app.add_subcommand("bench", "run configurations over a corpus");
  cmd_bench->add_option("--corpus", b_corpus, "corpus directory")->required();
  cmd_bench->add_option("--configs", b_configs, "comma-separated presets or custom:<kernel>:<srules>:<order>:<sym|nosym>");
  cmd_bench->add_option("--timeout", b_timeout, "seconds per solve")->check(CLI::NonNegativeNumber);
  cmd_bench->add_option("--jobs", b_jobs, "parallel instances")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--out", b_out, "CSV file (default stdout, summary then goes to stderr)");
  cmd_bench->add_option("--k", b_k, "override k_in for every instance");
  cmd_bench->add_flag("--no-oracle", b_no_oracle, "skip oracle labelling");

  std::string o_input;
  int o_k = -1, o_cap = -1;
  OracleLimits o_limits;
  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force decision for small instances");
  cmd_oracle->add_option("--input", o_input, "instance file")->required();
  auto* o_k_opt = cmd_oracle->add_option("--k", o_k, "clique budget");
  auto* o_min_opt = cmd_oracle->add_option("--min-k", o_cap, "report the minimal k up to this cap");
  o_k_opt->excludes(o_min_opt);
  cmd_oracle->add_option("--max-n", o_limits.max_n, "size guard");
  cmd_oracle->add_option("--max-k", o_limits.max_k, "size guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_solve) return run_solve(solve);
    if (*cmd_kernel) return run_kernelize(k_input, k_k, k_kernel, k_isolated, k_out, k_trace);
    if (*cmd_gen) return run_generate(gen);
    if (*cmd_verify) return run_verify(v_input, v_solution);
    if (*cmd_bench) return run_bench_cmd(b_corpus, b_configs, b_timeout, b_jobs, b_out, b_k, b_no_oracle);
    if (*cmd_oracle) {
      if (o_k < 0 && o_cap < 0) throw CLI::ValidationError("oracle", "one of --k or --min-k is required");
      return run_oracle(o_input, o_k, o_cap, o_limits.max_n, o_limits.max_k);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const OracleLimitError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const InstanceError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
