#include "decaf/pipeline.hpp"

#include "decaf/oracle.hpp"

#include <chrono>
#include <stdexcept>

namespace decaf {

std::optional<SRules> parse_srules(const std::string& text) {
  if (text == "none") return SRules{false, false, false};
  if (text.empty()) return std::nullopt;
  SRules r{false, false, false};
  char last = '/';
  for (char c : text) {
    if (c <= last || c < '0' || c > '2') return std::nullopt;
    last = c;
    (c == '0' ? r.rule0 : c == '1' ? r.rule1 : r.rule2) = true;
  }
  return r;
}

std::string to_string(const SRules& rules) {
  std::string s;
  if (rules.rule0) s += '0';
  if (rules.rule1) s += '1';
  if (rules.rule2) s += '2';
  return s.empty() ? "none" : s;
}

std::string to_string(KernelVariant v) {
  switch (v) {
    case KernelVariant::kNone:
      return "none";
    case KernelVariant::kCricca:
      return "cricca";
    case KernelVariant::kDecaf:
      return "decaf";
  }
  return "?";
}

std::optional<KernelVariant> parse_kernel_variant(const std::string& text) {
  for (KernelVariant v : {KernelVariant::kNone, KernelVariant::kCricca, KernelVariant::kDecaf})
    if (to_string(v) == text) return v;
  return std::nullopt;
}

std::string to_string(IsolatedPolicy p) {
  return p == IsolatedPolicy::kIgnore ? "ignore" : "consume-k";
}

std::optional<IsolatedPolicy> parse_isolated_policy(const std::string& text) {
  if (text == "ignore") return IsolatedPolicy::kIgnore;
  if (text == "consume-k") return IsolatedPolicy::kConsumeK;
  return std::nullopt;
}

Ordering PipelineConfig::effective_ordering() const {
  if (ordering) return *ordering;
  return srules.rule0 ? Ordering::kPushFront : Ordering::kArbitrary;
}

SolveConfig PipelineConfig::solve_config() const {
  SolveConfig c;
  c.ordering = effective_ordering();
  c.srule1 = srules.rule1;
  c.srule2 = srules.rule2;
  c.column_symmetry_breaking = column_symmetry_breaking;
  c.lp_mode = lp_mode;
  c.timeout_seconds = timeout_seconds;
  return c;
}

std::optional<PipelineConfig> preset(const std::string& name) {
  PipelineConfig c;
  if (name == "decaf") {
    c.kernel = KernelVariant::kDecaf;
    c.srules = {true, true, true};
    c.ordering = Ordering::kPushFront;
  } else if (name == "cricca") {
    c.kernel = KernelVariant::kCricca;
    c.srules = {false, false, false};
    c.ordering = Ordering::kArbitrary;
  } else if (name == "cricca-star") {
    c.kernel = KernelVariant::kCricca;
    c.srules = {true, false, false};
    c.ordering = Ordering::kPushFront;
  } else {
    return std::nullopt;
  }
  return c;
}

std::vector<std::string> preset_names() { return {"decaf", "cricca", "cricca-star"}; }

PipelineResult solve_instance(const WeightedGraph& g, const Annotations& annotations, int k,
                              const PipelineConfig& config) {
  PipelineResult result;
  const AnnotatedMatrix original = from_graph(g, annotations);
  auto finish_no = [&](std::string reason) {
    result.outcome = SolveOutcome::kNo;
    result.no_reason = std::move(reason);
    result.search.outcome = SolveOutcome::kNo;
    return result;
  };

  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  PreprocessResult pre = preprocess(g, k, config.isolated, annotations);
  result.k_effective = pre.k;
  result.kernel.n_before = pre.graph.vertex_count();
  if (pre.k < 0) return finish_no("isolated vertices exceed k");
  if (pre.k > kMaxK)
    throw std::invalid_argument("k=" + std::to_string(pre.k) + " exceeds " + std::to_string(kMaxK));

  auto t0 = std::chrono::steady_clock::now();
  KernelResult kr = kernelize(from_graph(pre.graph, pre.annotations), pre.k, config.kernel);
  result.kernel_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  result.kernel = kr.stats;
  if (kr.is_no()) return finish_no(std::get<KernelNo>(kr.outcome).reason);
  const KernelReduced& reduced = kr.reduced();
  result.n_kernel = reduced.matrix.size();

  KernelTrace trace = attach_preprocess(reduced.trace, pre, g.vertex_count(), annotations);
  trace.isolated_policy = config.isolated;

  Decomposition kernel_solution;
  if (reduced.matrix.size() == 0) {
    kernel_solution.k = pre.k;
    kernel_solution.gamma.assign(pre.k, Rational(0));
    result.search.outcome = SolveOutcome::kYes;
  } else if (pre.k == 0) {
    return finish_no("nonempty kernel with k=0");
  } else {
    std::vector<VertexId> order = order_vertices(reduced.trace, config.effective_ordering());
    SolveResult sr = clique_decomp(reduced.matrix, pre.k, config.solve_config(), std::move(order));
    result.search = sr.stats;
    if (sr.outcome != SolveOutcome::kYes) {
      result.outcome = sr.outcome;
      return result;
    }
    kernel_solution = std::move(*sr.solution);
  }

  Decomposition lifted = lift_solution(kernel_solution, trace);
  VerifyReport report = verify(original, lifted, config.lp_mode);
  if (!report.ok)
    throw std::logic_error("lifted solution fails verification: " +
                           describe(*report.first_violation));
  result.outcome = SolveOutcome::kYes;
  result.solution = std::move(lifted);
  return result;
}

}  // namespace decaf
