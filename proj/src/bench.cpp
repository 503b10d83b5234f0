#include "decaf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace decaf {

std::optional<BenchConfig> parse_bench_config(const std::string& text) {
  if (auto p = preset(text)) return BenchConfig{text, *p};
  const std::string prefix = "custom:";
  if (text.rfind(prefix, 0) != 0) return std::nullopt;
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(prefix.size()));
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 4) return std::nullopt;
  PipelineConfig c;
  auto kernel = parse_kernel_variant(parts[0]);
  auto rules = parse_srules(parts[1]);
  auto order = parse_ordering(parts[2]);
  if (!kernel || !rules || !order || (parts[3] != "sym" && parts[3] != "nosym")) return std::nullopt;
  c.kernel = *kernel;
  c.srules = *rules;
  c.ordering = *order;
  c.column_symmetry_breaking = parts[3] == "sym";
  return BenchConfig{text, c};
}

std::vector<BenchInstance> load_corpus(const std::string& dir, std::optional<int> default_k) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".ewcd") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<BenchInstance> out;
  for (const fs::path& file : files) {
    InstanceFile inst;
    try {
      inst = parse_instance(read_file(file.string()));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), file.string() + ": " + e.what());
    }
    fs::path truth_path = file;
    truth_path.replace_extension(".truth");
    std::vector<int> k_in;
    int k_true = -1;
    if (fs::exists(truth_path)) {
      TruthFile t = parse_truth(read_file(truth_path.string()));
      k_true = t.k_true;
      k_in = t.k_in.empty() ? std::vector<int>{t.k_true} : t.k_in;
    }
    if (default_k) k_in = {*default_k};
    for (int k : k_in) {
      BenchInstance b;
      b.id = file.stem().string();
      b.graph = inst.graph;
      b.annotations = inst.annotations;
      b.k_true = k_true;
      b.k_in = k;
      out.push_back(std::move(b));
    }
  }
  return out;
}

void write_corpus(const std::string& dir, const std::vector<CorpusEntry>& entries) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::map<std::string, TruthFile> truths;
  std::map<std::string, const CorpusEntry*> first;
  for (const CorpusEntry& e : entries) {
    auto [it, inserted] = truths.try_emplace(e.id);
    if (inserted) {
      it->second.k_true = e.instance.k_true;
      it->second.cliques = e.instance.planted;
      first[e.id] = &e;
    }
    if (std::find(it->second.k_in.begin(), it->second.k_in.end(), e.k_in) == it->second.k_in.end())
      it->second.k_in.push_back(e.k_in);
  }
  for (const auto& [id, truth] : truths) {
    write_file((fs::path(dir) / (id + ".ewcd")).string(), write_instance(first[id]->instance.graph));
    write_file((fs::path(dir) / (id + ".truth")).string(), write_truth(truth));
  }
}

namespace {

std::string expected_label(const BenchInstance& inst, const BenchOptions& options) {
  if (options.oracle_labels && inst.graph.vertex_count() <= options.oracle_limits.max_n &&
      inst.k_in <= options.oracle_limits.max_k) {
    AnnotatedMatrix a = from_graph(inst.graph, inst.annotations);
    return brute_force_decide(a, inst.k_in, options.oracle_limits) ? "yes" : "no";
  }
  if (inst.k_true >= 0 && inst.k_in >= inst.k_true) return "yes";
  return "unlabeled";
}

BenchRecord run_one(const BenchInstance& inst, const BenchConfig& config, double timeout) {
  BenchRecord r;
  r.config = config.name;
  r.instance_id = inst.id;
  r.n = inst.graph.vertex_count();
  r.m = inst.graph.edge_count();
  r.k_true = inst.k_true;
  r.k_in = inst.k_in;
  PipelineConfig pc = config.pipeline;
  pc.timeout_seconds = timeout;
  r.kernel_variant = to_string(pc.kernel);
  r.ordering = to_string(pc.effective_ordering());
  r.srules = to_string(pc.srules);
  r.symmetry = pc.column_symmetry_breaking;
  try {
    PipelineResult res = solve_instance(inst.graph, inst.annotations, inst.k_in, pc);
    r.n_kernel = res.n_kernel;
    r.lp_runs = res.search.lp_runs;
    r.signatures_tested = res.search.signatures_tested;
    r.backtracks = res.search.backtracks;
    r.outcome = to_string(res.outcome);
    r.wall_ms = res.kernel_ms + res.search.wall_ms;
  } catch (const std::exception&) {
    r.outcome = "error";
  }
  return r;
}

}  // namespace

std::vector<BenchRecord> run_bench(const std::vector<BenchInstance>& instances,
                                   const std::vector<BenchConfig>& configs,
                                   const BenchOptions& options) {
  const std::size_t per = configs.size();
  const std::size_t total = instances.size() * per;
  std::vector<BenchRecord> records(total);
  std::vector<std::string> labels(instances.size());
  std::vector<bool> done(total, false);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t emitted = 0;

  auto worker = [&] {
    for (;;) {
      std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::size_t i = job / per;
      BenchRecord r = run_one(instances[i], configs[job % per], options.timeout_seconds);
      if (job % per == 0) {
        std::string label;
        try {
          label = expected_label(instances[i], options);
        } catch (const std::exception&) {
          label = "unlabeled";
        }
        std::lock_guard lock(mu);
        labels[i] = label;
      }
      std::lock_guard lock(mu);
      records[job] = std::move(r);
      done[job] = true;
      // Emit in order; labels of an instance are known once its first job is done.
      while (emitted < total && done[emitted]) {
        records[emitted].expected = labels[emitted / per];
        if (options.on_record) options.on_record(records[emitted]);
        ++emitted;
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> threads;
  for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
  return records;
}

std::optional<Quantiles> quantiles(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    double pos = p * (values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - lo) * (values[hi] - values[lo]);
  };
  return Quantiles{at(0.25), at(0.5), at(0.75), static_cast<int>(values.size())};
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string fmt(const std::optional<Quantiles>& q) {
  if (!q) return "-";
  return fmt(q->median) + " [" + fmt(q->q1) + ", " + fmt(q->q3) + "] n=" + std::to_string(q->count);
}

}  // namespace

std::string summarize(const std::vector<BenchRecord>& records) {
  std::vector<std::string> configs;
  std::map<int, std::vector<const BenchRecord*>> by_k;
  for (const BenchRecord& r : records) {
    if (std::find(configs.begin(), configs.end(), r.config) == configs.end()) configs.push_back(r.config);
    by_k[r.k_true].push_back(&r);
  }
  std::ostringstream out;
  for (const auto& [k, rows] : by_k) {
    out << "== k_true " << (k < 0 ? std::string("unknown") : std::to_string(k)) << '\n';
    out << "config\tyes\tno\ttimeout\terror\tmedian_wall_ms\tmedian_n_kernel\n";
    std::map<std::string, std::map<std::pair<std::string, int>, const BenchRecord*>> keyed;
    for (const std::string& c : configs) {
      int yes = 0, no = 0, timeout = 0, error = 0;
      std::vector<double> wall, nk;
      for (const BenchRecord* r : rows) {
        if (r->config != c) continue;
        keyed[c][{r->instance_id, r->k_in}] = r;
        if (r->outcome == "yes") ++yes;
        else if (r->outcome == "no") ++no;
        else if (r->outcome == "timeout") ++timeout;
        else ++error;
        if (r->outcome != "error") {
          wall.push_back(r->wall_ms);
          nk.push_back(r->n_kernel);
        }
      }
      auto w = quantiles(wall);
      auto n = quantiles(nk);
      out << c << '\t' << yes << '\t' << no << '\t' << timeout << '\t' << error << '\t'
          << (w ? fmt(w->median) : "-") << '\t' << (n ? fmt(n->median) : "-") << '\n';
    }
    for (std::size_t a = 0; a < configs.size(); ++a)
      for (std::size_t b = a + 1; b < configs.size(); ++b) {
        std::vector<double> wall, lp, kernel;
        for (const auto& [key, ra] : keyed[configs[a]]) {
          auto it = keyed[configs[b]].find(key);
          if (it == keyed[configs[b]].end()) continue;
          const BenchRecord* rb = it->second;
          bool finished = (ra->outcome == "yes" || ra->outcome == "no") &&
                          (rb->outcome == "yes" || rb->outcome == "no");
          if (ra->outcome != "error" && rb->outcome != "error" && rb->n_kernel > 0)
            kernel.push_back(static_cast<double>(ra->n_kernel) / rb->n_kernel);
          if (!finished) continue;
          wall.push_back(std::max(ra->wall_ms, 1e-3) / std::max(rb->wall_ms, 1e-3));
          lp.push_back(static_cast<double>(std::max<long long>(ra->lp_runs, 1)) /
                       static_cast<double>(std::max<long long>(rb->lp_runs, 1)));
        }
        out << configs[a] << " / " << configs[b] << ": wall " << fmt(quantiles(wall)) << "; lp_runs "
            << fmt(quantiles(lp)) << "; n_kernel " << fmt(quantiles(kernel)) << '\n';
      }
  }
  return out.str();
}

}  // namespace decaf
