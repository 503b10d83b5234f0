#include "decaf/bench.hpp"
#include "decaf/pipeline.hpp"
#include "support.hpp"

#include <doctest.h>
#include <filesystem>

using namespace decaf;

TEST_CASE("presets expand to the documented flag sets") {
  PipelineConfig d = *preset("decaf");
  CHECK(d.kernel == KernelVariant::kDecaf);
  CHECK(d.effective_ordering() == Ordering::kPushFront);
  CHECK(d.srules == SRules{true, true, true});
  CHECK_FALSE(d.column_symmetry_breaking);

  PipelineConfig c = *preset("cricca");
  CHECK(c.kernel == KernelVariant::kCricca);
  CHECK(c.effective_ordering() == Ordering::kArbitrary);
  CHECK(c.srules == SRules{false, false, false});

  PipelineConfig s = *preset("cricca-star");
  CHECK(s.kernel == KernelVariant::kCricca);
  CHECK(s.effective_ordering() == Ordering::kPushFront);
  CHECK(s.srules == SRules{true, false, false});
  SolveConfig sc = s.solve_config();
  CHECK_FALSE(sc.srule1);
  CHECK_FALSE(sc.srule2);

  CHECK_FALSE(preset("fast"));
  CHECK(PipelineConfig{} .effective_ordering() == Ordering::kPushFront);
}

TEST_CASE("S-rule strings") {
  CHECK(parse_srules("none") == SRules{false, false, false});
  CHECK(parse_srules("012") == SRules{true, true, true});
  CHECK(parse_srules("0") == SRules{true, false, false});
  CHECK(parse_srules("12") == SRules{false, true, true});
  for (const char* bad : {"", "21", "003", "3", "0a"}) CHECK_FALSE(parse_srules(bad));
  for (const char* s : {"none", "0", "01", "012", "2"}) CHECK(to_string(*parse_srules(s)) == s);
}

TEST_CASE("solve_instance examples") {
  PipelineConfig d = *preset("decaf");
  PipelineResult yes = solve_instance(test::triangle211(), {}, 2, d);
  REQUIRE(yes.outcome == SolveOutcome::kYes);
  CHECK(verify(from_graph(test::triangle211()), *yes.solution).ok);
  CHECK(solve_instance(test::triangle211(), {}, 1, d).outcome == SolveOutcome::kNo);

  PipelineResult k6 = solve_instance(test::complete(6, 2), {}, 3, d);
  REQUIRE(k6.solution);
  CHECK(k6.n_kernel == 1);
  auto cliques = k6.solution->cliques();
  REQUIRE(cliques.size() == 1);
  CHECK(cliques[0].members.size() == 6);

  // Isolated vertex under both policies.
  WeightedGraph g = test::graph(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  CHECK(solve_instance(g, {}, 1, d).outcome == SolveOutcome::kYes);
  PipelineConfig consume = d;
  consume.isolated = IsolatedPolicy::kConsumeK;
  CHECK(solve_instance(g, {}, 1, consume).outcome == SolveOutcome::kNo);
  PipelineResult two = solve_instance(g, {}, 2, consume);
  REQUIRE(two.solution);
  CHECK(two.solution->rows[3] != 0);

  // Empty graph is a YES instance for every k, including 0.
  CHECK(solve_instance(WeightedGraph(3, {}), {}, 0, d).outcome == SolveOutcome::kYes);
  CHECK(solve_instance(test::path3(), {}, 0, d).outcome == SolveOutcome::kNo);
}

TEST_CASE("annotated instances go through the pipeline") {
  // Vertex 0 weighs 3: the edge clique (weight 1) plus a singleton of 2.
  WeightedGraph g = test::graph(2, {{0, 1, 1}});
  PipelineResult r = solve_instance(g, {{0, Rational(3)}}, 2, *preset("decaf"));
  REQUIRE(r.solution);
  CHECK(verify(from_graph(g, {{0, Rational(3)}}), *r.solution).ok);
  CHECK(solve_instance(g, {{0, Rational(3)}}, 1, *preset("decaf")).outcome == SolveOutcome::kNo);
}

TEST_CASE("bench harness: counting, ordering, dominance and summaries") {
  GenSpec base{14, 2, 2, 6, 1, 3, 0.8, 3};
  auto entries = corpus(base, {2, 3}, 5, {Rational(1)});
  std::vector<BenchInstance> instances;
  for (const CorpusEntry& e : entries)
    instances.push_back({e.id, e.instance.graph, {}, e.instance.k_true, e.k_in});
  std::vector<BenchConfig> configs;
  for (const char* name : {"decaf", "cricca", "cricca-star", "custom:decaf:none:push_front:nosym"})
    configs.push_back(*parse_bench_config(name));
  CHECK_FALSE(parse_bench_config("custom:decaf:9:push_front:nosym"));

  BenchOptions opt;
  opt.timeout_seconds = 20;
  opt.jobs = 2;
  int streamed = 0;
  opt.on_record = [&](const BenchRecord&) { ++streamed; };
  auto records = run_bench(instances, configs, opt);
  REQUIRE(records.size() == 40);
  CHECK(streamed == 40);
  for (std::size_t i = 0; i < records.size(); i += 4) {
    CHECK(records[i].config == "decaf");
    CHECK(records[i].n_kernel <= records[i + 1].n_kernel);
    CHECK(records[i].expected == "yes");
    CHECK(records[i].outcome == "yes");
    for (int c = 1; c < 4; ++c) CHECK(records[i + c].instance_id == records[i].instance_id);
  }
  CHECK(parse_bench_csv(write_bench_csv(records)) == records);
  std::string summary = summarize(records);
  CHECK(summary.find("== k_true 2") != std::string::npos);
  CHECK(summary.find("decaf / cricca-star") != std::string::npos);

  // Same inputs give the same records apart from wall time.
  opt.jobs = 1;
  auto again = run_bench(instances, configs, opt);
  for (std::size_t i = 0; i < records.size(); ++i) {
    again[i].wall_ms = records[i].wall_ms;
    CHECK(again[i] == records[i]);
  }
}

TEST_CASE("corpus files round-trip through a directory") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "decaf_corpus_test";
  fs::remove_all(dir);
  auto entries = corpus(GenSpec{10, 2, 2, 4, 1, 2, 0.5, 9}, {2}, 2, {Rational(1), Rational(3, 2)});
  write_corpus(dir.string(), entries);
  auto loaded = load_corpus(dir.string());
  REQUIRE(loaded.size() == 4);
  CHECK(loaded[0].id == "k2_i0");
  CHECK(loaded[0].k_in == 2);
  CHECK(loaded[1].k_in == 3);
  CHECK(loaded[0].k_true == 2);
  CHECK(loaded[0].graph.edge_count() == entries[0].instance.graph.edge_count());
  CHECK(load_corpus(dir.string(), 5).size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("quantiles") {
  auto q = quantiles({4, 1, 3, 2, 5});
  REQUIRE(q);
  CHECK(q->median == 3);
  CHECK(q->q1 == 2);
  CHECK(q->q3 == 4);
  CHECK(q->count == 5);
  CHECK(quantiles({1, 2})->median == doctest::Approx(1.5));
  CHECK_FALSE(quantiles({}));
}
