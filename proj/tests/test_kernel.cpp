#include "decaf/kernel.hpp"
#include "decaf/oracle.hpp"
#include "decaf/search.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace decaf;
using decaf::test::graph;

TEST_CASE("preprocess drops isolated vertices") {
  WeightedGraph g = graph(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  PreprocessResult ig = preprocess(g, 2, IsolatedPolicy::kIgnore);
  CHECK(ig.graph.vertex_count() == 3);
  CHECK(ig.k == 2);
  CHECK(ig.removed == std::vector<VertexId>{3});
  PreprocessResult ck = preprocess(g, 2, IsolatedPolicy::kConsumeK);
  CHECK(ck.k == 1);
  CHECK(ck.removed == std::vector<VertexId>{3});
  PreprocessResult same = preprocess(test::path3(), 3, IsolatedPolicy::kIgnore);
  CHECK(same.graph.vertex_count() == 3);
  CHECK(same.k == 3);
  CHECK(same.removed.empty());
  // An isolated vertex with positive weight still needs a clique.
  PreprocessResult ann = preprocess(g, 2, IsolatedPolicy::kIgnore, {{3, Rational(2)}});
  CHECK(ann.graph.vertex_count() == 4);
}

TEST_CASE("K-rule 1") {
  CHECK_FALSE(krule1_passes(compute_blocks(from_graph(test::path3())), 1));
  CHECK(krule1_passes(compute_blocks(from_graph(test::complete(3, 1))), 1));
  WeightedGraph four = graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}});
  BlockPartition b = compute_blocks(from_graph(four));
  CHECK(b.block_count() == 4);
  CHECK(krule1_passes(b, 2));
}

TEST_CASE("reduce_block") {
  AnnotatedMatrix k5 = from_graph(test::complete(5, 2));
  BlockReduction r = reduce_block(k5, {0, 1, 2, 3, 4});
  CHECK(r.matrix.size() == 1);
  CHECK(r.matrix.diagonal(0) == StarValue(Rational(2)));
  CHECK(r.record.representative == 0);
  CHECK(r.record.removed == std::vector<VertexId>{1, 2, 3, 4});

  // K3 with a pendant vertex 3 attached to all of it.
  AnnotatedMatrix big = from_graph(graph(5, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {0, 3, 4}, {1, 3, 4},
                                             {2, 3, 4}, {3, 4, 1}}));
  BlockReduction inner = reduce_block(big, {0, 1, 2});
  CHECK(inner.matrix.size() == 3);
  CHECK(inner.vertex_map == std::vector<VertexId>{0, 3, 4});
  CHECK(inner.matrix.weight(0, 1) == 4);
  CHECK(inner.matrix.weight(1, 2) == 1);
  CHECK_FALSE(inner.matrix.adjacent(0, 2));
  CHECK(inner.matrix.diagonal(0) == StarValue(Rational(1)));

  BlockReduction pair = reduce_block(from_graph(graph(2, {{0, 1, 7}})), {0, 1});
  CHECK(pair.matrix.diagonal(0) == StarValue(Rational(7)));
  CHECK_THROWS_AS(reduce_block(k5, {2}), std::invalid_argument);
}

TEST_CASE("kernelize examples") {
  AnnotatedMatrix k6 = from_graph(test::complete(6, 2));
  KernelResult d = kernelize(k6, 3, KernelVariant::kDecaf);
  REQUIRE_FALSE(d.is_no());
  CHECK(d.reduced().matrix.size() == 1);
  CHECK(d.reduced().matrix.diagonal(0) == StarValue(Rational(2)));

  KernelResult c = kernelize(k6, 3, KernelVariant::kCricca);
  REQUIRE_FALSE(c.is_no());
  CHECK(c.reduced().matrix == k6);

  CHECK(kernelize(from_graph(test::path3()), 1, KernelVariant::kDecaf).is_no());
  CHECK(kernelize(from_graph(test::path3()), 1, KernelVariant::kCricca).is_no());
  CHECK_FALSE(kernelize(from_graph(test::path3()), 1, KernelVariant::kNone).is_no());
  CHECK_THROWS_AS(kernelize(k6, kMaxK + 1, KernelVariant::kDecaf), std::invalid_argument);
}

TEST_CASE("lift_solution examples") {
  AnnotatedMatrix k6 = from_graph(test::complete(6, 2));
  KernelResult d = kernelize(k6, 3, KernelVariant::kDecaf);
  Decomposition kernel_sol{3, {0b001}, {Rational(2), Rational(0), Rational(0)}};
  Decomposition lifted = lift_solution(kernel_sol, d.reduced().trace);
  auto cliques = lifted.cliques();
  REQUIRE(cliques.size() == 1);
  CHECK(cliques[0].members == std::vector<VertexId>{0, 1, 2, 3, 4, 5});
  CHECK(cliques[0].weight == 2);
  CHECK(verify(k6, lifted).ok);

  AnnotatedMatrix tri = from_graph(test::triangle211());
  KernelResult none = kernelize(tri, 2, KernelVariant::kNone);
  Decomposition sol{2, {0b11, 0b11, 0b01}, {Rational(1), Rational(1)}};
  Decomposition same = lift_solution(sol, none.reduced().trace);
  CHECK(same.rows == sol.rows);
  CHECK(same.gamma == sol.gamma);
  CHECK_THROWS_AS(lift_solution(Decomposition{2, {0b1}, {Rational(1), Rational(1)}}, none.reduced().trace),
                  std::invalid_argument);
}

namespace {

WeightedGraph random_instance(std::mt19937_64& rng, int n) {
  return std::bernoulli_distribution(0.6)(rng) ? test::random_planted(rng, n, std::uniform_int_distribution<int>(1, 3)(rng), 2)
                                               : test::random_graph(rng, n, 0.6, 2);
}

}  // namespace

TEST_CASE("property: kernels are sound, bounded, dominated and idempotent") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 150; ++iter) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    WeightedGraph g = random_instance(rng, n);
    PreprocessResult pre = preprocess(g, k, IsolatedPolicy::kIgnore);
    AnnotatedMatrix a = from_graph(pre.graph);
    const bool truth = brute_force_decide(a, k).has_value();
    int sizes[2] = {0, 0};
    int v = 0;
    for (KernelVariant variant : {KernelVariant::kCricca, KernelVariant::kDecaf}) {
      KernelResult r = kernelize(a, k, variant);
      if (r.is_no()) {
        CHECK_FALSE(truth);
        sizes[v++] = 0;
        continue;
      }
      const AnnotatedMatrix& m = r.reduced().matrix;
      CHECK(m.size() <= a.size());
      CHECK(brute_force_decide(m, k).has_value() == truth);
      BlockPartition blocks = compute_blocks(m);
      CHECK(blocks.block_count() <= (1 << k));
      if (variant == KernelVariant::kDecaf) {
        CHECK(m.size() <= k * (1 << k));
        for (const auto& b : blocks.blocks) CHECK(static_cast<int>(b.size()) <= k);
      } else {
        CHECK(m.size() <= (1 << (2 * k)));
      }
      KernelResult twice = kernelize(m, k, variant);
      REQUIRE_FALSE(twice.is_no());
      CHECK(twice.reduced().matrix.size() == m.size());
      sizes[v++] = m.size();
    }
    CHECK(sizes[1] <= sizes[0]);
  }
}

TEST_CASE("property: lifted solutions verify on the original graph") {
  std::mt19937_64 rng(29);
  int lifted = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const int n = std::uniform_int_distribution<int>(2, 12)(rng);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    WeightedGraph g = test::random_planted(rng, n, k, 3);
    AnnotatedMatrix original = from_graph(g);
    PreprocessResult pre = preprocess(g, k, IsolatedPolicy::kIgnore);
    for (KernelVariant variant : {KernelVariant::kCricca, KernelVariant::kDecaf}) {
      KernelResult r = kernelize(from_graph(pre.graph), k, variant);
      REQUIRE_FALSE(r.is_no());  // planted witness exists
      const KernelReduced& red = r.reduced();
      KernelTrace trace = attach_preprocess(red.trace, pre, n, {});
      SolveResult s = clique_decomp(red.matrix, k, SolveConfig{}, order_vertices(red.trace, Ordering::kPushFront));
      REQUIRE(s.outcome == SolveOutcome::kYes);
      Decomposition d = lift_solution(*s.solution, trace);
      CHECK(test::reproduces(original, d.rows, d.gamma));
      ++lifted;
    }
  }
  CHECK(lifted == 400);
}

TEST_CASE("consume-k lifting gives isolated vertices their own clique") {
  WeightedGraph g = graph(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  PreprocessResult pre = preprocess(g, 2, IsolatedPolicy::kConsumeK);
  KernelResult r = kernelize(from_graph(pre.graph), pre.k, KernelVariant::kDecaf);
  KernelTrace trace = attach_preprocess(r.reduced().trace, pre, 4, {});
  trace.isolated_policy = IsolatedPolicy::kConsumeK;
  SolveResult s = clique_decomp(r.reduced().matrix, pre.k, SolveConfig{});
  REQUIRE(s.solution);
  Decomposition d = lift_solution(*s.solution, trace);
  CHECK(d.k == 2);
  CHECK(d.rows[3] != 0);
  CHECK(verify(from_graph(g), d).ok);
}
