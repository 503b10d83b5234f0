#include "decaf/lp.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace decaf;

namespace {

LpProblem lp(int k, std::vector<std::pair<Signature, int>> cs) {
  LpProblem p{k, {}};
  for (auto [m, r] : cs) p.constraints.push_back({m, Rational(r)});
  return p;
}

}  // namespace

TEST_CASE("solve_feasibility examples") {
  auto a = solve_feasibility(lp(1, {{0b1, 5}}));
  REQUIRE(a);
  CHECK((*a)[0] == 5);
  CHECK_FALSE(solve_feasibility(lp(2, {{0b11, 1}, {0b11, 2}})));
  auto c = solve_feasibility(lp(2, {{0b11, 3}, {0b10, 1}}));
  REQUIRE(c);
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 1);
  CHECK_FALSE(solve_feasibility(lp(2, {{0, 1}})));
  auto empty = solve_feasibility(lp(3, {}));
  REQUIRE(empty);
  CHECK(*empty == WeightVector(3, Rational(0)));
  CHECK_THROWS_AS(solve_feasibility(lp(2, {{0b100, 1}})), std::invalid_argument);
}

TEST_CASE("infer_clique_weights examples") {
  AnnotatedMatrix a = from_graph(test::triangle211());
  std::vector<std::optional<Signature>> rows = {0b11, 0b11, 0b01};
  auto g = infer_clique_weights(a, rows, 2);
  REQUIRE(g);
  CHECK((*g)[0] == 1);
  CHECK((*g)[1] == 1);

  AnnotatedMatrix b = from_graph(test::graph(3, {{0, 1, 2}, {0, 2, 1}}));
  std::vector<std::optional<Signature>> same = {0b1, 0b1, 0b1};
  CHECK_FALSE(infer_clique_weights(b, same, 1));

  std::vector<std::optional<Signature>> one = {0b01, std::nullopt, std::nullopt};
  auto z = infer_clique_weights(a, one, 2);
  REQUIRE(z);
  CHECK(*z == WeightVector(2, Rational(0)));
}

TEST_CASE("property: LP agrees with support enumeration") {
  std::mt19937_64 rng(11);
  int feasible = 0;
  for (int iter = 0; iter < 600; ++iter) {
    const int k = std::uniform_int_distribution<int>(1, 4)(rng);
    const int m = std::uniform_int_distribution<int>(0, 6)(rng);
    LpProblem p{k, {}};
    for (int c = 0; c < m; ++c)
      p.constraints.push_back({std::uniform_int_distribution<Signature>(0, full_mask(k))(rng),
                               Rational(std::uniform_int_distribution<int>(0, 5)(rng))});
    auto r = solve_feasibility(p);
    const bool expect = test::lp_feasible_by_enumeration(p);
    CHECK(r.has_value() == expect);
    if (r) {
      ++feasible;
      CHECK(test::satisfies(p, *r));
    }
    // Duplicating a constraint never changes the status.
    if (m > 0) {
      LpProblem d = p;
      d.constraints.push_back(p.constraints[0]);
      CHECK(solve_feasibility(d).has_value() == r.has_value());
    }
    // Adding a constraint never makes an infeasible system feasible.
    if (!r) {
      LpProblem more = p;
      more.constraints.push_back({full_mask(k), Rational(1)});
      CHECK_FALSE(solve_feasibility(more));
    }
    auto f = solve_feasibility(p, LpMode::kFloat);
    CHECK(f.has_value() == expect);
  }
  CHECK(feasible > 50);
}
