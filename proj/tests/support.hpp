#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/instance.hpp"
#include "decaf/lp.hpp"

#include <optional>
#include <random>
#include <vector>

namespace decaf::test {

inline WeightedGraph graph(int n, std::vector<std::tuple<int, int, int>> edges) {
  std::vector<Edge> out;
  for (auto [u, v, w] : edges) out.push_back({u, v, Rational(w)});
  return WeightedGraph(n, std::move(out));
}

// a=0, b=1, c=2 with ab=2, ac=1, bc=1.
inline WeightedGraph triangle211() { return graph(3, {{0, 1, 2}, {0, 2, 1}, {1, 2, 1}}); }

inline WeightedGraph complete(int n, int w) {
  std::vector<std::tuple<int, int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v, w);
  return graph(n, e);
}

inline WeightedGraph path3() { return graph(3, {{0, 1, 1}, {1, 2, 1}}); }

// Random graph built from `cliques` random cliques with weights in [1, wmax];
// the planted set is a witness for k = cliques.
inline WeightedGraph random_planted(std::mt19937_64& rng, int n, int cliques, int wmax) {
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, 0));
  std::uniform_int_distribution<int> size(std::min(2, n), n);
  std::uniform_int_distribution<int> weight(1, wmax);
  for (int c = 0; c < cliques; ++c) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    int s = size(rng);
    int cw = weight(rng);
    for (int x = 0; x < s; ++x)
      for (int y = x + 1; y < s; ++y) {
        w[perm[x]][perm[y]] += cw;
        w[perm[y]][perm[x]] += cw;
      }
  }
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (w[u][v] > 0) edges.push_back({u, v, w[u][v]});
  return WeightedGraph(n, edges);
}

// Random graph with independent edges and weights in [1, wmax].
inline WeightedGraph random_graph(std::mt19937_64& rng, int n, double density, int wmax) {
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> weight(1, wmax);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(rng)) edges.push_back({u, v, Rational(weight(rng))});
  return WeightedGraph(n, edges);
}

// Independent LP feasibility check: a feasible system {x >= 0, Ax = b} has a
// basic feasible solution, i.e. one supported on linearly independent columns.
// Every support set is tried with exact Gauss-Jordan elimination.
inline bool lp_feasible_by_enumeration(const LpProblem& p) {
  const int k = p.k;
  const int m = static_cast<int>(p.constraints.size());
  for (unsigned support = 0; support < (1u << k); ++support) {
    std::vector<int> cols;
    for (int q = 0; q < k; ++q)
      if (support >> q & 1) cols.push_back(q);
    const int c = static_cast<int>(cols.size());
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(c + 1));
    for (int r = 0; r < m; ++r) {
      for (int j = 0; j < c; ++j) t[r][j] = (p.constraints[r].mask >> cols[j] & 1) ? 1 : 0;
      t[r][c] = p.constraints[r].rhs;
    }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int j = 0; j < c && rank < m; ++j) {
      int piv = -1;
      for (int r = rank; r < m; ++r)
        if (t[r][j] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(t[rank], t[piv]);
      Rational inv = 1 / t[rank][j];
      for (int x = 0; x <= c; ++x) t[rank][x] *= inv;
      for (int r = 0; r < m; ++r)
        if (r != rank && t[r][j] != 0) {
          Rational f = t[r][j];
          for (int x = 0; x <= c; ++x) t[r][x] -= f * t[rank][x];
        }
      pivot_col.push_back(j);
      ++rank;
    }
    if (rank != c) continue;  // dependent columns: a smaller support covers it
    bool consistent = true;
    for (int r = rank; r < m; ++r)
      if (t[r][c] != 0) consistent = false;
    if (!consistent) continue;
    bool nonneg = true;
    for (int r = 0; r < rank; ++r)
      if (t[r][c] < 0) nonneg = false;
    if (nonneg) return true;
  }
  return false;
}

inline bool satisfies(const LpProblem& p, const WeightVector& g) {
  if (static_cast<int>(g.size()) != p.k) return false;
  for (const Rational& x : g)
    if (x < 0) return false;
  for (const LpConstraint& c : p.constraints) {
    Rational sum = 0;
    for (int q = 0; q < p.k; ++q)
      if (c.mask >> q & 1) sum += g[q];
    if (sum != c.rhs) return false;
  }
  return true;
}

// Independent entrywise check of A =* B W B^T.
inline bool reproduces(const AnnotatedMatrix& a, const std::vector<Signature>& rows,
                       const WeightVector& gamma) {
  const int n = a.size();
  if (static_cast<int>(rows.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational sum = 0;
      for (std::size_t q = 0; q < gamma.size(); ++q)
        if ((rows[i] >> q & 1) && (rows[j] >> q & 1)) sum += gamma[q];
      if (i == j) {
        if (!a.diagonal(i).is_wildcard() && a.diagonal(i).value() != sum) return false;
      } else if (a.weight(i, j) != sum) {
        return false;
      }
    }
  return true;
}

}  // namespace decaf::test
