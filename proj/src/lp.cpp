#include "decaf/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace decaf {
namespace {

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
  static Rational from(const Rational& x) { return x; }
  static bool positive(const Rational& x) { return sgn(x) > 0; }
  static bool negative(const Rational& x) { return sgn(x) < 0; }
  static bool zero(const Rational& x) { return sgn(x) == 0; }
  static Rational to_rational(const Rational& x) { return x; }
};

template <>
struct Arith<double> {
  static double from(const Rational& x) { return x.get_d(); }
  static bool positive(double x) { return x > kFloatEpsilon; }
  static bool negative(double x) { return x < -kFloatEpsilon; }
  static bool zero(double x) { return std::fabs(x) <= kFloatEpsilon; }
  static Rational to_rational(double x) { return x < 0 ? Rational(0) : Rational(x); }
};

// Phase-1 simplex on  M gamma + s = b,  gamma, s >= 0, b >= 0, minimizing sum(s).
// Artificial columns are dropped once they leave the basis.
template <class T>
std::optional<WeightVector> phase_one(int k, const std::vector<LpConstraint>& rows) {
  using A = Arith<T>;
  const int m = static_cast<int>(rows.size());
  const int cols = k + m;  // structural, then artificial
  std::vector<std::vector<T>> tab(m, std::vector<T>(cols + 1, T(0)));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    for (int q = 0; q < k; ++q)
      if (rows[r].mask >> q & 1) tab[r][q] = T(1);
    tab[r][k + r] = T(1);
    tab[r][cols] = A::from(rows[r].rhs);
    basis[r] = k + r;
  }
  std::vector<bool> dropped(cols, false);
  std::vector<bool> in_basis(cols, false);
  for (int r = 0; r < m; ++r) in_basis[basis[r]] = true;

  // Reduced costs of sum(artificials), kept as an extra tableau row.
  std::vector<T> cost(cols + 1, T(0));
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < k; ++j) cost[j] -= tab[r][j];
  for (int r = 0; r < m; ++r) cost[cols] -= tab[r][cols];

  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (dropped[j] || in_basis[j]) continue;
      if (A::negative(cost[j])) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    T best(0);
    for (int r = 0; r < m; ++r) {
      if (!A::positive(tab[r][enter])) continue;
      T ratio = tab[r][cols] / tab[r][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen in phase 1

    T pivot = tab[leave][enter];
    for (int j = 0; j <= cols; ++j) tab[leave][j] /= pivot;
    for (int r = 0; r < m; ++r) {
      if (r == leave || A::zero(tab[r][enter])) continue;
      T factor = tab[r][enter];
      for (int j = 0; j <= cols; ++j) tab[r][j] -= factor * tab[leave][j];
    }
    if (!A::zero(cost[enter])) {
      T factor = cost[enter];
      for (int j = 0; j <= cols; ++j) cost[j] -= factor * tab[leave][j];
    }
    in_basis[basis[leave]] = false;
    if (basis[leave] >= k) dropped[basis[leave]] = true;
    basis[leave] = enter;
    in_basis[enter] = true;
  }

  for (int r = 0; r < m; ++r)
    if (basis[r] >= k && !A::zero(tab[r][cols])) return std::nullopt;

  WeightVector gamma(k, Rational(0));
  for (int r = 0; r < m; ++r)
    if (basis[r] < k) gamma[basis[r]] = A::to_rational(tab[r][cols]);
  return gamma;
}

}  // namespace

std::optional<WeightVector> solve_feasibility(const LpProblem& problem, LpMode mode) {
  if (problem.k < 0 || problem.k > 64) throw std::invalid_argument("LP variable count out of range");
  const Signature allowed = full_mask(problem.k);
  // Deduplicate by mask; the same mask with two right-hand sides is infeasible.
  std::map<Signature, Rational> by_mask;
  for (const LpConstraint& c : problem.constraints) {
    if (c.mask & ~allowed) throw std::invalid_argument("LP constraint references a variable beyond k");
    if (c.rhs < 0) throw std::invalid_argument("LP right-hand side is negative");
    if (c.mask == 0) {
      if (c.rhs != 0) return std::nullopt;
      continue;
    }
    auto [it, inserted] = by_mask.emplace(c.mask, c.rhs);
    if (!inserted && it->second != c.rhs) {
      if (mode == LpMode::kRational) return std::nullopt;
      double x = it->second.get_d(), y = c.rhs.get_d();
      if (std::fabs(x - y) > kFloatEpsilon * std::max({1.0, std::fabs(x), std::fabs(y)}))
        return std::nullopt;
    }
  }
  std::vector<LpConstraint> rows;
  rows.reserve(by_mask.size());
  for (auto& [mask, rhs] : by_mask) rows.push_back({mask, rhs});
  if (rows.empty()) return WeightVector(problem.k, Rational(0));

  if (mode == LpMode::kRational) return phase_one<Rational>(problem.k, rows);
  return phase_one<double>(problem.k, rows);
}

LpProblem clique_weight_problem(const AnnotatedMatrix& a,
                                std::span<const std::optional<Signature>> rows, int k) {
  if (static_cast<int>(rows.size()) != a.size())
    throw std::invalid_argument("row count does not match matrix dimension");
  LpProblem p;
  p.k = k;
  std::vector<VertexId> assigned;
  for (VertexId i = 0; i < a.size(); ++i)
    if (rows[i]) assigned.push_back(i);
  for (std::size_t x = 0; x < assigned.size(); ++x) {
    VertexId i = assigned[x];
    if (!a.diagonal(i).is_wildcard()) p.constraints.push_back({*rows[i], a.diagonal(i).value()});
    for (std::size_t y = x + 1; y < assigned.size(); ++y) {
      VertexId j = assigned[y];
      p.constraints.push_back({*rows[i] & *rows[j], a.weight(i, j)});
    }
  }
  return p;
}

std::optional<WeightVector> infer_clique_weights(const AnnotatedMatrix& a,
                                                 std::span<const std::optional<Signature>> rows,
                                                 int k, LpMode mode) {
  return solve_feasibility(clique_weight_problem(a, rows, k), mode);
}

}  // namespace decaf
