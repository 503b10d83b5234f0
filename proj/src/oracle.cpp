#include "decaf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace decaf {

namespace {

bool close(double x, double y) {
  return std::fabs(x - y) <= kFloatEpsilon * std::max({1.0, std::fabs(x), std::fabs(y)});
}

}  // namespace

VerifyReport verify(const AnnotatedMatrix& a, const Decomposition& d, LpMode mode) {
  if (d.vertex_count() != a.size())
    throw std::invalid_argument("decomposition has " + std::to_string(d.vertex_count()) +
                                " rows, matrix has " + std::to_string(a.size()));
  if (static_cast<int>(d.gamma.size()) != d.k)
    throw std::invalid_argument("weight vector length does not match k");
  for (const Rational& g : d.gamma)
    if (g < 0) throw std::invalid_argument("negative clique weight");

  VerifyReport report;
  for (VertexId i = 0; i < a.size(); ++i) {
    for (VertexId j = i; j < a.size(); ++j) {
      Signature shared = d.rows[i] & d.rows[j];
      StarValue target = a.entry(i, j);
      if (shared == 0 && (target.is_wildcard() || target.value() == 0)) continue;
      Rational lhs(0);
      for (int q = 0; q < d.k; ++q)
        if (shared >> q & 1) lhs += d.gamma[q];
      bool ok = target.is_wildcard() ||
                (mode == LpMode::kRational ? lhs == target.value()
                                           : close(lhs.get_d(), target.value().get_d()));
      if (!ok) {
        report.ok = false;
        report.first_violation = Violation{i, j, lhs, target};
        return report;
      }
    }
  }
  return report;
}

std::string describe(const Violation& v) {
  std::string rhs = v.rhs.is_wildcard() ? "*" : format_rational(v.rhs.value());
  return "entry (" + std::to_string(v.i) + "," + std::to_string(v.j) + "): clique weights sum to " +
         format_rational(v.lhs) + " but the matrix holds " + rhs;
}

std::optional<Decomposition> brute_force_decide(const AnnotatedMatrix& a, int k,
                                                const OracleLimits& limits) {
  const int n = a.size();
  if (n > limits.max_n)
    throw OracleLimitError("oracle limited to n <= " + std::to_string(limits.max_n) + ", got " +
                           std::to_string(n));
  if (k < 0 || k > limits.max_k)
    throw OracleLimitError("oracle limited to 0 <= k <= " + std::to_string(limits.max_k) +
                           ", got " + std::to_string(k));

  std::vector<std::optional<Signature>> rows(n);
  std::optional<Decomposition> found;
  const Signature all = full_mask(k);

  std::function<bool(int, int)> extend = [&](int v, int used) -> bool {
    if (v == n) {
      auto gamma = infer_clique_weights(a, rows, k);
      if (!gamma) return false;
      Decomposition d;
      d.k = k;
      d.gamma = *gamma;
      for (auto& r : rows) d.rows.push_back(*r);
      found = std::move(d);
      return true;
    }
    for (Signature s = 0; s <= all; ++s) {
      // Canonical labelling: the columns in use always form a prefix 0..used-1.
      int top = s == 0 ? 0 : 64 - std::countl_zero(s);
      if (top > used) {
        Signature fresh = s >> used;
        if ((fresh & (fresh + 1)) != 0) continue;
      }
      rows[v] = s;
      if (infer_clique_weights(a, rows, k) && extend(v + 1, std::max(used, top))) return true;
      rows[v].reset();
    }
    return false;
  };
  extend(0, 0);
  return found;
}

std::optional<int> minimal_k(const AnnotatedMatrix& a, int k_cap, const OracleLimits& limits) {
  for (int k = 0; k <= k_cap; ++k)
    if (brute_force_decide(a, k, limits)) return k;
  return std::nullopt;
}

}  // namespace decaf
