#include "decaf/decomposition.hpp"

#include <stdexcept>

namespace decaf {

std::string signature_string(Signature s, int k) {
  std::string out(k, '0');
  for (int q = 0; q < k; ++q)
    if (s >> q & 1) out[q] = '1';
  return out;
}

std::vector<Clique> Decomposition::cliques() const {
  std::vector<Clique> out;
  for (int q = 0; q < k; ++q) {
    if (gamma[q] <= 0) continue;
    Clique c;
    c.weight = gamma[q];
    for (VertexId v = 0; v < vertex_count(); ++v)
      if (rows[v] >> q & 1) c.members.push_back(v);
    if (!c.members.empty()) out.push_back(std::move(c));
  }
  return out;
}

Decomposition Decomposition::from_cliques(int n, const std::vector<Clique>& cliques) {
  if (cliques.size() > 64) throw std::invalid_argument("more than 64 cliques");
  Decomposition d;
  d.k = static_cast<int>(cliques.size());
  d.rows.assign(n, 0);
  for (int q = 0; q < d.k; ++q) {
    d.gamma.push_back(cliques[q].weight);
    for (VertexId v : cliques[q].members) {
      if (v < 0 || v >= n)
        throw std::out_of_range("clique member " + std::to_string(v) + " outside [0," +
                                std::to_string(n) + ")");
      d.rows[v] |= Signature{1} << q;
    }
  }
  return d;
}

}  // namespace decaf
