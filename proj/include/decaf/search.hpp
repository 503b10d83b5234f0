#pragma once

#include "decaf/decomposition.hpp"
#include "decaf/instance.hpp"
#include "decaf/kernel.hpp"
#include "decaf/lp.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace decaf {

enum class Ordering { kArbitrary, kPushFront, kPushBack, kKeepFirst };

struct SolveConfig {
  Ordering ordering = Ordering::kPushFront;
  bool srule1 = true;
  bool srule2 = true;
  bool column_symmetry_breaking = false;
  LpMode lp_mode = LpMode::kRational;
  double timeout_seconds = 0;  // <= 0: no limit
  bool count_lp_runs = true;
};

enum class SolveOutcome { kYes, kNo, kTimeout };

struct SolveStats {
  long long lp_runs = 0;
  long long signatures_tested = 0;
  long long backtracks = 0;
  int max_basis_rows = 0;
  double wall_ms = 0;
  SolveOutcome outcome = SolveOutcome::kNo;
};

struct SolveResult {
  SolveOutcome outcome = SolveOutcome::kNo;
  std::optional<Decomposition> solution;
  SolveStats stats;
};

// Vertex order for signature assignment on a kernel. Representatives of
// reduced blocks go first (push_front) or last (push_back); keep_first keeps
// kernel order; arbitrary places each representative where the last member of
// its original block stood.
std::vector<VertexId> order_vertices(const KernelTrace& trace, Ordering strategy);

// Read-only tables shared by every step of one search.
class SearchInstance {
 public:
  static constexpr int kWildcard = -1;
  static constexpr int kNoValue = -2;

  // `order` empty means identity order.
  SearchInstance(const AnnotatedMatrix& a, int k, std::vector<VertexId> order = {});

  int size() const { return n_; }
  int k() const { return k_; }
  const AnnotatedMatrix& matrix() const { return *matrix_; }
  const std::vector<VertexId>& order() const { return order_; }

  // Interned entry: 0 for zero, kWildcard for a diagonal wildcard, otherwise an
  // index into values().
  int value_id(VertexId i, VertexId j) const { return ids_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<Rational>& values() const { return values_; }
  const std::vector<double>& values_as_double() const { return values_d_; }
  int lookup(const Rational& x) const;
  int lookup(double x) const;

  const BlockPartition& blocks() const { return blocks_; }
  // Twins of v other than v itself (empty for singleton blocks).
  const std::vector<VertexId>& block_members(VertexId v) const {
    return blocks_.blocks[blocks_.block_of[v]];
  }
  bool zero_signature_allowed(VertexId v) const { return zero_allowed_[v]; }

 private:
  const AnnotatedMatrix* matrix_;
  int n_;
  int k_;
  std::vector<VertexId> order_;
  std::vector<int> ids_;
  std::vector<Rational> values_;
  std::vector<double> values_d_;
  std::map<Rational, int> index_;
  BlockPartition blocks_;
  std::vector<bool> zero_allowed_;
};

// Maps a clique subset to the interned matrix value equal to its total
// weight, caching results per weight vector.
class WeightTable {
 public:
  WeightTable(const SearchInstance& inst, LpMode mode);

  void reset(const WeightVector& gamma);
  const WeightVector& gamma() const { return gamma_; }
  int id_of_sum(Signature mask) const;

 private:
  int compute(Signature mask) const;

  const SearchInstance* inst_;
  LpMode mode_;
  WeightVector gamma_;
  std::vector<double> gamma_d_;
  mutable std::vector<int> cache_;
  mutable std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

// Assigned rows of B plus the bookkeeping S-rule 2 needs.
class PartialSolution {
 public:
  enum class RowKind : std::uint8_t { kNull, kBasis, kFilled };

  explicit PartialSolution(const SearchInstance& inst);

  bool assigned(VertexId v) const { return kind_[v] != RowKind::kNull; }
  RowKind kind(VertexId v) const { return kind_[v]; }
  Signature signature(VertexId v) const { return sig_[v]; }
  const std::vector<VertexId>& basis_rows() const { return basis_; }
  const std::vector<VertexId>& filled_rows() const { return filled_; }
  int assigned_count() const { return static_cast<int>(basis_.size() + filled_.size()); }

  void assign(VertexId v, Signature s, RowKind kind);
  void unassign_last_basis();
  void clear_filled();

  // OR of the signatures of assigned non-neighbours of v.
  Signature forbidden_mask(VertexId v) const;
  // Columns used by basis rows.
  Signature basis_columns() const;
  // Assigned vertices outside v's block carrying signature s.
  int count_outside_block(VertexId v, Signature s) const;

 private:
  int count(Signature s) const;
  void add_count(Signature s, int delta);

  const SearchInstance* inst_;
  std::vector<Signature> sig_;
  std::vector<RowKind> kind_;
  std::vector<VertexId> basis_;
  std::vector<VertexId> filled_;
  std::vector<int> dense_counts_;
  std::unordered_map<Signature, int> sparse_counts_;
};

// True iff v reproduces A_ij against every assigned row j != i under W, and
// v's own clique weight star-matches A_ii.
bool is_w_compatible(const SearchInstance& inst, const PartialSolution& state,
                     const WeightTable& w, VertexId i, Signature v);

// Calls f(s) for each admissible signature of unassigned v in ascending order
// until f returns true. Basis rows additionally obey column symmetry breaking
// when enabled. Returns true iff f accepted a signature.
template <class F>
bool for_each_candidate(const SearchInstance& inst, const PartialSolution& state, VertexId v,
                        const SolveConfig& cfg, bool basis_row, F&& f);

std::vector<Signature> candidate_signatures(const SearchInstance& inst,
                                            const PartialSolution& state, VertexId v,
                                            const SolveConfig& cfg, bool basis_row = false);

struct FillResult {
  // First row (in order) with no admissible W-compatible signature, or -1
  // when every row is assigned.
  VertexId stuck = -1;
  bool complete() const { return stuck < 0; }
};

// Greedy fill of every null row in order, first admissible compatible
// signature wins. Filled rows are marked kFilled.
FillResult fill_non_basis(const SearchInstance& inst, PartialSolution& state, const WeightTable& w,
                          const SolveConfig& cfg, SolveStats* stats = nullptr);

// LP-guided backtracking over basis rows (at most 2k per branch). `order`
// empty means identity order. Returned solutions always verify against `a`.
SolveResult clique_decomp(const AnnotatedMatrix& a, int k, const SolveConfig& cfg,
                          std::vector<VertexId> order = {});

std::string to_string(Ordering o);
std::string to_string(SolveOutcome o);
std::optional<Ordering> parse_ordering(const std::string& text);

// ---------------------------------------------------------------------------

template <class F>
bool for_each_candidate(const SearchInstance& inst, const PartialSolution& state, VertexId v,
                        const SolveConfig& cfg, bool basis_row, F&& f) {
  const int k = inst.k();
  Signature allowed = full_mask(k);
  if (cfg.srule1) allowed &= ~state.forbidden_mask(v);

  int used_prefix = 0;
  const bool symmetry = basis_row && cfg.column_symmetry_breaking;
  if (symmetry) used_prefix = popcount(state.basis_columns());

  // Signatures of already assigned twins.
  std::vector<Signature> twin_sigs;
  bool identical = false;
  bool distinct = false;
  Signature identical_sig = 0;
  const auto& members = inst.block_members(v);
  if (cfg.srule2 && members.size() >= 2) {
    twin_sigs.reserve(members.size());
    for (VertexId u : members)
      if (u != v && state.assigned(u)) twin_sigs.push_back(state.signature(u));
    const std::size_t twin_count = twin_sigs.size();
    for (std::size_t x = 0; x < twin_count && !identical; ++x)
      for (std::size_t y = x + 1; y < twin_count; ++y)
        if (twin_sigs[x] == twin_sigs[y]) {
          identical = true;
          identical_sig = twin_sigs[x];
          break;
        }
    distinct = !identical && twin_count >= 2;
  }

  Signature s = 0;
  for (;;) {
    bool ok = true;
    if (s == 0 && !inst.zero_signature_allowed(v)) ok = false;
    if (ok && symmetry) {
      Signature high = s >> used_prefix;
      ok = (high & (high + 1)) == 0;
    }
    if (ok && cfg.srule2) {
      if (identical) {
        ok = s == identical_sig;
      } else {
        for (Signature t : twin_sigs) {
          if (!ok) break;
          if (s == t) {
            ok = !distinct;
          } else {
            Signature both = s & t;
            if (both == s || both == t) ok = false;
          }
        }
      }
      if (ok && s != 0 && state.count_outside_block(v, s) > 0) ok = false;
    }
    if (ok && f(s)) return true;
    Signature next = ((s | ~allowed) + 1) & allowed;
    if (next == 0) break;
    s = next;
  }
  return false;
}

}  // namespace decaf
