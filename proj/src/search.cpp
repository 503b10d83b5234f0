#include "decaf/search.hpp"

#include "decaf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace decaf {

// ----------------------------------------------------------------- ordering

std::vector<VertexId> order_vertices(const KernelTrace& trace, Ordering strategy) {
  const int n = static_cast<int>(trace.vertex_map.size());
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (trace.removed.empty()) return order;

  std::vector<int> index(trace.original_size, -1);
  for (int t = 0; t < n; ++t) index[trace.vertex_map[t]] = t;
  std::vector<bool> is_rep(n, false);
  // Original position a kernel vertex stands for.
  std::vector<VertexId> position(trace.vertex_map.begin(), trace.vertex_map.end());
  for (const ReductionRecord& r : trace.removed) {
    int t = index[r.representative];
    if (t < 0) continue;
    is_rep[t] = true;
    if (strategy == Ordering::kArbitrary && !r.removed.empty())
      position[t] = std::max(position[t], *std::max_element(r.removed.begin(), r.removed.end()));
  }

  switch (strategy) {
    case Ordering::kKeepFirst:
      break;
    case Ordering::kArbitrary:
      std::stable_sort(order.begin(), order.end(),
                       [&](VertexId x, VertexId y) { return position[x] < position[y]; });
      break;
    case Ordering::kPushFront:
    case Ordering::kPushBack: {
      bool front = strategy == Ordering::kPushFront;
      std::stable_partition(order.begin(), order.end(),
                            [&](VertexId v) { return is_rep[v] == front; });
      break;
    }
  }
  return order;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::kArbitrary:
      return "arbitrary";
    case Ordering::kPushFront:
      return "push_front";
    case Ordering::kPushBack:
      return "push_back";
    case Ordering::kKeepFirst:
      return "keep_first";
  }
  return "?";
}

std::optional<Ordering> parse_ordering(const std::string& text) {
  for (Ordering o : {Ordering::kArbitrary, Ordering::kPushFront, Ordering::kPushBack,
                     Ordering::kKeepFirst})
    if (to_string(o) == text) return o;
  return std::nullopt;
}

std::string to_string(SolveOutcome o) {
  switch (o) {
    case SolveOutcome::kYes:
      return "yes";
    case SolveOutcome::kNo:
      return "no";
    case SolveOutcome::kTimeout:
      return "timeout";
  }
  return "?";
}

// ----------------------------------------------------------- SearchInstance

SearchInstance::SearchInstance(const AnnotatedMatrix& a, int k, std::vector<VertexId> order)
    : matrix_(&a), n_(a.size()), k_(k), order_(std::move(order)) {
  if (k < 0 || k > kMaxK)
    throw std::invalid_argument("k=" + std::to_string(k) + " outside [0," + std::to_string(kMaxK) + "]");
  if (order_.empty()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
  }
  if (static_cast<int>(order_.size()) != n_) throw std::invalid_argument("order is not a permutation");
  {
    std::vector<bool> seen(n_, false);
    for (VertexId v : order_) {
      if (v < 0 || v >= n_ || seen[v]) throw std::invalid_argument("order is not a permutation");
      seen[v] = true;
    }
  }

  values_.emplace_back(0);
  index_.emplace(Rational(0), 0);
  auto intern = [&](const Rational& x) {
    auto [it, inserted] = index_.emplace(x, static_cast<int>(values_.size()));
    if (inserted) values_.push_back(x);
    return it->second;
  };
  ids_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (VertexId i = 0; i < n_; ++i) {
    const StarValue& d = a.diagonal(i);
    ids_[static_cast<std::size_t>(i) * n_ + i] = d.is_wildcard() ? kWildcard : intern(d.value());
    for (const auto& [j, w] : a.row(i)) ids_[static_cast<std::size_t>(i) * n_ + j] = intern(w);
  }
  for (const Rational& x : values_) values_d_.push_back(x.get_d());

  blocks_ = compute_blocks(a);
  zero_allowed_.resize(n_);
  for (VertexId v = 0; v < n_; ++v) {
    const StarValue& d = a.diagonal(v);
    zero_allowed_[v] = d.is_wildcard() ? a.degree(v) == 0 : d.value() == 0;
  }
}

int SearchInstance::lookup(const Rational& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? kNoValue : it->second;
}

int SearchInstance::lookup(double x) const {
  for (std::size_t t = 0; t < values_d_.size(); ++t) {
    double y = values_d_[t];
    if (std::fabs(x - y) <= kFloatEpsilon * std::max({1.0, std::fabs(x), std::fabs(y)}))
      return static_cast<int>(t);
  }
  return kNoValue;
}

// -------------------------------------------------------------- WeightTable

namespace {
constexpr int kMaxCachedK = 20;
}

WeightTable::WeightTable(const SearchInstance& inst, LpMode mode) : inst_(&inst), mode_(mode) {
  if (inst.k() <= kMaxCachedK) {
    cache_.assign(std::size_t{1} << inst.k(), 0);
    stamp_.assign(std::size_t{1} << inst.k(), 0);
  }
  gamma_.assign(inst.k(), Rational(0));
  gamma_d_.assign(inst.k(), 0.0);
  generation_ = 1;
}

void WeightTable::reset(const WeightVector& gamma) {
  gamma_ = gamma;
  for (std::size_t q = 0; q < gamma_.size(); ++q) gamma_d_[q] = gamma_[q].get_d();
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
}

int WeightTable::compute(Signature mask) const {
  if (mode_ == LpMode::kRational) {
    Rational sum(0);
    for (Signature m = mask; m; m &= m - 1) sum += gamma_[std::countr_zero(m)];
    return inst_->lookup(sum);
  }
  double sum = 0;
  for (Signature m = mask; m; m &= m - 1) sum += gamma_d_[std::countr_zero(m)];
  return inst_->lookup(sum);
}

int WeightTable::id_of_sum(Signature mask) const {
  if (mask == 0) return 0;
  if (cache_.empty()) return compute(mask);
  if (stamp_[mask] != generation_) {
    cache_[mask] = compute(mask);
    stamp_[mask] = generation_;
  }
  return cache_[mask];
}

// ---------------------------------------------------------- PartialSolution

PartialSolution::PartialSolution(const SearchInstance& inst)
    : inst_(&inst), sig_(inst.size(), 0), kind_(inst.size(), RowKind::kNull) {
  if (inst.k() <= kMaxCachedK) dense_counts_.assign(std::size_t{1} << inst.k(), 0);
}

int PartialSolution::count(Signature s) const {
  if (!dense_counts_.empty()) return dense_counts_[s];
  auto it = sparse_counts_.find(s);
  return it == sparse_counts_.end() ? 0 : it->second;
}

void PartialSolution::add_count(Signature s, int delta) {
  if (!dense_counts_.empty()) {
    dense_counts_[s] += delta;
    return;
  }
  int& c = sparse_counts_[s];
  c += delta;
  if (c == 0) sparse_counts_.erase(s);
}

void PartialSolution::assign(VertexId v, Signature s, RowKind kind) {
  if (kind_[v] != RowKind::kNull) throw std::logic_error("row already assigned");
  sig_[v] = s;
  kind_[v] = kind;
  (kind == RowKind::kBasis ? basis_ : filled_).push_back(v);
  add_count(s, +1);
}

void PartialSolution::unassign_last_basis() {
  VertexId v = basis_.back();
  basis_.pop_back();
  add_count(sig_[v], -1);
  kind_[v] = RowKind::kNull;
  sig_[v] = 0;
}

void PartialSolution::clear_filled() {
  for (VertexId v : filled_) {
    add_count(sig_[v], -1);
    kind_[v] = RowKind::kNull;
    sig_[v] = 0;
  }
  filled_.clear();
}

Signature PartialSolution::forbidden_mask(VertexId v) const {
  Signature mask = 0;
  for (const auto* rows : {&basis_, &filled_})
    for (VertexId u : *rows)
      if (u != v && inst_->value_id(v, u) == 0) mask |= sig_[u];
  return mask;
}

Signature PartialSolution::basis_columns() const {
  Signature mask = 0;
  for (VertexId u : basis_) mask |= sig_[u];
  return mask;
}

int PartialSolution::count_outside_block(VertexId v, Signature s) const {
  int total = count(s);
  if (total == 0) return 0;
  for (VertexId u : inst_->block_members(v))
    if (u != v && kind_[u] != RowKind::kNull && sig_[u] == s) --total;
  return total;
}

// ------------------------------------------------------------- operations

bool is_w_compatible(const SearchInstance& inst, const PartialSolution& state,
                     const WeightTable& w, VertexId i, Signature v) {
  int diag = inst.value_id(i, i);
  if (diag != SearchInstance::kWildcard && w.id_of_sum(v) != diag) return false;
  for (const auto* rows : {&state.basis_rows(), &state.filled_rows()})
    for (VertexId j : *rows)
      if (j != i && w.id_of_sum(v & state.signature(j)) != inst.value_id(i, j)) return false;
  return true;
}

std::vector<Signature> candidate_signatures(const SearchInstance& inst,
                                            const PartialSolution& state, VertexId v,
                                            const SolveConfig& cfg, bool basis_row) {
  std::vector<Signature> out;
  for_each_candidate(inst, state, v, cfg, basis_row, [&](Signature s) {
    out.push_back(s);
    return false;
  });
  return out;
}

namespace {

class Deadline {
 public:
  explicit Deadline(double seconds)
      : active_(seconds > 0),
        end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds > 0 ? seconds : 0))) {}
  bool passed() const { return active_ && std::chrono::steady_clock::now() >= end_; }

 private:
  bool active_;
  std::chrono::steady_clock::time_point end_;
};

struct TimeoutSignal {};

FillResult fill_impl(const SearchInstance& inst, PartialSolution& state, const WeightTable& w,
                     const SolveConfig& cfg, SolveStats* stats, const Deadline* deadline) {
  for (VertexId v : inst.order()) {
    if (state.assigned(v)) continue;
    bool placed = for_each_candidate(inst, state, v, cfg, false, [&](Signature s) {
      if (stats) {
        ++stats->signatures_tested;
        if (deadline && (stats->signatures_tested & 4095) == 0 && deadline->passed())
          throw TimeoutSignal{};
      }
      if (!is_w_compatible(inst, state, w, v, s)) return false;
      state.assign(v, s, PartialSolution::RowKind::kFilled);
      return true;
    });
    if (!placed) return {v};
  }
  return {};
}

class Search {
 public:
  Search(const SearchInstance& inst, const SolveConfig& cfg)
      : inst_(inst), cfg_(cfg), state_(inst), table_(inst, cfg.lp_mode),
        deadline_(cfg.timeout_seconds), max_basis_(2 * inst.k()) {}

  SolveResult run() {
    SolveResult result;
    auto start = std::chrono::steady_clock::now();
    try {
      if (inst_.size() == 0) {
        Decomposition d;
        d.k = inst_.k();
        d.gamma.assign(inst_.k(), Rational(0));
        solution_ = std::move(d);
      } else if (inst_.k() > 0) {
        place_basis_row(inst_.order().front());
      }
      result.outcome = solution_ ? SolveOutcome::kYes : SolveOutcome::kNo;
    } catch (const TimeoutSignal&) {
      result.outcome = SolveOutcome::kTimeout;
    }
    stats_.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    stats_.outcome = result.outcome;
    result.stats = stats_;
    result.solution = std::move(solution_);
    return result;
  }

 private:
  std::optional<WeightVector> solve_lp() {
    if (cfg_.count_lp_runs) ++stats_.lp_runs;
    if (deadline_.passed()) throw TimeoutSignal{};
    LpProblem p;
    p.k = inst_.k();
    const auto& basis = state_.basis_rows();
    for (std::size_t x = 0; x < basis.size(); ++x) {
      VertexId i = basis[x];
      int d = inst_.value_id(i, i);
      if (d != SearchInstance::kWildcard)
        p.constraints.push_back({state_.signature(i), inst_.values()[d]});
      for (std::size_t y = x + 1; y < basis.size(); ++y) {
        VertexId j = basis[y];
        p.constraints.push_back(
            {state_.signature(i) & state_.signature(j), inst_.values()[inst_.value_id(i, j)]});
      }
    }
    return solve_feasibility(p, cfg_.lp_mode);
  }

  // Tries every admissible signature for the basis row at `row`; returns true
  // once a full decomposition is found.
  bool place_basis_row(VertexId row) {
    return for_each_candidate(inst_, state_, row, cfg_, true, [&](Signature s) {
      ++stats_.signatures_tested;
      state_.assign(row, s, PartialSolution::RowKind::kBasis);
      stats_.max_basis_rows =
          std::max(stats_.max_basis_rows, static_cast<int>(state_.basis_rows().size()));
      if (auto gamma = solve_lp()) {
        table_.reset(*gamma);
        FillResult fill = fill_impl(inst_, state_, table_, cfg_, &stats_, &deadline_);
        if (fill.complete()) {
          capture();
          return true;
        }
        state_.clear_filled();
        if (static_cast<int>(state_.basis_rows().size()) < max_basis_ &&
            place_basis_row(fill.stuck))
          return true;
      }
      state_.unassign_last_basis();
      ++stats_.backtracks;
      return false;
    });
  }

  void capture() {
    Decomposition d;
    d.k = inst_.k();
    d.gamma = table_.gamma();
    d.rows.resize(inst_.size());
    for (VertexId v = 0; v < inst_.size(); ++v) d.rows[v] = state_.signature(v);
    VerifyReport report = verify(inst_.matrix(), d, cfg_.lp_mode);
    if (!report.ok)
      throw std::logic_error("search produced an invalid decomposition: " +
                             describe(*report.first_violation));
    solution_ = std::move(d);
  }

  const SearchInstance& inst_;
  const SolveConfig& cfg_;
  PartialSolution state_;
  WeightTable table_;
  Deadline deadline_;
  int max_basis_;
  SolveStats stats_;
  std::optional<Decomposition> solution_;
};

}  // namespace

FillResult fill_non_basis(const SearchInstance& inst, PartialSolution& state, const WeightTable& w,
                          const SolveConfig& cfg, SolveStats* stats) {
  return fill_impl(inst, state, w, cfg, stats, nullptr);
}

SolveResult clique_decomp(const AnnotatedMatrix& a, int k, const SolveConfig& cfg,
                          std::vector<VertexId> order) {
  if (a.size() >= 1 && (k < 1 || k > kMaxK))
    throw std::invalid_argument("k=" + std::to_string(k) + " outside [1," + std::to_string(kMaxK) + "]");
  SearchInstance inst(a, k, std::move(order));
  return Search(inst, cfg).run();
}

}  // namespace decaf
