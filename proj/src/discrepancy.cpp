#include "stardisc/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "stardisc/errors.hpp"
#include "stardisc/rng.hpp"

namespace stardisc {

double local_discrepancy(const PointSet& ps, const AnchoredBox& box) {
  if (box.dim() != ps.dim())
    throw UsageError("dimension mismatch between point set and box");
  const double frac = static_cast<double>(count_in_box(ps, box, Closure::open)) /
                      static_cast<double>(ps.size());
  return frac - volume(box);
}

namespace {

struct ScanResult {
  double value = 0.0;
  std::optional<std::vector<double>> witness;
};

// Exact maximum of the two grid terms over the critical grid of a counted
// multiset. The denominator N may exceed the number of stored points (the
// literal padded-anchor evaluation filters points but keeps N).
//
// Per level the pass sets for both box closures grow monotonically along
// the sorted grid sweep, so per-point stamps advance with two pointers and
// are rolled back on exit; every grid node costs O(1) amortized after the
// per-dimension sorts.
class GridScanner {
 public:
  GridScanner(std::vector<std::vector<double>> cols, std::int64_t denominator)
      : cols_(std::move(cols)), inv_n_(1.0 / static_cast<double>(denominator)) {
    d_ = cols_.size();
    m_ = d_ == 0 ? 0 : cols_.front().size();
    grid_.resize(d_);
    order_.resize(d_);
    for (std::size_t j = 0; j < d_; ++j) {
      auto& g = grid_[j];
      g = cols_[j];
      g.push_back(1.0);
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
      auto& ord = order_[j];
      ord.resize(m_);
      std::iota(ord.begin(), ord.end(), std::uint32_t{0});
      std::stable_sort(ord.begin(), ord.end(),
                       [&](std::uint32_t a, std::uint32_t b) {
                         return cols_[j][a] < cols_[j][b];
                       });
    }
  }

  // Total grid size; saturates at uint64 max.
  std::uint64_t node_count() const {
    std::uint64_t total = 1;
    for (const auto& g : grid_) {
      const std::uint64_t s = g.size();
      if (total > std::numeric_limits<std::uint64_t>::max() / s)
        return std::numeric_limits<std::uint64_t>::max();
      total *= s;
    }
    return total;
  }

  // floor must be a valid lower bound for the scanned maximum; the scan
  // returns max(floor, grid maximum) and a witness only for values that
  // strictly beat the floor.
  ScanResult scan(double floor_value) {
    best_ = std::max(0.0, floor_value);
    witness_.reset();
    stamp_open_.assign(m_, 0);
    stamp_closed_.assign(m_, 0);
    undo_open_.assign(d_, {});
    undo_closed_.assign(d_, {});
    path_.assign(d_, 0.0);
    scan_level(0, 1.0);
    ScanResult r;
    r.value = best_;
    r.witness = witness_;
    return r;
  }

  // Lower bound from `effort` sampled grid nodes (both terms per node).
  ScanResult sample(std::uint64_t effort, std::uint64_t seed) {
    CounterRng rng(seed);
    best_ = 0.0;
    witness_.reset();
    std::vector<double> node(d_);
    for (std::uint64_t trial = 0; trial < effort; ++trial) {
      double vol = 1.0;
      for (std::size_t j = 0; j < d_; ++j) {
        node[j] = grid_[j][rng.next_below(grid_[j].size())];
        vol *= node[j];
      }
      std::int64_t open_cnt = 0, closed_cnt = 0;
      for (std::size_t p = 0; p < m_; ++p) {
        bool open_in = true, closed_in = true;
        for (std::size_t j = 0; j < d_ && closed_in; ++j) {
          const double c = cols_[j][p];
          const double v = node[j];
          if (!(c < v)) open_in = false;
          if (v < 1.0 ? !(c <= v) : !(c < 1.0)) closed_in = false;
        }
        if (open_in && closed_in) ++open_cnt;  // open box is contained
        if (closed_in) ++closed_cnt;
      }
      update(vol - static_cast<double>(open_cnt) * inv_n_, node);
      update(static_cast<double>(closed_cnt) * inv_n_ - vol, node);
    }
    ScanResult r;
    r.value = best_;
    r.witness = witness_;
    return r;
  }

 private:
  void update(double term, const std::vector<double>& node) {
    if (term > best_) {
      best_ = term;
      witness_ = node;
    }
  }

  void scan_level(std::size_t level, double vol_prefix) {
    const auto& g = grid_[level];
    const auto& ord = order_[level];
    const auto& col = cols_[level];
    auto& undo_o = undo_open_[level];
    auto& undo_c = undo_closed_[level];
    undo_o.clear();
    undo_c.clear();
    std::size_t po = 0, pc = 0;
    std::uint32_t open_cnt = 0, closed_cnt = 0;
    const auto stamp = static_cast<std::uint32_t>(level);
    const bool last = level + 1 == d_;

    for (double v : g) {
      while (po < m_ && col[ord[po]] < v) {
        const std::uint32_t p = ord[po++];
        if (stamp_open_[p] == stamp) {
          stamp_open_[p] = stamp + 1;
          undo_o.push_back(p);
          ++open_cnt;
        }
      }
      if (v < 1.0) {
        while (pc < m_ && col[ord[pc]] <= v) {
          const std::uint32_t p = ord[pc++];
          if (stamp_closed_[p] == stamp) {
            stamp_closed_[p] = stamp + 1;
            undo_c.push_back(p);
            ++closed_cnt;
          }
        }
      } else {
        // anchors at 1 keep the box half-open there
        while (pc < m_ && col[ord[pc]] < 1.0) {
          const std::uint32_t p = ord[pc++];
          if (stamp_closed_[p] == stamp) {
            stamp_closed_[p] = stamp + 1;
            undo_c.push_back(p);
            ++closed_cnt;
          }
        }
      }
      const double vol = vol_prefix * v;
      path_[level] = v;
      if (last) {
        const double open_term =
            vol - static_cast<double>(open_cnt) * inv_n_;
        if (open_term > best_) {
          best_ = open_term;
          witness_ = path_;
        }
        const double closed_term =
            static_cast<double>(closed_cnt) * inv_n_ - vol;
        if (closed_term > best_) {
          best_ = closed_term;
          witness_ = path_;
        }
      } else {
        // completions only shrink volume and closed counts
        const double subtree_bound =
            std::max(vol, static_cast<double>(closed_cnt) * inv_n_);
        if (subtree_bound > best_) scan_level(level + 1, vol);
      }
    }
    for (auto p : undo_o) stamp_open_[p] = stamp;
    for (auto p : undo_c) stamp_closed_[p] = stamp;
  }

  std::vector<std::vector<double>> cols_;
  std::vector<std::vector<double>> grid_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<std::uint32_t> stamp_open_, stamp_closed_;
  std::vector<std::vector<std::uint32_t>> undo_open_, undo_closed_;
  std::vector<double> path_;
  std::optional<std::vector<double>> witness_;
  std::size_t d_ = 0;
  std::size_t m_ = 0;
  double inv_n_ = 0.0;
  double best_ = 0.0;
};

std::vector<std::vector<double>> columns_of(const PointSet& ps) {
  std::vector<std::vector<double>> cols(ps.dim());
  for (std::size_t j = 0; j < ps.dim(); ++j) {
    cols[j].resize(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) cols[j][i] = ps.coord(i, j);
  }
  return cols;
}

}  // namespace

DiscrepancyResult star_discrepancy_exact(const PointSet& ps,
                                         const ExactOptions& opts) {
  GridScanner scanner(columns_of(ps), static_cast<std::int64_t>(ps.size()));
  DiscrepancyResult out;
  out.subsets_evaluated = 1;
  if (scanner.node_count() > opts.node_budget) {
    auto r = scanner.sample(opts.fallback_effort, opts.fallback_seed);
    out.value = r.value;
    out.exact = false;
    if (r.witness) out.witness_anchor = AnchoredBox{*r.witness};
    return out;
  }
  auto r = scanner.scan(0.0);
  out.value = r.value;
  out.exact = true;
  if (r.witness) out.witness_anchor = AnchoredBox{*r.witness};
  return out;
}

double star_discrepancy_oracle(const PointSet& ps, const OracleLimits& limits) {
  if (ps.size() > limits.max_points || ps.dim() > limits.max_dim)
    throw BudgetError("instance exceeds the oracle budget");
  const std::size_t d = ps.dim();
  const auto n = static_cast<double>(ps.size());
  auto cols = columns_of(ps);
  std::vector<std::vector<double>> grid(d);
  for (std::size_t j = 0; j < d; ++j) {
    grid[j] = cols[j];
    grid[j].push_back(1.0);
    std::sort(grid[j].begin(), grid[j].end());
    grid[j].erase(std::unique(grid[j].begin(), grid[j].end()), grid[j].end());
  }
  std::vector<std::size_t> idx(d, 0);
  double best = 0.0;
  while (true) {
    double vol = 1.0;
    for (std::size_t j = 0; j < d; ++j) vol *= grid[j][idx[j]];
    std::int64_t open_cnt = 0, closed_cnt = 0;
    for (std::size_t p = 0; p < ps.size(); ++p) {
      bool open_in = true, closed_in = true;
      for (std::size_t j = 0; j < d; ++j) {
        const double c = cols[j][p];
        const double v = grid[j][idx[j]];
        if (!(c < v)) open_in = false;
        if (v < 1.0 ? !(c <= v) : !(c < 1.0)) closed_in = false;
      }
      if (open_in) ++open_cnt;
      if (closed_in) ++closed_cnt;
    }
    best = std::max(best, vol - static_cast<double>(open_cnt) / n);
    best = std::max(best, static_cast<double>(closed_cnt) / n - vol);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (++idx[j] < grid[j].size()) break;
      idx[j] = 0;
      if (j == 0) return best;
    }
  }
}

double star_discrepancy_estimate(const PointSet& ps, std::uint64_t effort,
                                 std::uint64_t seed) {
  if (effort < 1) throw UsageError("estimator effort must be at least 1");
  GridScanner scanner(columns_of(ps), static_cast<std::int64_t>(ps.size()));
  if (scanner.node_count() <= effort) return scanner.scan(0.0).value;
  return scanner.sample(effort, seed).value;
}

double star_discrepancy_d1_closed_form(const PointSet& ps) {
  if (ps.dim() != 1)
    throw UsageError("closed form applies to one-dimensional sets only");
  std::vector<double> xs(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) xs[i] = ps.coord(i, 0);
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto rank = static_cast<double>(i + 1);
    best = std::max(best, xs[i] - (rank - 1.0) / n);
    best = std::max(best, rank / n - xs[i]);
  }
  return best;
}

namespace {

struct SubsetEvaluation {
  double dstar = 0.0;
  bool exact = true;
  std::optional<std::vector<double>> witness;  // in projected coordinates
};

// Columns of the projection onto u; in literal mode only points interior
// on every complement coordinate are kept (the padded box excludes the
// rest), while the denominator stays N.
std::vector<std::vector<double>> project_columns(const PointSet& ps,
                                                 const SubsetMask& u,
                                                 bool literal) {
  const auto idx = u.indices();
  std::vector<std::vector<double>> cols(idx.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto row = ps.row(i);
    if (literal) {
      bool keep = true;
      std::size_t k = 0;
      for (std::size_t j = 0; j < ps.dim() && keep; ++j) {
        if (k < idx.size() && idx[k] == j + 1) {
          ++k;
          continue;
        }
        if (row[j] == 1.0) keep = false;
      }
      if (!keep) continue;
    }
    for (std::size_t k = 0; k < idx.size(); ++k)
      cols[k].push_back(row[idx[k] - 1]);
  }
  return cols;
}

struct WeightedEngineOptions {
  WeightedMode mode = WeightedMode::exact;
  bool prune = true;
  std::uint64_t node_budget = 0;  // 0 = unlimited
  std::uint64_t per_subset_effort = 50'000;
  std::uint64_t seed = 0;
};

std::uint64_t total_masks(std::size_t d) {
  return d >= 64 ? std::numeric_limits<std::uint64_t>::max()
                 : (std::uint64_t{1} << d) - 1;
}

DiscrepancyResult weighted_engine(const PointSet& ps, const WeightSystem& ws,
                                  const WeightedEngineOptions& opts) {
  const std::size_t d = ps.dim();
  if (d > SubsetMask::kDenseLimit)
    throw UsageError(
        "weighted discrepancy enumeration supports at most 63 dimensions");
  const bool literal = ps.has_unit_coordinate();
  const auto n = static_cast<std::int64_t>(ps.size());

  DiscrepancyResult out;
  out.exact = true;
  double best = 0.0;
  std::optional<SubsetMask> best_mask;
  std::optional<AnchoredBox> best_anchor;

  // Exact values of small evaluated subsets seed lower bounds for their
  // supersets (D* is monotone under projection for interior sets).
  std::vector<std::pair<std::uint64_t, double>> small_values;

  std::uint64_t budget_left = opts.node_budget == 0
                                  ? std::numeric_limits<std::uint64_t>::max()
                                  : opts.node_budget;
  const std::uint64_t all = total_masks(d);
  std::uint64_t seen = 0;

  auto stream = opts.prune
                    ? enumerate_by_weight_descending(ws, static_cast<std::uint32_t>(d))
                    : enumerate_by_cardinality(static_cast<std::uint32_t>(d), false);

  SubsetMask u = SubsetMask::single(1);
  while (stream->next(u)) {
    ++seen;
    const double gamma = ws.weight_of(u);
    if (gamma == 0.0) {
      ++out.subsets_pruned;
      continue;
    }
    if (opts.prune) {
      if (gamma < best) {
        // the stream is non-increasing: nothing later can matter
        out.subsets_pruned += all - seen + 1;
        break;
      }
      if (gamma == best && best_mask && !mask_less(u, *best_mask)) {
        ++out.subsets_pruned;
        continue;
      }
    }

    SubsetEvaluation ev;
    GridScanner scanner(project_columns(ps, u, literal), n);
    const std::uint64_t nodes = scanner.node_count();
    double floor = 0.0;
    if (!literal && u.is_dense()) {
      const std::uint64_t ubits = u.bits();
      for (const auto& [vbits, val] : small_values)
        if ((vbits & ubits) == vbits && val > floor) floor = val;
    }
    const bool fits_exact = opts.mode == WeightedMode::exact
                                ? nodes <= budget_left
                                : nodes <= opts.per_subset_effort;
    if (fits_exact) {
      auto r = scanner.scan(floor);
      ev.dstar = r.value;
      ev.witness = std::move(r.witness);
      if (opts.mode == WeightedMode::exact) budget_left -= nodes;
    } else {
      CounterRng rng(opts.seed);
      auto sub = rng.substream(u.is_dense() ? u.bits() : u.max_index());
      auto r = scanner.sample(opts.per_subset_effort, sub.next_u64());
      ev.dstar = std::max(r.value, floor);
      ev.exact = false;
      ev.witness = std::move(r.witness);
      out.exact = false;
    }
    ++out.subsets_evaluated;
    if (!literal && u.is_dense() && u.cardinality() <= 2)
      small_values.emplace_back(u.bits(), ev.dstar);

    const double v = gamma * ev.dstar;
    if (v > best || (v == best && v > 0.0 &&
                     (!best_mask || mask_less(u, *best_mask)))) {
      best = v;
      best_mask = u;
      if (ev.witness) {
        std::vector<double> padded(d, 1.0);
        const auto idx = u.indices();
        for (std::size_t k = 0; k < idx.size(); ++k)
          padded[idx[k] - 1] = (*ev.witness)[k];
        best_anchor = AnchoredBox{std::move(padded)};
      } else {
        best_anchor.reset();
      }
    }
  }

  out.value = best;
  if (best_mask) {
    out.witness_subset = *best_mask;
  } else {
    // every weight vanished; all subsets tie at zero
    out.witness_subset = SubsetMask::single(1);
  }
  out.witness_anchor = std::move(best_anchor);
  return out;
}

}  // namespace

DiscrepancyResult weighted_star_discrepancy(const PointSet& ps,
                                            const WeightSystem& ws,
                                            const WeightedOptions& opts) {
  WeightedEngineOptions eo;
  eo.mode = opts.mode;
  eo.prune = opts.prune;
  eo.node_budget = opts.node_budget;
  eo.per_subset_effort = opts.per_subset_effort;
  eo.seed = opts.seed;
  return weighted_engine(ps, ws, eo);
}

DiscrepancyResult weighted_star_discrepancy_naive(const PointSet& ps,
                                                  const WeightSystem& ws) {
  WeightedEngineOptions eo;
  eo.mode = WeightedMode::exact;
  eo.prune = false;
  eo.node_budget = 0;
  return weighted_engine(ps, ws, eo);
}

}  // namespace stardisc
