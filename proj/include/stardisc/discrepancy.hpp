#pragma once

#include <cstdint>
#include <optional>

#include "stardisc/geometry.hpp"
#include "stardisc/weights.hpp"

namespace stardisc {

struct DiscrepancyResult {
  double value = 0.0;
  std::optional<AnchoredBox> witness_anchor;
  std::optional<SubsetMask> witness_subset;
  bool exact = true;
  std::uint64_t subsets_evaluated = 0;
  std::uint64_t subsets_pruned = 0;
};

// Delta(z) = count([0,z), open)/N - volume(z). May be negative.
double local_discrepancy(const PointSet& ps, const AnchoredBox& box);

struct ExactOptions {
  // Ceiling on the critical-grid size prod_j |Gamma_j|. Past it the call
  // degrades to the estimator (exact = false) instead of erroring.
  std::uint64_t node_budget = 100'000'000;
  std::uint64_t fallback_effort = 200'000;
  std::uint64_t fallback_seed = 0x5d15c0ffu;
};

// Exact D*_N via the critical grid Gamma_j = (distinct coordinates in
// dimension j) + {1}: the supremum of |Delta| equals the grid maximum of
// max(volume(y) - open_count(y)/N, closed_count(y)/N - volume(y)),
// clamped below at 0. Counts advance incrementally along the row-major
// traversal. Witness is the first grid node attaining the maximum.
DiscrepancyResult star_discrepancy_exact(const PointSet& ps,
                                         const ExactOptions& opts = {});

struct OracleLimits {
  std::size_t max_points = 8;
  std::size_t max_dim = 3;
};

// Ground-truth reference: same grid maximum, recounted from scratch at
// every node. Test oracle only; refuses instances beyond its limits.
double star_discrepancy_oracle(const PointSet& ps,
                               const OracleLimits& limits = {});

// Certified lower bound: max of both grid terms over `effort` randomly
// sampled grid nodes. Enumerates the whole grid (= exact value) when
// effort covers it. Deterministic for a fixed seed.
double star_discrepancy_estimate(const PointSet& ps, std::uint64_t effort,
                                 std::uint64_t seed);

// d = 1 closed form over sorted points; independent cross-check.
double star_discrepancy_d1_closed_form(const PointSet& ps);

enum class WeightedMode { exact, estimate };

struct WeightedOptions {
  WeightedMode mode = WeightedMode::exact;
  std::uint64_t node_budget = 100'000'000;
  std::uint64_t per_subset_effort = 50'000;
  std::uint64_t seed = 0x77e19e5bu;
  // Subsets with weight <= current best are skipped (D* <= 1); computed
  // subset values seed lower bounds for later supersets.
  bool prune = true;
};

// max over non-empty u of gamma_u D*(ps(u)), with anchors padded by 1
// outside u. Equals the projection identity for interior point sets; if
// any coordinate is exactly 1 the literal padded-anchor definition is
// evaluated instead. Ties in the argmax subset resolve to the smallest
// mask value.
DiscrepancyResult weighted_star_discrepancy(const PointSet& ps,
                                            const WeightSystem& ws,
                                            const WeightedOptions& opts = {});

// Full enumeration, no pruning, no lower-bound seeding; the reference the
// pruned path is tested against.
DiscrepancyResult weighted_star_discrepancy_naive(const PointSet& ps,
                                                  const WeightSystem& ws);

}  // namespace stardisc
