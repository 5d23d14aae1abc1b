#pragma once

#include <cstdint>

#include "stardisc/bounds.hpp"
#include "stardisc/discrepancy.hpp"
#include "stardisc/geometry.hpp"
#include "stardisc/weights.hpp"

namespace stardisc {

// N i.i.d. uniform points in [0,1)^d from the counter generator;
// bit-reproducible for fixed (seed, d, N).
PointSet sample_uniform(std::uint32_t d, std::int64_t n, std::uint64_t seed);

struct ConstructionOutcome {
  PointSet points;
  int attempts = 0;
  double target = 0.0;    // bound acceptance had to certify
  double achieved = 0.0;  // accepted set's weighted discrepancy
  std::uint64_t seed = 0;
  bool accepted = false;
};

struct ConstructOptions {
  int max_attempts = 64;
  std::uint64_t node_budget = 100'000'000;
};

// Sample-and-test construction: accepts the first sample whose projected
// discrepancies satisfy D*(P_u) <= 5.7 sqrt(4.9 + 2 log(e d/|u|))
// sqrt(|u|)/sqrt(N) for every u with gamma_u > 0. One attempt fails with
// probability at most 1/(e-1). On exhaustion, returns the best attempt
// with accepted = false.
ConstructionOutcome construct_theorem1(const WeightSystem& ws,
                                       std::uint32_t d, std::int64_t n,
                                       std::uint64_t seed,
                                       const ConstructOptions& opts = {});

// Acceptance events D*(P_u) <= sqrt(c_hat) gamma_u^-1 / sqrt(N) for every
// u with gamma_u > 0; a certified c_hat makes one attempt fail with
// probability at most 1/2, and acceptance implies weighted D* <=
// sqrt(c_hat/N).
ConstructionOutcome construct_theorem4(const WeightSystem& ws, double c_hat,
                                       std::uint32_t d, std::int64_t n,
                                       std::uint64_t seed,
                                       const ConstructOptions& opts = {});

struct InverseSearchResult {
  std::int64_t n_achieved = 0;
  double achieved_value = 0.0;
  std::int64_t formula_bound = 0;  // ceil(36 C_hat^2 / eps^2), -1 if infinite
  bool certified = true;  // false when verification degraded to estimates
  std::uint64_t seed = 0;
};

struct InverseSearchOptions {
  int attempts_per_n = 8;
  std::int64_t n_cap = 1 << 22;
  std::uint64_t node_budget = 100'000'000;
  int constants_d_max = 64;
};

// Doubles N until a sampled set's exact weighted discrepancy reaches eps,
// then bisects to the smallest N this procedure achieves (an upper bound
// on the true inverse n*). The closed-form bound is reported alongside.
InverseSearchResult search_inverse_n(const WeightSystem& ws, std::uint32_t d,
                                     double eps, std::uint64_t seed,
                                     const InverseSearchOptions& opts = {});

}  // namespace stardisc
