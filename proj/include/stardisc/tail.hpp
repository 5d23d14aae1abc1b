#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stardisc/bounds.hpp"

namespace stardisc {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson95(std::int64_t successes, std::int64_t trials);

struct TailEstimate {
  double threshold = 0.0;  // t, the exceedance level is t/sqrt(N)
  std::int64_t trials = 0;
  std::int64_t exceed_count = 0;
  double p_hat = 0.0;
  WilsonInterval wilson;
  double bound_value = 0.0;   // min of the two bounds below, clamped to 1
  double lemma1_bound = 0.0;  // clamped
  double lemma2_bound = 0.0;  // clamped
  bool consistent = false;    // Wilson lower limit <= bound_value

  bool operator==(const TailEstimate& other) const;
};

struct TailOptions {
  double k_talagrand = 1.0;
  int workers = 1;
  std::uint64_t node_budget = 100'000'000;
};

// Samples `trials` uniform sets (one exact D* per trial, shared across the
// t grid), and compares the empirical exceedance frequency of t/sqrt(N)
// against the tail bounds. Per-trial derived seeds keep the result
// independent of the worker count.
std::vector<TailEstimate> estimate_tail(std::uint32_t d, std::int64_t n,
                                        std::span<const double> t_grid,
                                        std::int64_t trials,
                                        std::uint64_t seed,
                                        const TailOptions& opts = {});

struct Lemma1Check {
  double q = 0.0;
  double threshold = 0.0;       // lemma1_threshold(d, N, q)
  std::int64_t successes = 0;   // trials with D* <= threshold
  std::int64_t trials = 0;
  double fraction = 0.0;
  WilsonInterval wilson;
  bool consistent = false;  // Wilson upper limit >= q
};

// Empirical side of the probability-q threshold: fraction of uniform sets
// with D* below the threshold must be compatible with >= q.
std::vector<Lemma1Check> check_lemma1(std::uint32_t d, std::int64_t n,
                                      std::span<const double> q_grid,
                                      std::int64_t trials, std::uint64_t seed,
                                      const TailOptions& opts = {});

}  // namespace stardisc
