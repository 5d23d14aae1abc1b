#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stardisc/discrepancy.hpp"
#include "stardisc/geometry.hpp"
#include "stardisc/weights.hpp"

namespace stardisc {

struct BoundParams {
  double k_talagrand = 1.0;   // absolute constant of the tail lemma
  double c_abs_hnww = 10.0;   // explicit constant of the sqrt(d/N) bound
  std::optional<double> c_hps;  // unspecified in the source; user-supplied
  double c_user = 1.0;        // c of the smallness/summability conditions
  double c_hat = 1.0;         // certified constant, when one was computed
};

struct BoundReport {
  std::string theorem_id;
  double value = 0.0;
  std::optional<double> value_clamped;  // tail bounds also report min(1, .)
  std::optional<std::int64_t> d;
  std::optional<std::int64_t> n;
  std::optional<double> eps;
  std::optional<double> q;
  std::optional<double> t;
  std::optional<double> c_gamma;
  std::optional<double> c_hat_gamma;
  std::optional<SubsetMask> witness;  // maximizing subset where applicable
  std::optional<std::string> warning;
  BoundParams constants;

  bool operator==(const BoundReport& other) const;
};

// c_abs sqrt(d)/sqrt(N)
double bound_hnww(std::int64_t d, std::int64_t n, double c_abs = 10.0);

// (5.7/sqrt(N)) max_u gamma_u sqrt(4.9 + 2 log(e d/|u|)) sqrt(|u|)
BoundReport bound_theorem1(const WeightSystem& ws, std::int64_t d,
                           std::int64_t n);

// c_abs (1 + sqrt(log d))/sqrt(N) max_u gamma_u sqrt(|u|). The constant is
// not specified by the source result and must be supplied.
BoundReport bound_hps(const WeightSystem& ws, std::int64_t d, std::int64_t n,
                      double c_abs);

enum class Corollary1Which { c, c_hat };

// 6 C sqrt(5 + 2 log(ed))/sqrt(N), or 6 C_hat/sqrt(N).
BoundReport bound_corollary1(const WeightConstants& wc, std::int64_t d,
                             std::int64_t n, Corollary1Which which);

// ceil(36 C^2 (5 + 2 log(ed))/eps^2) or ceil(36 C_hat^2/eps^2), clamped to
// at least 1 point.
std::int64_t inverse_n_upper(const WeightConstants& wc, std::int64_t d,
                             double eps, Corollary1Which which);

// 5.7 sqrt(4.9 + log(1/(1-q))/d) sqrt(d)/sqrt(N); random uniform sets stay
// below it with probability >= q.
double lemma1_threshold(std::int64_t d, std::int64_t n, double q);

// (1/t) (K t^2 / d)^d exp(-2 t^2), the bound on P(D*_N >= t/sqrt(N)).
double lemma2_tail(std::int64_t d, double t, double k_talagrand);

// P(D* >= t/sqrt(N)) <= exp(4.9 d - t^2/5.7^2), obtained by inverting the
// probability threshold above; raw (may exceed 1).
double lemma1_tail_inversion(std::int64_t d, double t);

struct Theorem4Certificate {
  double c_hat = 0.0;
  double partial_sum = 0.0;
  double remainder_bound = 0.0;
  std::uint64_t subsets_enumerated = 0;
  std::uint32_t enumerated_dims = 0;
  bool c_hat_geq_1 = false;
  bool c_hat_geq_c2k = false;
  bool sum_within_half = false;

  double certified_sum() const { return partial_sum + remainder_bound; }
  // Accepted realizations satisfy weighted D* <= sqrt(c_hat/N).
  double discrepancy_guarantee(std::int64_t n) const;
};

// Smallest c_hat (doubling then 20 bisection steps) with
// c_hat >= max(1, c^2 K) and sum_u exp(-c_hat gamma_u^-2) <= 1/2, the sum
// certified by exact enumeration plus a tail remainder bound.
Theorem4Certificate theorem4_constant(const WeightSystem& ws, double c,
                                      double k_talagrand,
                                      std::uint64_t budget = 1u << 20);

struct Theorem2Reduction {
  WeightSystem normalized;
  double c_hat = 0.0;           // c/2
  std::size_t untouched_from = 0;  // 0-based index; prefix below it modified
  std::size_t replaced_count = 0;
  double sum_value = 0.0;  // certified sum_j exp(-(c/2) gamma_j^-2) after
};

// Finitely modify a product sequence until gamma_j <= 1/2 and
// sum_j exp(-(c/2) gamma_j^-2) <= 1/2 both hold: oversized entries are
// capped at 1/2, then leading entries are zeroed while the sum is still
// too large.
Theorem2Reduction theorem2_reduce(const WeightSystem& ws, double c);

struct ObstructionRow {
  std::int64_t log2_d = 0;  // d = 2^m with N = m - 1
  double lhs = 0.0;         // pair-weight floor / 12
  double rhs = 0.0;         // C N^-beta
};

// Evaluates the lower bound gamma_{d-1} gamma_d / 12 against the claimed
// strong-tractability bound C N^-beta at d = 2^(N+1); every row returned
// certifies a contradiction for that (C, beta). Requires a non-increasing
// product sequence.
std::vector<ObstructionRow> theorem3_obstruction(
    const WeightSystem& ws, double big_c, double beta,
    std::span<const std::int64_t> log2_d_values);

struct BinomialBound {
  std::uint64_t exact = 0;
  double bound = 0.0;  // (e d / r)^r
};

BinomialBound binomial_subset_bound(int d, int r);

struct FrTailBound {
  double series_partial = 0.0;  // sum_{k=r}^{k_max} (e k / r)^{-3r}
  double closed_bound = 0.0;    // exp(-3r) + r exp(-3r)/(3r - 1)
};

FrTailBound fr_tail_bound(int r, std::int64_t k_max = 200'000);

struct HpsCheckResult {
  bool holds = false;
  double weighted_value = 0.0;
  double threshold = 0.0;  // c / 12
};

// Weighted D* >= c/12 whenever every pair subset weighs at least c and
// d >= 2^(N+1). A false return on a valid instance is an implementation
// bug, not a refutation.
HpsCheckResult hps_lower_bound_check(const PointSet& ps,
                                     const WeightSystem& ws, double c);

// sum_{r=1}^{n} exp(-r); converges to 1/(e-1).
double exp_series_partial(int n);

}  // namespace stardisc
