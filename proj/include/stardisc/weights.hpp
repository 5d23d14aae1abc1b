#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stardisc/subset_mask.hpp"

namespace stardisc {

// Closed-form continuation of a product weight sequence past its stored
// prefix. Both families are non-increasing; that attestation is checked
// lazily on evaluation.
struct TailSpec {
  enum class Kind { none, c_over_sqrt_log, geometric };

  Kind kind = Kind::none;
  double param = 0.0;  // c for c_over_sqrt_log, ratio for geometric

  bool present() const { return kind != Kind::none; }
};

// Assignment u -> gamma_u >= 0. Either explicit (finitely many stored
// subsets, absent keys weigh 0) or product form gamma_u = prod_{j in u}
// gamma_j, never materialized over the subset lattice.
class WeightSystem {
 public:
  using ExplicitMap = std::map<SubsetMask, double, MaskLess>;

  static WeightSystem product(std::vector<double> gammas,
                              TailSpec tail = TailSpec{});
  static WeightSystem explicit_weights(ExplicitMap entries);

  bool is_product() const { return product_; }

  double weight_of(const SubsetMask& u) const;

  // Product systems only. 1-based index; tail-evaluated past the prefix
  // (0 when no tail is declared).
  double coordinate_weight(std::uint64_t j) const;
  // Same, for indices too large to represent exactly (log of the index).
  double coordinate_weight_log_index(double log_j) const;

  const std::vector<double>& prefix() const { return prefix_; }
  const TailSpec& tail() const { return tail_; }
  const ExplicitMap& entries() const { return entries_; }

  // Largest stored/declared dimension that can carry positive weight;
  // nullopt when a tail extends the support indefinitely.
  std::optional<std::uint32_t> finite_support() const;

  // True when gamma_1 >= gamma_2 >= ... holds over prefix, junction and
  // declared tail.
  bool is_non_increasing() const;

 private:
  WeightSystem() = default;

  bool product_ = false;
  std::vector<double> prefix_;
  TailSpec tail_;
  ExplicitMap entries_;
};

// Partial evaluation of the two supremum constants. Each subset u is
// scored at the first dimension where it appears, d = max(u); in
// particular c_hat uses the radical sqrt(4.9 + 2 log(e max(u)/|u|)).
struct WeightConstants {
  double c_gamma = 0.0;
  double c_hat_gamma = 0.0;
  int d_max_used = 0;
  int c_argmax_d = 0;      // 0 when all weights vanish
  int c_hat_argmax_d = 0;
  std::optional<SubsetMask> c_witness;
  std::optional<SubsetMask> c_hat_witness;
  bool stabilized = false;
  bool resource_limited = false;
  int largest_completed_d = 0;
};

WeightConstants corollary1_constants(const WeightSystem& ws, int d_max);

enum class Verdict { converges, diverges, inconclusive };

std::string to_string(Verdict v);

struct SummabilityReport {
  double partial_sum = 0.0;
  std::optional<double> remainder_bound;  // nullopt = unknown
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t terms_used = 0;

  double total_upper() const {
    return partial_sum + (remainder_bound ? *remainder_bound : 0.0);
  }
};

// Product systems: sum_j exp(-c gamma_j^-2), prefix summed directly and
// the declared tail bounded by integral/ratio comparison. Explicit
// systems: sum over stored subsets, exact when they fit in the budget.
// gamma = 0 terms contribute exp(-inf) = 0.
SummabilityReport check_summability(const WeightSystem& ws, double c,
                                    std::uint64_t budget = 1u << 20);

// sum_j gamma_j^a for product systems (the classical summability
// conditions use a = 1 and general a > 0).
SummabilityReport check_power_summability(const WeightSystem& ws, double a);

struct SmallnessReport {
  bool ok = false;
  std::optional<SubsetMask> violation;  // a violating subset when !ok
  double c = 0.0;
  int d_max = 0;
};

// gamma_u <= c |u|^{-1/2} for every non-empty u with max index <= d_max.
SmallnessReport check_theorem4_smallness(const WeightSystem& ws, double c,
                                         int d_max);

// Weight file format (text): "product" header followed by "j gamma_j"
// lines and an optional trailing tail declaration, or "explicit" header
// followed by "i1,i2,...,ik gamma" lines.
WeightSystem load_weight_system(std::istream& in);
WeightSystem load_weight_system_file(const std::string& path);
void save_weight_system(const WeightSystem& ws, std::ostream& out);

}  // namespace stardisc
