#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace stardisc {

class WeightSystem;

// Non-empty subset of coordinate indices {1, ..., d}. Subsets over
// dimensions up to 63 live in a single 64-bit word (bit j-1 set for index
// j); wider subsets fall back to a sorted list of 1-based indices.
class SubsetMask {
 public:
  static constexpr std::uint32_t kDenseLimit = 63;

  static SubsetMask from_bits(std::uint64_t bits);
  // 1-based indices, any order, duplicates rejected.
  static SubsetMask from_indices(std::vector<std::uint32_t> indices);
  static SubsetMask single(std::uint32_t index);
  static SubsetMask full(std::uint32_t d);

  bool is_dense() const { return wide_.empty(); }
  std::uint64_t bits() const;  // dense masks only
  int cardinality() const;
  std::uint32_t max_index() const;
  bool contains(std::uint32_t index) const;
  bool subset_of(const SubsetMask& other) const;
  std::vector<std::uint32_t> indices() const;  // sorted, 1-based

  bool operator==(const SubsetMask& other) const;
  bool operator!=(const SubsetMask& other) const { return !(*this == other); }

  // "1,3,4" style rendering used by the weight file format and reports.
  std::string to_string() const;

 private:
  SubsetMask() = default;

  std::uint64_t bits_ = 0;
  std::vector<std::uint32_t> wide_;  // sorted 1-based indices when not dense
};

// Numeric order of the bitmask value, extended to wide masks (highest
// differing index decides). Total order; used for tie-breaking and as the
// map comparator for explicit weight systems.
bool mask_less(const SubsetMask& a, const SubsetMask& b);

struct MaskLess {
  bool operator()(const SubsetMask& a, const SubsetMask& b) const {
    return mask_less(a, b);
  }
};

// Lazy enumeration of the 2^d - 1 non-empty subsets.
class SubsetStream {
 public:
  virtual ~SubsetStream() = default;
  // Returns false when exhausted.
  virtual bool next(SubsetMask& out) = 0;
};

// Cardinality 1, 2, ..., d; lexicographic within each cardinality.
// Supports d beyond the dense limit when allow_wide is set.
std::unique_ptr<SubsetStream> enumerate_by_cardinality(std::uint32_t d,
                                                       bool allow_wide = true);

// Non-increasing gamma_u order, ties broken by ascending mask value.
// Requires d <= 63.
std::unique_ptr<SubsetStream> enumerate_by_weight_descending(
    const WeightSystem& ws, std::uint32_t d);

}  // namespace stardisc
