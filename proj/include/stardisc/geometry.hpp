#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stardisc/subset_mask.hpp"

namespace stardisc {

// Axis-parallel box [0, z), half-open at the top in every coordinate.
struct AnchoredBox {
  std::vector<double> upper;

  std::size_t dim() const { return upper.size(); }
};

double volume(const AnchoredBox& box);

enum class Closure : std::uint8_t { open, closed };

// Immutable multiset of N points in [0,1]^d. Row-major storage plus a
// per-dimension index sorted by that coordinate (stable in insertion
// order), built once at construction.
class PointSet {
 public:
  PointSet(std::size_t dim, std::vector<double> coords);
  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }

  double coord(std::size_t point, std::size_t dim0) const {
    return coords_[point * d_ + dim0];
  }
  std::span<const double> row(std::size_t point) const {
    return {coords_.data() + point * d_, d_};
  }
  std::span<const double> flat() const { return coords_; }

  // Point indices ordered by coordinate `dim0`, ties in insertion order.
  std::span<const std::uint32_t> sorted_order(std::size_t dim0) const {
    return {order_.data() + dim0 * n_, n_};
  }

  bool has_unit_coordinate() const { return has_unit_coord_; }

  bool operator==(const PointSet& other) const {
    return d_ == other.d_ && coords_ == other.coords_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> coords_;        // n x d row-major
  std::vector<std::uint32_t> order_;  // d x n, per-dimension sorted indices
  bool has_unit_coord_ = false;
};

// #{n : x_n in B} where B uses [0, z_j) in coordinate j when the flag is
// open and [0, z_j] when closed.
std::int64_t count_in_box(const PointSet& ps, const AnchoredBox& box,
                          std::span<const Closure> closure);
std::int64_t count_in_box(const PointSet& ps, const AnchoredBox& box,
                          Closure uniform);

// The |u|-dimensional points x_1(u), ..., x_N(u), order preserved.
PointSet project(const PointSet& ps, const SubsetMask& u);

// Text format: first line "N d", then N lines of d coordinates.
PointSet load_point_set(std::istream& in);
PointSet load_point_set_file(const std::string& path);
void save_point_set(const PointSet& ps, std::ostream& out);
void save_point_set_file(const PointSet& ps, const std::string& path);

}  // namespace stardisc
