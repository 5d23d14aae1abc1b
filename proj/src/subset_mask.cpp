#include "stardisc/subset_mask.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

#include "stardisc/errors.hpp"
#include "stardisc/weights.hpp"

namespace stardisc {

SubsetMask SubsetMask::from_bits(std::uint64_t bits) {
  if (bits == 0) throw UsageError("subset mask must be non-empty");
  SubsetMask m;
  m.bits_ = bits;
  return m;
}

SubsetMask SubsetMask::from_indices(std::vector<std::uint32_t> indices) {
  if (indices.empty()) throw UsageError("subset mask must be non-empty");
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] == 0) throw UsageError("coordinate indices are 1-based");
    if (i > 0 && indices[i] == indices[i - 1])
      throw UsageError("duplicate coordinate index in subset mask");
  }
  SubsetMask m;
  if (indices.back() <= kDenseLimit) {
    for (auto j : indices) m.bits_ |= std::uint64_t{1} << (j - 1);
  } else {
    m.wide_ = std::move(indices);
  }
  return m;
}

SubsetMask SubsetMask::single(std::uint32_t index) {
  return from_indices({index});
}

SubsetMask SubsetMask::full(std::uint32_t d) {
  if (d == 0) throw UsageError("dimension must be at least 1");
  if (d <= kDenseLimit)
    return from_bits(d == 63 ? ~std::uint64_t{0} >> 1
                             : (std::uint64_t{1} << d) - 1);
  std::vector<std::uint32_t> idx(d);
  for (std::uint32_t j = 0; j < d; ++j) idx[j] = j + 1;
  return from_indices(std::move(idx));
}

std::uint64_t SubsetMask::bits() const {
  if (!is_dense())
    throw UsageError("subset mask exceeds the 63-coordinate dense range");
  return bits_;
}

int SubsetMask::cardinality() const {
  return is_dense() ? std::popcount(bits_) : static_cast<int>(wide_.size());
}

std::uint32_t SubsetMask::max_index() const {
  return is_dense() ? static_cast<std::uint32_t>(std::bit_width(bits_))
                    : wide_.back();
}

bool SubsetMask::contains(std::uint32_t index) const {
  if (index == 0) return false;
  if (is_dense())
    return index <= kDenseLimit &&
           (bits_ >> (index - 1) & std::uint64_t{1}) != 0;
  return std::binary_search(wide_.begin(), wide_.end(), index);
}

bool SubsetMask::subset_of(const SubsetMask& other) const {
  if (is_dense() && other.is_dense()) return (bits_ & ~other.bits_) == 0;
  for (auto j : indices())
    if (!other.contains(j)) return false;
  return true;
}

std::vector<std::uint32_t> SubsetMask::indices() const {
  if (!is_dense()) return wide_;
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(cardinality()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1)
    out.push_back(static_cast<std::uint32_t>(std::countr_zero(b)) + 1);
  return out;
}

bool SubsetMask::operator==(const SubsetMask& other) const {
  return bits_ == other.bits_ && wide_ == other.wide_;
}

std::string SubsetMask::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto j : indices()) {
    if (!first) os << ',';
    os << j;
    first = false;
  }
  return os.str();
}

bool mask_less(const SubsetMask& a, const SubsetMask& b) {
  if (a.is_dense() && b.is_dense()) return a.bits() < b.bits();
  // Numeric order generalized: compare indices from the top down; a mask
  // that runs out first is the smaller one.
  const auto ia = a.indices();
  const auto ib = b.indices();
  auto pa = ia.rbegin();
  auto pb = ib.rbegin();
  for (; pa != ia.rend() && pb != ib.rend(); ++pa, ++pb) {
    if (*pa != *pb) return *pa < *pb;
  }
  return pa == ia.rend() && pb != ib.rend();
}

namespace {

class CardinalityStream final : public SubsetStream {
 public:
  CardinalityStream(std::uint32_t d, bool allow_wide) : d_(d) {
    if (d == 0) throw UsageError("dimension must be at least 1");
    if (d > SubsetMask::kDenseLimit && !allow_wide)
      throw UsageError(
          "dimension exceeds the dense mask width and the wide fallback is "
          "disabled");
  }

  bool next(SubsetMask& out) override {
    if (r_ > d_) return false;
    if (current_.empty()) {
      // first subset of cardinality r_: {1, ..., r_}
      current_.resize(r_);
      for (std::uint32_t i = 0; i < r_; ++i) current_[i] = i + 1;
      out = SubsetMask::from_indices(current_);
      return true;
    }
    // advance the combination in lexicographic order
    int i = static_cast<int>(r_) - 1;
    while (i >= 0 && current_[static_cast<std::size_t>(i)] ==
                         d_ - (r_ - 1 - static_cast<std::uint32_t>(i)))
      --i;
    if (i < 0) {
      ++r_;
      current_.clear();
      return next(out);
    }
    ++current_[static_cast<std::size_t>(i)];
    for (auto k = static_cast<std::size_t>(i) + 1; k < r_; ++k)
      current_[k] = current_[k - 1] + 1;
    out = SubsetMask::from_indices(current_);
    return true;
  }

 private:
  std::uint32_t d_;
  std::uint32_t r_ = 1;
  std::vector<std::uint32_t> current_;
};

// Weight-descending enumeration for product systems. Coordinates with
// gamma_j > 1 are handled through the complement transform: with
// B = {j : gamma_j > 1} and delta_j = min(gamma_j, 1/gamma_j) <= 1, the
// map T -> T xor B is a weight-order isomorphism between delta-products
// and gamma-products (gamma_{T xor B} = gamma_B * delta_T). Enumerating T
// by descending delta-product is a standard best-first heap walk over
// subsets of a descending sequence.
class ProductDescendingStream final : public SubsetStream {
 public:
  ProductDescendingStream(const WeightSystem& ws, std::uint32_t d) : d_(d) {
    if (d == 0) throw UsageError("dimension must be at least 1");
    if (d > SubsetMask::kDenseLimit)
      throw UsageError(
          "weight-descending enumeration requires at most 63 coordinates");
    delta_.resize(d);
    std::vector<std::uint32_t> perm(d);
    for (std::uint32_t j = 0; j < d; ++j) {
      const double g = ws.coordinate_weight(j + 1);
      if (g > 1.0) flip_bits_ |= std::uint64_t{1} << j;
      delta_[j] = g > 1.0 ? 1.0 / g : g;
      perm[j] = j;
    }
    gamma_flip_ = 1.0;
    for (std::uint32_t j = 0; j < d; ++j)
      if (flip_bits_ >> j & 1) gamma_flip_ *= ws.coordinate_weight(j + 1);
    std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) {
      return delta_[a] > delta_[b];
    });
    by_rank_ = perm;  // rank -> original coordinate
    sorted_delta_.resize(d);
    for (std::uint32_t r = 0; r < d; ++r) sorted_delta_[r] = delta_[perm[r]];

    // Empty T corresponds to the subset B itself.
    push(State{gamma_flip_, 0, 0});
  }

  bool next(SubsetMask& out) override {
    while (!heap_.empty()) {
      State s = heap_.top();
      heap_.pop();
      expand(s);
      const std::uint64_t mask = to_mask(s);
      if (mask == 0) continue;  // the empty subset in gamma space
      out = SubsetMask::from_bits(mask);
      return true;
    }
    return false;
  }

 private:
  struct State {
    double weight;             // gamma_B * prod(delta over ranks)
    std::uint64_t rank_bits;   // chosen ranks in the sorted order
    std::uint32_t last_rank1;  // 1 + highest chosen rank; 0 for empty
  };

  struct Cmp {
    // max-heap by weight; ties resolve to the smaller gamma-space mask so
    // the stream order is a deterministic total order.
    const ProductDescendingStream* self;
    bool operator()(const State& a, const State& b) const {
      if (a.weight != b.weight) return a.weight < b.weight;
      return self->to_mask(b) < self->to_mask(a);
    }
  };

  std::uint64_t to_mask(const State& s) const {
    std::uint64_t t = 0;
    for (std::uint64_t rb = s.rank_bits; rb != 0; rb &= rb - 1)
      t |= std::uint64_t{1}
           << by_rank_[static_cast<std::uint32_t>(std::countr_zero(rb))];
    return t ^ flip_bits_;
  }

  void push(State s) { heap_.push(s); }

  void expand(const State& s) {
    // children: extend with the next rank, or (if non-empty) slide the
    // last chosen rank one step further. Every T is generated once.
    const std::uint32_t nxt = s.last_rank1;
    if (nxt < d_) {
      State ext{s.weight * sorted_delta_[nxt],
                s.rank_bits | (std::uint64_t{1} << nxt), nxt + 1};
      push(ext);
      if (s.last_rank1 > 0) {
        const std::uint32_t last = s.last_rank1 - 1;
        if (s.rank_bits >> last & 1) {
          const double base = sorted_delta_[last] > 0.0
                                  ? s.weight / sorted_delta_[last]
                                  : recompute(s.rank_bits ^ (std::uint64_t{1}
                                                             << last));
          State slid{base * sorted_delta_[nxt],
                     (s.rank_bits ^ (std::uint64_t{1} << last)) |
                         (std::uint64_t{1} << nxt),
                     nxt + 1};
          push(slid);
        }
      }
    }
  }

  double recompute(std::uint64_t rank_bits) const {
    double w = gamma_flip_;
    for (std::uint64_t rb = rank_bits; rb != 0; rb &= rb - 1)
      w *= sorted_delta_[static_cast<std::uint32_t>(std::countr_zero(rb))];
    return w;
  }

  std::uint32_t d_;
  std::uint64_t flip_bits_ = 0;
  double gamma_flip_ = 1.0;
  std::vector<double> delta_;
  std::vector<double> sorted_delta_;
  std::vector<std::uint32_t> by_rank_;
  std::priority_queue<State, std::vector<State>, Cmp> heap_{Cmp{this}};
};

// Explicit systems: positive stored keys sorted by (weight desc, mask
// asc), then every remaining mask in ascending order with weight 0.
class ExplicitDescendingStream final : public SubsetStream {
 public:
  ExplicitDescendingStream(const WeightSystem& ws, std::uint32_t d) : d_(d) {
    if (d == 0) throw UsageError("dimension must be at least 1");
    if (d > SubsetMask::kDenseLimit)
      throw UsageError(
          "weight-descending enumeration requires at most 63 coordinates");
    for (const auto& [mask, w] : ws.entries()) {
      if (mask.max_index() > d) continue;
      if (w > 0.0) positive_.emplace_back(w, mask.bits());
      stored_.push_back(mask.bits());
    }
    std::sort(positive_.begin(), positive_.end(), [](auto& a, auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::sort(stored_.begin(), stored_.end());
    limit_ = d == 63 ? ~std::uint64_t{0} >> 1 : (std::uint64_t{1} << d) - 1;
  }

  bool next(SubsetMask& out) override {
    if (pos_ < positive_.size()) {
      out = SubsetMask::from_bits(positive_[pos_++].second);
      return true;
    }
    while (cursor_ <= limit_) {
      const std::uint64_t m = cursor_++;
      const bool stored =
          std::binary_search(stored_.begin(), stored_.end(), m);
      const bool positive =
          stored && std::any_of(positive_.begin(), positive_.end(),
                                [&](auto& p) { return p.second == m; });
      if (positive) continue;  // already emitted
      out = SubsetMask::from_bits(m);
      return true;
    }
    return false;
  }

 private:
  std::uint32_t d_;
  std::uint64_t limit_ = 0;
  std::uint64_t cursor_ = 1;
  std::size_t pos_ = 0;
  std::vector<std::pair<double, std::uint64_t>> positive_;
  std::vector<std::uint64_t> stored_;
};

}  // namespace

std::unique_ptr<SubsetStream> enumerate_by_cardinality(std::uint32_t d,
                                                       bool allow_wide) {
  return std::make_unique<CardinalityStream>(d, allow_wide);
}

std::unique_ptr<SubsetStream> enumerate_by_weight_descending(
    const WeightSystem& ws, std::uint32_t d) {
  if (ws.is_product())
    return std::make_unique<ProductDescendingStream>(ws, d);
  return std::make_unique<ExplicitDescendingStream>(ws, d);
}

}  // namespace stardisc
