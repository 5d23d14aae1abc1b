#include "stardisc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "stardisc/errors.hpp"

namespace stardisc {

namespace {

constexpr double kE = 2.718281828459045235360287;

// exp(-c / g^2), with the gamma = 0 convention exp(-inf) = 0.
double condition_term(double gamma, double c) {
  if (gamma <= 0.0) return 0.0;
  return std::exp(-c / (gamma * gamma));
}

[[noreturn]] void tail_monotonicity_error() {
  throw UsageError(
      "declared tail violates its non-increasing attestation (ratio > 1)");
}

}  // namespace

WeightSystem WeightSystem::product(std::vector<double> gammas, TailSpec tail) {
  for (double g : gammas)
    if (!(g >= 0.0)) throw UsageError("weights must be non-negative");
  if (tail.present()) {
    if (gammas.empty())
      throw UsageError("a declared tail requires a non-empty prefix");
    if (tail.kind == TailSpec::Kind::c_over_sqrt_log && !(tail.param > 0.0))
      throw UsageError("c_over_sqrt_log tail requires c > 0");
    if (tail.kind == TailSpec::Kind::geometric && !(tail.param >= 0.0))
      throw UsageError("geometric tail requires ratio >= 0");
  }
  WeightSystem ws;
  ws.product_ = true;
  ws.prefix_ = std::move(gammas);
  ws.tail_ = tail;
  return ws;
}

WeightSystem WeightSystem::explicit_weights(ExplicitMap entries) {
  for (const auto& [mask, w] : entries)
    if (!(w >= 0.0)) throw UsageError("weights must be non-negative");
  WeightSystem ws;
  ws.product_ = false;
  ws.entries_ = std::move(entries);
  return ws;
}

double WeightSystem::coordinate_weight(std::uint64_t j) const {
  if (!product_)
    throw UsageError("coordinate weights exist only for product systems");
  if (j == 0) throw UsageError("coordinate indices are 1-based");
  if (j <= prefix_.size()) return prefix_[j - 1];
  switch (tail_.kind) {
    case TailSpec::Kind::none:
      return 0.0;
    case TailSpec::Kind::c_over_sqrt_log:
      return tail_.param / std::sqrt(std::log(static_cast<double>(j)));
    case TailSpec::Kind::geometric: {
      if (tail_.param > 1.0) tail_monotonicity_error();
      const double base = prefix_.back();
      const double exponent = static_cast<double>(j - prefix_.size());
      return base * std::pow(tail_.param, exponent);
    }
  }
  return 0.0;
}

double WeightSystem::coordinate_weight_log_index(double log_j) const {
  if (!product_)
    throw UsageError("coordinate weights exist only for product systems");
  const double j_approx = std::exp(log_j);
  if (j_approx <= static_cast<double>(prefix_.size()) + 0.5)
    return coordinate_weight(static_cast<std::uint64_t>(std::llround(j_approx)));
  switch (tail_.kind) {
    case TailSpec::Kind::none:
      return 0.0;
    case TailSpec::Kind::c_over_sqrt_log:
      return tail_.param / std::sqrt(log_j);
    case TailSpec::Kind::geometric: {
      if (tail_.param > 1.0) tail_monotonicity_error();
      if (tail_.param == 1.0) return prefix_.back();
      if (tail_.param == 0.0) return 0.0;
      const double log_gamma =
          std::log(prefix_.back()) +
          (j_approx - static_cast<double>(prefix_.size())) *
              std::log(tail_.param);
      return std::exp(log_gamma);
    }
  }
  return 0.0;
}

double WeightSystem::weight_of(const SubsetMask& u) const {
  if (product_) {
    double w = 1.0;
    for (auto j : u.indices()) w *= coordinate_weight(j);
    return w;
  }
  auto it = entries_.find(u);
  return it == entries_.end() ? 0.0 : it->second;
}

std::optional<std::uint32_t> WeightSystem::finite_support() const {
  if (product_) {
    if (!tail_.present() ||
        (tail_.kind == TailSpec::Kind::geometric && tail_.param == 0.0))
      return static_cast<std::uint32_t>(prefix_.size());
    return std::nullopt;
  }
  std::uint32_t m = 0;
  for (const auto& [mask, w] : entries_)
    if (w > 0.0) m = std::max(m, mask.max_index());
  return m;
}

bool WeightSystem::is_non_increasing() const {
  if (!product_) return false;
  for (std::size_t i = 1; i < prefix_.size(); ++i)
    if (prefix_[i] > prefix_[i - 1]) return false;
  switch (tail_.kind) {
    case TailSpec::Kind::none:
      return true;  // drops to zero past the prefix
    case TailSpec::Kind::geometric:
      return tail_.param <= 1.0;
    case TailSpec::Kind::c_over_sqrt_log:
      // decreasing in j; only the junction needs a check
      return coordinate_weight(prefix_.size() + 1) <= prefix_.back();
  }
  return true;
}

namespace {

// Descending weights with stable original indices; supports the
// max-product-per-cardinality evaluations below.
struct SortedPrefix {
  std::vector<double> weights;       // descending
  std::vector<std::uint32_t> index;  // original 1-based coordinate

  void insert(double g, std::uint32_t idx) {
    auto pos = std::upper_bound(weights.begin(), weights.end(), g,
                                [](double a, double b) { return a > b; });
    const auto off = static_cast<std::size_t>(pos - weights.begin());
    weights.insert(pos, g);
    index.insert(index.begin() + static_cast<std::ptrdiff_t>(off), idx);
  }
};

double hat_radical(double d, double r) {
  return std::sqrt((4.9 + 2.0 * std::log(kE * d / r)) * r);
}

constexpr int kProductConstantsCap = 8192;

}  // namespace

WeightConstants corollary1_constants(const WeightSystem& ws, int d_max) {
  if (d_max < 1) throw UsageError("d_max must be at least 1");
  WeightConstants out;
  out.d_max_used = d_max;
  out.largest_completed_d = d_max;

  const auto consider = [&](double gamma_u, int r, int m,
                            const std::optional<SubsetMask>& witness) {
    if (gamma_u <= 0.0) return;
    const double c_score = gamma_u * std::sqrt(static_cast<double>(r));
    if (c_score > out.c_gamma) {
      out.c_gamma = c_score;
      out.c_argmax_d = m;
      out.c_witness = witness;
    }
    const double hat_score =
        gamma_u * hat_radical(static_cast<double>(m), static_cast<double>(r));
    if (hat_score > out.c_hat_gamma) {
      out.c_hat_gamma = hat_score;
      out.c_hat_argmax_d = m;
      out.c_hat_witness = witness;
    }
  };

  if (ws.is_product()) {
    int limit = d_max;
    if (limit > kProductConstantsCap) {
      limit = kProductConstantsCap;
      out.resource_limited = true;
      out.largest_completed_d = limit;
      out.d_max_used = limit;
    }
    SortedPrefix sorted;
    for (int m = 1; m <= limit; ++m) {
      const double gm = ws.coordinate_weight(static_cast<std::uint64_t>(m));
      // best subset of size r with max index m: gamma_m times the r-1
      // largest earlier weights
      double prod = gm;
      if (prod > 0.0) {
        for (int r = 1; r <= m; ++r) {
          if (r > 1) {
            const double g = sorted.weights[static_cast<std::size_t>(r - 2)];
            prod *= g;
            if (prod <= 0.0) break;
          }
          std::optional<SubsetMask> witness;
          const double c_cand = prod * std::sqrt(static_cast<double>(r));
          const double h_cand = prod * hat_radical(m, r);
          if (c_cand > out.c_gamma || h_cand > out.c_hat_gamma) {
            std::vector<std::uint32_t> idx(
                sorted.index.begin(),
                sorted.index.begin() + static_cast<std::ptrdiff_t>(r - 1));
            idx.push_back(static_cast<std::uint32_t>(m));
            witness = SubsetMask::from_indices(std::move(idx));
          }
          consider(prod, r, m, witness);
        }
      }
      sorted.insert(gm, static_cast<std::uint32_t>(m));
    }
  } else {
    for (const auto& [mask, w] : ws.entries()) {
      const int m = static_cast<int>(mask.max_index());
      if (m > d_max || w <= 0.0) continue;
      consider(w, mask.cardinality(), m, mask);
    }
  }

  out.stabilized = out.c_argmax_d < out.d_max_used &&
                   out.c_hat_argmax_d < out.d_max_used &&
                   !out.resource_limited;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converges:
      return "converges";
    case Verdict::diverges:
      return "diverges";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

SummabilityReport check_summability(const WeightSystem& ws, double c,
                                    std::uint64_t budget) {
  if (!(c > 0.0)) throw UsageError("summability requires c > 0");
  SummabilityReport rep;

  if (!ws.is_product()) {
    std::uint64_t used = 0;
    for (const auto& [mask, w] : ws.entries()) {
      if (used >= budget) {
        rep.verdict = Verdict::inconclusive;
        rep.terms_used = used;
        return rep;
      }
      rep.partial_sum += condition_term(w, c);
      ++used;
    }
    rep.terms_used = used;
    rep.remainder_bound = 0.0;  // finitely many stored subsets
    rep.verdict = Verdict::converges;
    return rep;
  }

  const auto& prefix = ws.prefix();
  for (double g : prefix) rep.partial_sum += condition_term(g, c);
  rep.terms_used = prefix.size();

  const TailSpec& tail = ws.tail();
  switch (tail.kind) {
    case TailSpec::Kind::none:
      rep.remainder_bound = 0.0;
      rep.verdict = Verdict::converges;
      return rep;
    case TailSpec::Kind::c_over_sqrt_log: {
      // terms j^(-p) with p = c / a^2
      const double p = c / (tail.param * tail.param);
      if (p > 1.0) {
        const double from = static_cast<double>(prefix.size());
        rep.remainder_bound = std::pow(from, 1.0 - p) / (p - 1.0);
        rep.verdict = Verdict::converges;
      } else {
        rep.verdict = Verdict::diverges;
      }
      return rep;
    }
    case TailSpec::Kind::geometric: {
      if (tail.param > 1.0) tail_monotonicity_error();
      const double base = prefix.back();
      if (base <= 0.0 || tail.param == 0.0) {
        rep.remainder_bound = 0.0;
        rep.verdict = Verdict::converges;
        return rep;
      }
      if (tail.param == 1.0) {
        rep.verdict = Verdict::diverges;  // constant positive terms
        return rep;
      }
      // successive term ratios are at most q < 1
      const double rho2 = 1.0 / (tail.param * tail.param);
      const double t1 = condition_term(base * tail.param, c);
      const double q = std::exp(-c / (base * base) * rho2 * (rho2 - 1.0));
      rep.remainder_bound = q < 1.0 ? t1 / (1.0 - q)
                                    : std::numeric_limits<double>::infinity();
      rep.verdict = Verdict::converges;
      return rep;
    }
  }
  rep.verdict = Verdict::inconclusive;
  return rep;
}

SummabilityReport check_power_summability(const WeightSystem& ws, double a) {
  if (!(a > 0.0)) throw UsageError("power summability requires a > 0");
  if (!ws.is_product())
    throw UsageError("power summability applies to product systems");
  SummabilityReport rep;
  const auto& prefix = ws.prefix();
  for (double g : prefix) rep.partial_sum += std::pow(g, a);
  rep.terms_used = prefix.size();

  const TailSpec& tail = ws.tail();
  switch (tail.kind) {
    case TailSpec::Kind::none:
      rep.remainder_bound = 0.0;
      rep.verdict = Verdict::converges;
      return rep;
    case TailSpec::Kind::c_over_sqrt_log:
      // (log j)^(-a/2) terms dominate every p-series tail
      rep.verdict = Verdict::diverges;
      return rep;
    case TailSpec::Kind::geometric: {
      if (tail.param > 1.0) tail_monotonicity_error();
      const double base = prefix.back();
      if (base <= 0.0 || tail.param == 0.0) {
        rep.remainder_bound = 0.0;
        rep.verdict = Verdict::converges;
        return rep;
      }
      if (tail.param == 1.0) {
        rep.verdict = Verdict::diverges;
        return rep;
      }
      const double ra = std::pow(tail.param, a);
      rep.remainder_bound = std::pow(base, a) * ra / (1.0 - ra);
      rep.verdict = Verdict::converges;
      return rep;
    }
  }
  rep.verdict = Verdict::inconclusive;
  return rep;
}

SmallnessReport check_theorem4_smallness(const WeightSystem& ws, double c,
                                         int d_max) {
  if (!(c > 0.0)) throw UsageError("smallness check requires c > 0");
  if (d_max < 1) throw UsageError("d_max must be at least 1");
  SmallnessReport rep;
  rep.c = c;
  rep.d_max = d_max;
  rep.ok = true;

  if (ws.is_product()) {
    SortedPrefix sorted;
    for (int j = 1; j <= d_max; ++j)
      sorted.insert(ws.coordinate_weight(static_cast<std::uint64_t>(j)),
                    static_cast<std::uint32_t>(j));
    double prod = 1.0;
    for (int r = 1; r <= d_max; ++r) {
      prod *= sorted.weights[static_cast<std::size_t>(r - 1)];
      if (prod > c / std::sqrt(static_cast<double>(r))) {
        rep.ok = false;
        std::vector<std::uint32_t> idx(
            sorted.index.begin(),
            sorted.index.begin() + static_cast<std::ptrdiff_t>(r));
        rep.violation = SubsetMask::from_indices(std::move(idx));
        return rep;
      }
      if (prod == 0.0) break;  // no larger subset can violate
    }
    return rep;
  }

  for (const auto& [mask, w] : ws.entries()) {
    if (mask.max_index() > static_cast<std::uint32_t>(d_max)) continue;
    const double r = static_cast<double>(mask.cardinality());
    if (w > c / std::sqrt(r)) {
      rep.ok = false;
      rep.violation = mask;
      return rep;
    }
  }
  return rep;
}

namespace {

[[noreturn]] void weight_parse_fail(std::size_t line_no,
                                    const std::string& what) {
  std::ostringstream os;
  os << "weight file parse error on line " << line_no << ": " << what;
  throw UsageError(os.str());
}

double parse_kv(const std::string& token, const std::string& key,
                std::size_t line_no) {
  const auto eq = token.find('=');
  if (eq == std::string::npos || token.substr(0, eq) != key)
    weight_parse_fail(line_no, "expected " + key + "=<value>");
  try {
    return std::stod(token.substr(eq + 1));
  } catch (const std::exception&) {
    weight_parse_fail(line_no, "bad numeric value in " + token);
  }
}

}  // namespace

WeightSystem load_weight_system(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string header;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream is(line);
    if (is >> header && header[0] != '#') break;
    header.clear();
  }
  if (header != "product" && header != "explicit")
    weight_parse_fail(line_no, "expected header \"product\" or \"explicit\"");

  if (header == "product") {
    std::vector<std::pair<std::uint64_t, double>> items;
    TailSpec tail;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream is(line);
      std::string first;
      if (!(is >> first) || first[0] == '#') continue;
      if (first == "tail") {
        std::string family, kv;
        if (!(is >> family >> kv)) weight_parse_fail(line_no, "incomplete tail");
        if (family == "c_over_sqrt_log") {
          tail.kind = TailSpec::Kind::c_over_sqrt_log;
          tail.param = parse_kv(kv, "c", line_no);
        } else if (family == "geometric") {
          tail.kind = TailSpec::Kind::geometric;
          tail.param = parse_kv(kv, "ratio", line_no);
        } else {
          weight_parse_fail(line_no, "unknown tail family " + family);
        }
        continue;
      }
      std::uint64_t j = 0;
      double g = 0.0;
      try {
        j = std::stoull(first);
      } catch (const std::exception&) {
        weight_parse_fail(line_no, "expected coordinate index");
      }
      if (!(is >> g) || !(g >= 0.0))
        weight_parse_fail(line_no, "expected non-negative weight");
      if (j == 0) weight_parse_fail(line_no, "indices are 1-based");
      items.emplace_back(j, g);
    }
    std::sort(items.begin(), items.end());
    std::vector<double> prefix;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].first != i + 1)
        throw UsageError(
            "product weight file must list every index 1..P exactly once");
      prefix.push_back(items[i].second);
    }
    return WeightSystem::product(std::move(prefix), tail);
  }

  WeightSystem::ExplicitMap entries;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream is(line);
    std::string idx_list;
    double g = 0.0;
    if (!(is >> idx_list) || idx_list[0] == '#') continue;
    if (!(is >> g) || !(g >= 0.0))
      weight_parse_fail(line_no, "expected non-negative weight");
    std::vector<std::uint32_t> indices;
    std::istringstream idx(idx_list);
    std::string part;
    while (std::getline(idx, part, ',')) {
      try {
        indices.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      } catch (const std::exception&) {
        weight_parse_fail(line_no, "bad index list " + idx_list);
      }
    }
    if (indices.empty()) weight_parse_fail(line_no, "empty index list");
    SubsetMask mask = SubsetMask::from_indices(std::move(indices));
    if (!entries.emplace(mask, g).second)
      weight_parse_fail(line_no, "duplicate subset " + mask.to_string());
  }
  return WeightSystem::explicit_weights(std::move(entries));
}

WeightSystem load_weight_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open weight file: " + path);
  return load_weight_system(in);
}

void save_weight_system(const WeightSystem& ws, std::ostream& out) {
  char buf[32];
  if (ws.is_product()) {
    out << "product\n";
    for (std::size_t j = 0; j < ws.prefix().size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", ws.prefix()[j]);
      out << (j + 1) << ' ' << buf << '\n';
    }
    const TailSpec& tail = ws.tail();
    if (tail.kind == TailSpec::Kind::c_over_sqrt_log) {
      std::snprintf(buf, sizeof(buf), "%.17g", tail.param);
      out << "tail c_over_sqrt_log c=" << buf << '\n';
    } else if (tail.kind == TailSpec::Kind::geometric) {
      std::snprintf(buf, sizeof(buf), "%.17g", tail.param);
      out << "tail geometric ratio=" << buf << '\n';
    }
    return;
  }
  out << "explicit\n";
  for (const auto& [mask, w] : ws.entries()) {
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    out << mask.to_string() << ' ' << buf << '\n';
  }
}

}  // namespace stardisc
