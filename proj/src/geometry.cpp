#include "stardisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "stardisc/errors.hpp"

namespace stardisc {

double volume(const AnchoredBox& box) {
  double v = 1.0;
  for (double z : box.upper) v *= z;
  return v;
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : d_(dim), coords_(std::move(coords)) {
  if (d_ == 0) throw UsageError("point dimension must be at least 1");
  if (coords_.empty() || coords_.size() % d_ != 0)
    throw UsageError("coordinate buffer does not hold N x d values");
  n_ = coords_.size() / d_;
  for (double c : coords_) {
    if (!(c >= 0.0 && c <= 1.0))
      throw UsageError("point coordinate outside [0,1]");
    if (c == 1.0) has_unit_coord_ = true;
  }
  order_.resize(d_ * n_);
  for (std::size_t j = 0; j < d_; ++j) {
    auto* begin = order_.data() + j * n_;
    std::iota(begin, begin + n_, std::uint32_t{0});
    std::stable_sort(begin, begin + n_, [&](std::uint32_t a, std::uint32_t b) {
      return coords_[a * d_ + j] < coords_[b * d_ + j];
    });
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw UsageError("point set must contain at least one point");
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw UsageError("points of mixed dimension");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return PointSet(d, std::move(flat));
}

std::int64_t count_in_box(const PointSet& ps, const AnchoredBox& box,
                          std::span<const Closure> closure) {
  if (box.dim() != ps.dim() || closure.size() != ps.dim())
    throw UsageError("dimension mismatch between point set and box");
  std::int64_t count = 0;
  const std::size_t d = ps.dim();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto row = ps.row(i);
    bool inside = true;
    for (std::size_t j = 0; j < d; ++j) {
      const double c = row[j];
      const double z = box.upper[j];
      if (closure[j] == Closure::open ? !(c < z) : !(c <= z)) {
        inside = false;
        break;
      }
    }
    if (inside) ++count;
  }
  return count;
}

std::int64_t count_in_box(const PointSet& ps, const AnchoredBox& box,
                          Closure uniform) {
  std::vector<Closure> flags(ps.dim(), uniform);
  return count_in_box(ps, box, flags);
}

PointSet project(const PointSet& ps, const SubsetMask& u) {
  const auto idx = u.indices();
  if (idx.back() > ps.dim())
    throw UsageError("subset mask index exceeds point dimension");
  std::vector<double> flat;
  flat.reserve(ps.size() * idx.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto row = ps.row(i);
    for (auto j : idx) flat.push_back(row[j - 1]);
  }
  return PointSet(idx.size(), std::move(flat));
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "point set parse error on line " << line_no << ": " << what;
  throw UsageError(os.str());
}

}  // namespace

PointSet load_point_set(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::int64_t n = 0, d = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream is(line);
    if (is >> n >> d) break;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      parse_fail(line_no, "expected header \"N d\"");
  }
  if (n < 1 || d < 1) parse_fail(line_no, "header must satisfy N >= 1, d >= 1");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n * d));
  for (std::int64_t i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      parse_fail(line_no, "unexpected end of file before all points were read");
    ++line_no;
    std::istringstream is(line);
    for (std::int64_t j = 0; j < d; ++j) {
      double c;
      if (!(is >> c)) parse_fail(line_no, "expected " + std::to_string(d) +
                                              " coordinates");
      if (!(c >= 0.0 && c <= 1.0))
        parse_fail(line_no, "coordinate " + std::to_string(c) +
                                " outside [0,1]");
      flat.push_back(c);
    }
    double extra;
    if (is >> extra) parse_fail(line_no, "trailing values after coordinates");
  }
  return PointSet(static_cast<std::size_t>(d), std::move(flat));
}

PointSet load_point_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open point set file: " + path);
  return load_point_set(in);
}

void save_point_set(const PointSet& ps, std::ostream& out) {
  out << ps.size() << ' ' << ps.dim() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto row = ps.row(i);
    for (std::size_t j = 0; j < ps.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
}

void save_point_set_file(const PointSet& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  save_point_set(ps, out);
}

}  // namespace stardisc
