#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stardisc/bounds.hpp"
#include "stardisc/construct.hpp"
#include "stardisc/discrepancy.hpp"
#include "stardisc/tail.hpp"

namespace stardisc {

inline constexpr std::string_view kReportSchemaVersion = "1";

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view name);

// Minimal deterministic JSON emitter: insertion-ordered fields, floats
// rendered with 17 significant digits so parse(serialize(x)) == x.
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array(std::string_view key);
  void begin_array();
  void end_array();
  void begin_object(std::string_view key);
  void field(std::string_view key, double value);
  void field(std::string_view key, std::int64_t value);
  void field(std::string_view key, std::uint64_t value);
  void field(std::string_view key, int value);
  void field(std::string_view key, bool value);
  void field(std::string_view key, std::string_view value);
  void null_field(std::string_view key);
  void element(double value);
  void element(std::int64_t value);
  void element(std::string_view value);
  std::string str() const { return out_; }

  static std::string format_double(double value);

 private:
  void comma();
  void key(std::string_view k);

  std::string out_;
  std::vector<bool> first_;  // per nesting level
};

std::string to_json(const DiscrepancyResult& r);
std::string to_json(const BoundReport& r);
std::string to_json(const TailEstimate& r);
std::string to_json(const ConstructionOutcome& r, std::string_view which);

std::string to_csv(const DiscrepancyResult& r);
std::string to_csv(const BoundReport& r);
std::string to_csv(const std::vector<TailEstimate>& rows);
std::string to_csv(const ConstructionOutcome& r, std::string_view which);

// Documented CSV headers (first line of the corresponding to_csv output).
std::string_view csv_header_discrepancy();
std::string_view csv_header_bound();
std::string_view csv_header_tail();
std::string_view csv_header_construction();

// Round-trip parsers for the JSON encodings above.
DiscrepancyResult discrepancy_result_from_json(std::string_view text);
BoundReport bound_report_from_json(std::string_view text);
TailEstimate tail_estimate_from_json(std::string_view text);

bool operator==(const DiscrepancyResult& a, const DiscrepancyResult& b);

}  // namespace stardisc
