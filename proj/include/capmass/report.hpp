#pragma once

// Scenario reports and their json / csv / text serializations. Json output
// is deterministic: keys keep insertion order, reals use 17 significant
// digits and non-finite values become null.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "capmass/scenario.hpp"

namespace capmass {

using OrderedJson = nlohmann::ordered_json;

enum class CheckStatus { kPass, kHypothesisViolated, kFail };

std::string to_string(CheckStatus status);
CheckStatus check_status_from_string(const std::string& name);

struct CheckRecord {
  CheckKind check = CheckKind::kTheorem1;
  CheckStatus status = CheckStatus::kPass;
  std::string verdict;  // Verdict name, or the closest status word for non-inequality checks
  std::string note;     // hypothesis or failure explanation, empty when passing
  OrderedJson values = OrderedJson::object();

  bool operator==(const CheckRecord&) const = default;
};

/// Row of the csv summary, taken from the first mass-capacity statement.
struct PointSummary {
  double capacity = 0.0;
  double mass = 0.0;
  double lambda = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::string verdict;

  bool operator==(const PointSummary&) const = default;
};

struct PointRecord {
  std::size_t index = 0;
  int dimension = 3;
  std::optional<double> mass;  // absent for tabulated metrics
  double boundary_r0 = 0.0;
  PointSummary summary;
  std::vector<CheckRecord> checks;

  bool operator==(const PointRecord&) const = default;
};

struct Report {
  std::string scenario;
  OrderedJson provenance = OrderedJson::object();
  std::vector<PointRecord> points;
  std::optional<double> wall_time_seconds;  // only when timing was requested

  bool has_failure() const;
  bool operator==(const Report&) const = default;
};

enum class ReportFormat { kJson, kCsv, kText };

std::optional<ReportFormat> report_format_from_string(const std::string& name);
std::string extension(ReportFormat format);

std::string emit(const Report& report, ReportFormat format);

/// Inverse of emit(report, kJson). Throws ParseError on malformed input.
Report report_from_json(const std::string& text);

/// Deterministic json text: 2-space indent, %.17g reals, null for non-finite.
std::string dump_json(const OrderedJson& value);

/// Stores a real, mapping non-finite values to null.
OrderedJson real(double value);

inline const char* csv_header() { return "name,n,m,r0,capacity,mass,Lambda,c,alpha,rhs,gap,verdict"; }

}  // namespace capmass
