#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ellq {

inline constexpr const char* kReportSchema = "ellq-report/1";

/// One verified identity instance.
struct CheckRecord {
  std::string suite;
  std::string identity;
  /// Ordered (name, value) pairs; enough to re-run the check alone.
  std::vector<std::pair<std::string, std::string>> parameters;
  int order = -1;
  std::vector<std::string> samples;
  std::string worst_sample;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// "below": pass iff max_residual <= tolerance; "above": negative control, pass iff max_residual > tolerance.
  std::string criterion = "below";
  bool exact = false;
  bool pass = false;
  /// Set when the check broke down numerically (pole, singular matrix, divergence).
  std::string error;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Report {
  std::string schema = kReportSchema;
  /// The only field that varies between identical runs.
  std::string generated_at;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckRecord> records;

  int passed() const;
  int failed() const;
  bool breakdown() const;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { Json, Csv, Text };

/// Throws ConfigError("format", ...) for unknown names.
ReportFormat parse_report_format(const std::string& name);

std::string report_to_json(const Report& r);
/// Inverse of report_to_json. Throws ConfigError on schema mismatch or malformed input.
Report report_from_json(const std::string& text);
/// Header plus one row per record.
std::string report_to_csv(const Report& r);
/// One line per record plus a summary line.
std::string report_to_text(const Report& r);
std::string render_report(const Report& r, ReportFormat format);

/// 0 all pass, 1 some identity failed, 3 numerical breakdown.
int report_exit_code(const Report& r);

}  // namespace ellq
