#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellq/report.hpp"
#include "ellq/theta.hpp"

namespace ellq {

/// Everything a verification run depends on. Unset optionals fall back to per-suite defaults.
struct RunConfig {
  std::vector<std::string> suites;
  cplx tau{0.0, 1.0};
  cplx hbar{0.31, 0.0};
  /// Raw site strings: complex for elliptic suites, rational for Yangian suites.
  std::vector<std::string> sites;
  std::optional<int> order;
  std::optional<int> depth;
  std::optional<int> samples;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::string report;
  std::string format = "json";
};

/// "0.3", "i", "-2.5i", "0.1+1.2i", "1/2", "0.1-0.2i".
cplx parse_complex(const std::string& s);
/// Shortest round-trip form "re+imi".
std::string format_complex(cplx c);

/// Sets one key ("tau", "hbar", "sites", "order", "depth", "samples", "seed", "tol", "suites",
/// "report", "format"). Throws ConfigError naming the key.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat TOML-style "key = value" lines; '#' comments; strings may be quoted; lists as
/// comma-separated values or ["a", "b"]. Errors name "line N" or the key.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});

/// Range and genericity checks on every field. Throws ConfigError with the field path.
void validate_config(const RunConfig& cfg);

/// Individual suite names, in run order.
std::vector<std::string> suite_names();
/// Expands "all" and "yangian-all", removes duplicates, keeps run order. Throws ConfigError("suites", ...)
/// for unknown or empty selections.
std::vector<std::string> expand_suites(const std::vector<std::string>& selection);

/// Runs the selected suites. Records are ordered by suite, then by generation order; generated_at is left empty.
Report run_suites(const RunConfig& cfg);

}  // namespace ellq
