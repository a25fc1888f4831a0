#include "ellq/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "ellq/errors.hpp"
#include "json.hpp"

namespace ellq {

using nlohmann::ordered_json;

int Report::passed() const {
  return int(std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; }));
}

int Report::failed() const { return int(records.size()) - passed(); }

bool Report::breakdown() const {
  return std::any_of(records.begin(), records.end(), [](const CheckRecord& r) { return !r.error.empty(); });
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw ConfigError("format", "expected json, csv or text, got '" + name + "'");
}

namespace {

ordered_json pairs_to_json(const std::vector<std::pair<std::string, std::string>>& kv) {
  ordered_json o = ordered_json::object();
  for (const auto& [k, v] : kv) o[k] = v;
  return o;
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const ordered_json& o) {
  std::vector<std::pair<std::string, std::string>> kv;
  for (auto it = o.begin(); it != o.end(); ++it) kv.emplace_back(it.key(), it.value().get<std::string>());
  return kv;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string report_to_json(const Report& r) {
  ordered_json j;
  j["schema"] = r.schema;
  j["generated_at"] = r.generated_at;
  j["config"] = pairs_to_json(r.config);
  ordered_json recs = ordered_json::array();
  for (const auto& c : r.records) {
    ordered_json o;
    o["suite"] = c.suite;
    o["identity"] = c.identity;
    o["parameters"] = pairs_to_json(c.parameters);
    o["order"] = c.order;
    o["samples"] = c.samples;
    o["worst_sample"] = c.worst_sample;
    o["max_residual"] = c.max_residual;
    o["tolerance"] = c.tolerance;
    o["criterion"] = c.criterion;
    o["exact"] = c.exact;
    o["pass"] = c.pass;
    o["error"] = c.error;
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  j["summary"] = {{"total", r.records.size()}, {"passed", r.passed()}, {"failed", r.failed()}};
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError("report", std::string("malformed JSON: ") + e.what());
  }
  if (!j.contains("schema") || j["schema"] != kReportSchema) throw ConfigError("schema", "expected ellq-report/1");
  try {
    Report r;
    r.schema = j["schema"].get<std::string>();
    r.generated_at = j["generated_at"].get<std::string>();
    r.config = pairs_from_json(j["config"]);
    for (const auto& o : j["records"]) {
      CheckRecord c;
      c.suite = o["suite"].get<std::string>();
      c.identity = o["identity"].get<std::string>();
      c.parameters = pairs_from_json(o["parameters"]);
      c.order = o["order"].get<int>();
      c.samples = o["samples"].get<std::vector<std::string>>();
      c.worst_sample = o["worst_sample"].get<std::string>();
      c.max_residual = o["max_residual"].get<double>();
      c.tolerance = o["tolerance"].get<double>();
      c.criterion = o["criterion"].get<std::string>();
      c.exact = o["exact"].get<bool>();
      c.pass = o["pass"].get<bool>();
      c.error = o["error"].get<std::string>();
      r.records.push_back(std::move(c));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("records", std::string("missing or mistyped field: ") + e.what());
  }
}

std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os << "suite,identity,parameters,order,samples,max_residual,tolerance,criterion,exact,pass,error\n";
  for (const auto& c : r.records) {
    std::string params;
    for (const auto& [k, v] : c.parameters) params += (params.empty() ? "" : ";") + k + "=" + v;
    char residual[32];
    char tol[32];
    std::snprintf(residual, sizeof residual, "%.17g", c.max_residual);
    std::snprintf(tol, sizeof tol, "%.17g", c.tolerance);
    os << csv_escape(c.suite) << ',' << csv_escape(c.identity) << ',' << csv_escape(params) << ',' << c.order << ','
       << c.samples.size() << ',' << residual << ',' << tol << ',' << c.criterion << ','
       << (c.exact ? "true" : "false") << ',' << (c.pass ? "true" : "false") << ',' << csv_escape(c.error) << '\n';
  }
  return os.str();
}

std::string report_to_text(const Report& r) {
  std::ostringstream os;
  for (const auto& c : r.records) {
    os << (c.pass ? "PASS " : "FAIL ") << c.suite << '/' << c.identity;
    if (c.exact) {
      os << "  residual " << (c.max_residual == 0.0 ? "0 (exact)" : fmt_double(c.max_residual));
    } else {
      os << "  residual " << fmt_double(c.max_residual) << (c.criterion == "above" ? " > " : " <= ")
         << fmt_double(c.tolerance);
    }
    if (!c.error.empty()) os << "  error: " << c.error;
    os << '\n';
  }
  os << r.passed() << " passed, " << r.failed() << " failed, " << r.records.size() << " total\n";
  return os.str();
}

std::string render_report(const Report& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return report_to_json(r);
    case ReportFormat::Csv:
      return report_to_csv(r);
    case ReportFormat::Text:
      return report_to_text(r);
  }
  return {};
}

int report_exit_code(const Report& r) {
  if (r.breakdown()) return 3;
  return r.failed() > 0 ? 1 : 0;
}

}  // namespace ellq
