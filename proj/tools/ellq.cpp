#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ellq/bethe.hpp"
#include "ellq/suites.hpp"
#include "json.hpp"

namespace {

constexpr int kExitUsage = 2;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ellq::ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string extension(ellq::ReportFormat f) {
  switch (f) {
    case ellq::ReportFormat::Json:
      return "json";
    case ellq::ReportFormat::Csv:
      return "csv";
    case ellq::ReportFormat::Text:
      return "txt";
  }
  return "out";
}

struct VerifyArgs {
  std::vector<std::string> suites;
  std::string config;
  std::vector<std::pair<std::string, std::string>> flags;
};

int run_verify(const VerifyArgs& args) {
  ellq::RunConfig cfg;
  if (!args.config.empty()) cfg = ellq::parse_config_text(read_file(args.config));
  if (!args.suites.empty()) cfg.suites = args.suites;
  for (const auto& [key, value] : args.flags) ellq::set_config_value(cfg, key, value);
  ellq::validate_config(cfg);
  const ellq::ReportFormat format = ellq::parse_report_format(cfg.format);

  ellq::Report report = ellq::run_suites(cfg);
  report.generated_at = utc_timestamp();
  const std::string rendered = ellq::render_report(report, format);

  std::string path = cfg.report;
  if (path.empty()) {
    if (const char* dir = std::getenv("ELLQ_REPORT_DIR"); dir != nullptr && *dir != '\0') {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / ("ellq-report." + extension(format))).string();
    }
  }
  if (path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(path);
    if (!out) throw ellq::ConfigError("report", "cannot write '" + path + "'");
    out << rendered;
    std::cout << ellq::report_to_text(report) << "report written to " << path << '\n';
  }
  return ellq::report_exit_code(report);
}

struct BetheArgs {
  std::string model = "elliptic";
  int n = 1;
  std::string a = "0.21+0.13i";
  std::string a1 = "1/2";
  std::string a2 = "2/3";
  std::string p = "0.7648421872844885+0.644217687237691i";
  std::string tau = "i";
  std::string hbar = "0.31";
  int seeds = 40;
  std::uint64_t seed = 42;
  int max_iter = 200;
  double tol = 1e-14;
};

nlohmann::ordered_json complex_json(ellq::cplx c) { return ellq::format_complex(c); }

int run_bethe(const BetheArgs& args) {
  auto complex_field = [](const std::string& field, const std::string& value) {
    try {
      return ellq::parse_complex(value);
    } catch (const ellq::ParameterError& e) {
      throw ellq::ConfigError(field, e.what());
    }
  };
  const ellq::cplx p = complex_field("p", args.p);
  nlohmann::ordered_json out;
  if (args.model == "yangian") {
    const ellq::cplx a1 = complex_field("a1", args.a1);
    const ellq::cplx a2 = complex_field("a2", args.a2);
    const ellq::YangianBetheRoots roots = ellq::yangian_bethe_solve(a1, a2, p);
    out["model"] = "yangian";
    out["a1"] = complex_json(a1);
    out["a2"] = complex_json(a2);
    out["p"] = complex_json(p);
    out["roots"] = nlohmann::ordered_json::array();
    for (ellq::cplx z : roots.roots) {
      nlohmann::ordered_json r;
      r["z1"] = complex_json(z);
      r["residual"] = std::abs(p * (z + a1 + 1.0) * (z + a2 + 1.0) - (z + a1) * (z + a2));
      out["roots"].push_back(r);
    }
    out["degenerate"] = roots.degenerate;
    out["linear"] = roots.linear;
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  if (args.model != "elliptic") throw ellq::ConfigError("model", "expected elliptic or yangian");
  if (args.n < 1 || args.n > 8) throw ellq::ConfigError("n", "must be in 1..8");
  ellq::EllipticParams params;
  try {
    params = ellq::EllipticParams(complex_field("tau", args.tau), complex_field("hbar", args.hbar));
  } catch (const ellq::ParameterError& e) {
    throw ellq::ConfigError("hbar", e.what());
  }
  const ellq::cplx a = complex_field("a", args.a);
  ellq::NewtonOptions opts;
  opts.max_iter = args.max_iter;
  opts.tol = args.tol;
  const ellq::BetheSolveResult res =
      ellq::elliptic_bethe_solve(args.n, a, p, ellq::bethe_seeds(args.n, args.seeds, args.seed, params), params, opts);
  out["model"] = "elliptic";
  out["tau"] = complex_json(params.tau);
  out["hbar"] = complex_json(params.hbar);
  out["n"] = args.n;
  out["a"] = complex_json(a);
  out["p"] = complex_json(p);
  out["seeds"] = args.seeds;
  out["seed"] = args.seed;
  out["solutions"] = nlohmann::ordered_json::array();
  for (const auto& sol : res.solutions) {
    nlohmann::ordered_json s;
    s["roots"] = nlohmann::ordered_json::array();
    for (ellq::cplx z : sol.config.roots) s["roots"].push_back(complex_json(z));
    s["residual"] = sol.residual;
    s["iterations"] = sol.iterations;
    s["sum_defect"] = complex_json(sol.sum_defect);
    s["sum_rule"] = sol.sum_rule;
    out["solutions"].push_back(s);
  }
  out["failures"] = res.failures;
  std::cout << out.dump(2) << '\n';
  return res.solutions.empty() ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic quantum group and Yangian identity checker"};
  app.require_subcommand(1);

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "Run verification suites and write a report");
  std::string suite_help = "Suites: all, yangian-all";
  for (const auto& s : ellq::suite_names()) suite_help += ", " + s;
  verify->add_option("suites", vargs.suites, suite_help);
  verify->add_option("--config", vargs.config, "TOML-style key = value file; flags override it");
  for (const std::string key : {"tau", "hbar", "sites", "order", "depth", "samples", "seed", "tol", "report", "format"}) {
    auto* opt = verify->add_option_function<std::string>(
        "--" + key, [&vargs, key](const std::string& v) { vargs.flags.emplace_back(key, v); });
    if (key == "tau" || key == "hbar") opt->description("complex number, e.g. i or 0.1+1.2i");
    if (key == "sites") opt->description("comma-separated sites (rational for Yangian suites)");
    if (key == "format") opt->description("json, csv or text");
    if (key == "report") opt->description("output path (default: stdout, or $ELLQ_REPORT_DIR)");
    if (key == "order") opt->description("truncation order in p (default per suite)");
    if (key == "depth") opt->description("q-character depth (default per suite)");
    if (key == "samples") opt->description("number of random samples (default per suite)");
    if (key == "seed") opt->description("sampling seed (default 42)");
    if (key == "tol") opt->description("override the tolerance of non-control checks");
  }

  BetheArgs bargs;
  auto* bethe = app.add_subcommand("bethe", "Solve Bethe equations and print the solutions as JSON");
  bethe->add_option("--model", bargs.model, "elliptic or yangian")->capture_default_str();
  bethe->add_option("--n", bargs.n, "number of roots (elliptic)")->capture_default_str();
  bethe->add_option("--a", bargs.a, "site a (elliptic)")->capture_default_str();
  bethe->add_option("--a1", bargs.a1, "first site (yangian)")->capture_default_str();
  bethe->add_option("--a2", bargs.a2, "second site (yangian)")->capture_default_str();
  bethe->add_option("--p", bargs.p, "twist p")->capture_default_str();
  bethe->add_option("--tau", bargs.tau, "modular parameter")->capture_default_str();
  bethe->add_option("--hbar", bargs.hbar, "Planck parameter")->capture_default_str();
  bethe->add_option("--seeds", bargs.seeds, "number of Newton starts")->capture_default_str();
  bethe->add_option("--seed", bargs.seed, "seed for the Newton starts")->capture_default_str();
  bethe->add_option("--max-iter", bargs.max_iter, "Newton iteration cap")->capture_default_str();
  bethe->add_option("--tol", bargs.tol, "Newton tolerance on |G|")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      if (vargs.suites.empty() && vargs.config.empty()) throw ellq::ConfigError("suites", "no suite selected");
      return run_verify(vargs);
    }
    return run_bethe(bargs);
  } catch (const ellq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ellq::Error& e) {
    std::cerr << "breakdown: " << e.what() << '\n';
    return 3;
  }
}
