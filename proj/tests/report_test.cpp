#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "ellq/suites.hpp"

using namespace ellq;
namespace fs = std::filesystem;

namespace {

RunConfig small_config(std::vector<std::string> suites) {
  RunConfig cfg;
  cfg.suites = std::move(suites);
  cfg.samples = 8;
  return cfg;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

CheckRecord record(bool pass, std::string error = {}) {
  CheckRecord r;
  r.suite = "theta";
  r.identity = "synthetic";
  r.max_residual = pass ? 0.0 : 1.0;
  r.tolerance = 1e-12;
  r.pass = pass;
  r.error = std::move(error);
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("ellq_report_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + ELLQ_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ReportJson, RoundTripIsBitExact) {
  Report r = run_suites(small_config({"theta", "yangian-rtt"}));
  ASSERT_FALSE(r.records.empty());
  r.generated_at = "2026-01-01T00:00:00Z";
  CheckRecord odd = record(false, "pole at \"z\" \\ tab\there");
  odd.max_residual = std::numeric_limits<double>::denorm_min();
  odd.tolerance = 0.1;
  odd.parameters = {{"b", "1"}, {"a", "2"}};
  odd.samples = {"x=0.1+0.2i", "x=-3e-300+1i"};
  r.records.push_back(odd);
  const Report back = report_from_json(report_to_json(r));
  EXPECT_EQ(back, r);
  EXPECT_EQ(report_to_json(back), report_to_json(r));
}

TEST(ReportJson, EmptyReport) {
  const Report r;
  const Report back = report_from_json(report_to_json(r));
  EXPECT_EQ(back, r);
  EXPECT_EQ(report_exit_code(r), 0);
  EXPECT_EQ(r.passed(), 0);
  EXPECT_EQ(r.failed(), 0);
}

TEST(ReportJson, RejectsForeignDocuments) {
  EXPECT_THROW(report_from_json("{\"schema\": \"other/2\", \"records\": []}"), ConfigError);
  EXPECT_THROW(report_from_json("not json"), ConfigError);
}

TEST(Report, DeterministicAcrossRuns) {
  const RunConfig cfg = small_config({"ybe", "bethe", "yangian-degree"});
  const Report a = run_suites(cfg), b = run_suites(cfg);
  EXPECT_TRUE(a.generated_at.empty());
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_to_json(a), report_to_json(b));
}

TEST(Report, FlatViews) {
  const Report r = run_suites(small_config({"gauss", "yangian-a21"}));
  const std::string csv = report_to_csv(r), text = report_to_text(r);
  EXPECT_EQ(count_lines(csv), int(r.records.size()) + 1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "suite,identity,parameters,order,samples,max_residual,tolerance,criterion,exact,pass,error");
  EXPECT_EQ(count_lines(text), int(r.records.size()) + 1);
  EXPECT_EQ(render_report(r, ReportFormat::Csv), csv);
  EXPECT_EQ(parse_report_format("text"), ReportFormat::Text);
  try {
    parse_report_format("xml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "format");
  }
}

TEST(Report, ExitCodes) {
  Report r;
  r.records = {record(true), record(true)};
  EXPECT_EQ(report_exit_code(r), 0);
  r.records.push_back(record(false));
  EXPECT_EQ(report_exit_code(r), 1);
  EXPECT_EQ(r.failed(), 1);
  Report broken;
  broken.records = {record(true), record(false, "Newton did not converge")};
  EXPECT_TRUE(broken.breakdown());
  EXPECT_EQ(report_exit_code(broken), 3);
}

TEST(Report, ExactRecordsAreLiteralZero) {
  for (const CheckRecord& c : run_suites(small_config({"yangian-tq"})).records) {
    EXPECT_TRUE(c.exact);
    EXPECT_TRUE(c.pass) << c.identity;
    if (c.criterion == "below") {
      EXPECT_EQ(c.max_residual, 0.0) << c.identity;
    } else {
      EXPECT_GT(c.max_residual, 0.0) << c.identity;
    }
  }
}

TEST(Config, ComplexParsing) {
  EXPECT_EQ(parse_complex("i"), cplx(0, 1));
  EXPECT_EQ(parse_complex("-2.5i"), cplx(0, -2.5));
  EXPECT_EQ(parse_complex("0.1+1.2i"), cplx(0.1, 1.2));
  EXPECT_EQ(parse_complex("0.1-0.2i"), cplx(0.1, -0.2));
  EXPECT_EQ(parse_complex("1/2"), cplx(0.5, 0));
  EXPECT_EQ(parse_complex("1e-3+2E2i"), cplx(1e-3, 200));
  EXPECT_THROW(parse_complex("abc"), Error);
  EXPECT_THROW(parse_complex(""), Error);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int k = 0; k < 200; ++k) {
    const cplx c(d(rng), d(rng) * 1e-7);
    EXPECT_EQ(parse_complex(format_complex(c)), c);
  }
  EXPECT_EQ(format_complex(cplx(0.21, 0.13)), "0.21+0.13i");
}

TEST(Config, TomlSubset) {
  const RunConfig cfg = parse_config_text(
      "# run\n"
      "tau = \"0.1+1.2i\"\n"
      "hbar = 0.27  # trailing\n"
      "sites = [\"0.2+0.1i\", \"0.4+0.3i\"]\n"
      "\n"
      "[extra]\n"
      "order = 5\n"
      "suites = theta, ybe\n"
      "seed = 9\n");
  EXPECT_EQ(cfg.tau, cplx(0.1, 1.2));
  EXPECT_EQ(cfg.hbar, cplx(0.27, 0));
  EXPECT_EQ(cfg.sites, (std::vector<std::string>{"0.2+0.1i", "0.4+0.3i"}));
  EXPECT_EQ(cfg.order, 5);
  EXPECT_EQ(cfg.suites, (std::vector<std::string>{"theta", "ybe"}));
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_NO_THROW(validate_config(cfg));

  try {
    parse_config_text("tau = i\nthis line is broken\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  try {
    parse_config_text("colour = blue\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "colour");
  }
  try {
    parse_config_text("order = many\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "order");
  }
}

TEST(Config, Validation) {
  auto field_of = [](RunConfig cfg) -> std::string {
    try {
      validate_config(cfg);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return "";
  };
  RunConfig ok = small_config({"theta"});
  EXPECT_EQ(field_of(ok), "");
  RunConfig c = ok;
  c.tau = cplx(0.3, -1.0);
  EXPECT_EQ(field_of(c), "tau");
  c = ok;
  c.samples = 0;
  EXPECT_EQ(field_of(c), "samples");
  c = ok;
  c.tol = -1.0;
  EXPECT_EQ(field_of(c), "tol");
  c = ok;
  c.sites = {"0.2+0.1i"};
  EXPECT_EQ(field_of(c), "sites");
  c = small_config({"yangian-tq"});
  c.sites = {"1/2", "0.2+0.1i"};
  EXPECT_EQ(field_of(c), "sites[1]");
}

TEST(Config, SuiteExpansion) {
  EXPECT_EQ(expand_suites({"all"}), suite_names());
  const auto y = expand_suites({"yangian-all"});
  EXPECT_FALSE(y.empty());
  for (const auto& s : y) EXPECT_EQ(s.rfind("yangian-", 0), 0u);
  EXPECT_EQ(expand_suites({"ybe", "theta", "ybe"}), (std::vector<std::string>{"theta", "ybe"}));
  EXPECT_THROW(expand_suites({}), ConfigError);
  EXPECT_THROW(expand_suites({"nonsense"}), ConfigError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify ybe --tau i --hbar 0.31 --samples 20 --seed 42 --format text"), 0);
  EXPECT_EQ(run_cli("verify nonsense"), 2);
  EXPECT_EQ(run_cli("verify"), 2);
  EXPECT_EQ(run_cli("verify theta --tau 0.3-1i"), 2);
  EXPECT_EQ(run_cli("verify yangian-tq --sites 0.2+0.1i"), 2);
  EXPECT_EQ(run_cli("verify theta --samples 0"), 2);
  EXPECT_EQ(run_cli("bethe --model elliptic --n 1 --a 0.17"), 0);
  EXPECT_EQ(run_cli("bethe --model yangian --a1 1/2 --a2 2/3 --p 1/3"), 0);
  EXPECT_EQ(run_cli("no-such-command"), 2);
}

TEST(Cli, WritesReports) {
  const fs::path dir = scratch_dir("cli");
  const fs::path out = dir / "r.json";
  ASSERT_EQ(run_cli("verify yangian-a21 --report \"" + out.string() + "\" --format json"), 0);
  const Report r = report_from_json(slurp(out));
  EXPECT_EQ(r.schema, kReportSchema);
  EXPECT_FALSE(r.generated_at.empty());
  ASSERT_FALSE(r.records.empty());
  EXPECT_EQ(r.records.front().suite, "yangian-a21");

  const fs::path envdir = scratch_dir("env");
  ASSERT_EQ(run_cli("verify yangian-a21 --format csv", "ELLQ_REPORT_DIR=\"" + envdir.string() + "\""), 0);
  EXPECT_TRUE(fs::exists(envdir / "ellq-report.csv"));

  // Two runs differ only in generated_at.
  const fs::path out2 = dir / "r2.json";
  ASSERT_EQ(run_cli("verify yangian-a21 --report \"" + out2.string() + "\" --format json"), 0);
  Report r2 = report_from_json(slurp(out2));
  r2.generated_at = r.generated_at;
  EXPECT_EQ(r2, r);

  // Config file plus overriding flag.
  const fs::path cfg = dir / "run.toml";
  std::ofstream(cfg) << "suites = [\"ybe\"]\nsamples = 5\nseed = 3\n";
  const fs::path out3 = dir / "r3.json";
  ASSERT_EQ(run_cli("verify --config \"" + cfg.string() + "\" --seed 4 --report \"" + out3.string() + "\""), 0);
  const Report r3 = report_from_json(slurp(out3));
  bool seed_seen = false;
  for (const auto& [k, v] : r3.config) {
    if (k == "seed") {
      EXPECT_EQ(v, "4");
      seed_seen = true;
    }
  }
  EXPECT_TRUE(seed_seen);
  fs::remove_all(dir);
  fs::remove_all(envdir);
}
