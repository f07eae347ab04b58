#include <doctest.h>

#include "gprates/harness.hpp"
#include "gprates/parallel.hpp"

#include <fstream>
#include <sstream>

using namespace gprates;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gprates_harness_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmallRates = R"({
  "experiment": "rates", "id": "a1", "seed": 5,
  "target": {"id": "kink", "tau_f": 2}, "kernel": {"tau": 2},
  "ladder": [16, 32, 64, 128], "eval_resolution": 2048,
  "gates": [{"q": 2, "tolerance": 0.4}]
})";

}  // namespace

TEST_CASE("design experiment writes points and metrics") {
  const fs::path dir = scratch("design");
  const ExperimentConfig c = parse_config(R"({"experiment": "design", "id": "pts", "n": 16})");
  const RunOutcome out = run_experiment(c, dir);
  CHECK(out.exit_code == kExitOk);
  CHECK(out.artifacts.size() == 2);
  const std::string pts = slurp(dir / "pts_points.csv");
  CHECK(pts.rfind("x1\n", 0) == 0);
  CHECK(std::count(pts.begin(), pts.end(), '\n') == 17);
  const auto metrics = nlohmann::json::parse(slurp(dir / "pts_metrics.json"));
  CHECK(metrics["mesh_ratio"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("interpolate and regress report error norms") {
  const fs::path dir = scratch("fit");
  const RunOutcome a = run_experiment(
      parse_config(R"({"experiment": "interpolate", "id": "i", "n": 32, "kernel": {"tau": 2}, "eval_resolution": 512})"),
      dir);
  CHECK(a.exit_code == kExitOk);
  const auto ri = nlohmann::json::parse(slurp(dir / "i_report.json"));
  CHECK(ri["errors"]["L2"].get<double>() > 0.0);
  CHECK(ri["residual_norm"].get<double>() < 1e-6);
  CHECK(ri["lambda"].get<double>() == 0.0);

  const RunOutcome b = run_experiment(parse_config(R"({"experiment": "regress", "id": "r", "n": 32,
      "kernel": {"tau": 2}, "noise": {"kind": "gaussian", "sigma": 0.1}, "lambda": {"kind": "fixed", "sigma": 0.1},
      "eval_resolution": 512})"),
                                      dir);
  CHECK(b.exit_code == kExitOk);
  const auto rr = nlohmann::json::parse(slurp(dir / "r_report.json"));
  CHECK(rr["lambda"].get<double>() == doctest::Approx(0.01));
  CHECK(rr["residual_norm"].get<double>() > 0.0);
  const std::string fit_csv = slurp(dir / "r_fit.csv");
  CHECK(fit_csv.rfind("x1,f,mean,sd\n", 0) == 0);
}

TEST_CASE("rates experiment names its artifacts after the id") {
  const fs::path dir = scratch("rates");
  const RunOutcome out = run_experiment(parse_config(kSmallRates), dir);
  CHECK((out.exit_code == kExitOk || out.exit_code == kExitFailed));
  CHECK(fs::exists(dir / "a1_curve.csv"));
  CHECK(fs::exists(dir / "a1_report.json"));
  REQUIRE(out.lines.size() == 1);
  CHECK(out.lines[0].rfind("a1: ", 0) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "a1_report.json"));
  CHECK(report["config"]["seed"] == 5);
}

TEST_CASE("identical config and seed give identical bytes for any thread count") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const int threads = thread_count();
  set_thread_count(1);
  (void)run_experiment(parse_config(kSmallRates), a);
  set_thread_count(3);
  (void)run_experiment(parse_config(kSmallRates), b);
  set_thread_count(threads);
  CHECK(differing_files(a, b).empty());

  std::ofstream(b / "a1_curve.csv", std::ios::app) << "extra\n";
  std::ofstream(b / "only_here.txt") << "x";
  CHECK(differing_files(a, b) == std::vector<std::string>{"a1_curve.csv", "only_here.txt"});
}

TEST_CASE("bo experiment writes a trace and gates") {
  const fs::path dir = scratch("bo");
  const RunOutcome out =
      run_experiment(parse_config(R"({"experiment": "bo", "id": "b", "budgets": [10, 20, 40], "regret_cap": 10})"), dir);
  CHECK(out.exit_code == kExitOk);
  const std::string trace = slurp(dir / "b_trace.csv");
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 41);
  const auto report = nlohmann::json::parse(slurp(dir / "b_report.json"));
  CHECK(report["runs"].size() == 3);
  CHECK(report["certificate_ok"] == true);
}

TEST_CASE("registry lists every acceptance id and registry target") {
  const std::string text = registry_text();
  CHECK(text == registry_text());
  for (const std::string& id : acceptance_ids()) CHECK(text.find("  " + id + "  ") != std::string::npos);
  for (const RegistryEntry& e : target_registry()) CHECK(text.find("  " + e.id + "  ") != std::string::npos);
  for (const char* word : {"uniform", "tent", "p_greedy", "rates", "bo", "adaptive_h"}) {
    CHECK(text.find(word) != std::string::npos);
  }
}

TEST_CASE("acceptance configs cover the rate, quadrature and optimisation criteria") {
  std::vector<std::string> ids;
  for (const ExperimentConfig& c : acceptance_configs(1)) {
    ids.push_back(c.id);
    CHECK(c.seed() == 1);
    CHECK_NOTHROW(c.validate());
  }
  CHECK(ids == std::vector<std::string>{"a1", "a2", "a2_expansion", "a3", "a4", "a5", "a6", "a7"});
}
