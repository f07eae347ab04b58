#include <doctest.h>

#include "gprates/experiment.hpp"
#include "gprates/parallel.hpp"

#include <sstream>

using namespace gprates;

namespace {

RateExperimentConfig small_interpolation() {
  RateExperimentConfig c;
  c.id = "small";
  c.target.id = "kink";
  c.ladder = {16, 32, 64, 128, 256};
  c.gates = {{2.0, 0.4}, {kInfinity, 0.4}};
  c.seed = 7;
  return c;
}

std::string csv_of(const RateReport& r) {
  std::ostringstream s;
  r.write_csv(s);
  return s.str();
}

}  // namespace

TEST_CASE("noise-free interpolation reproduces the interpolation exponents") {
  const RateReport r = run_rate_experiment(small_interpolation());
  CHECK(r.theory == Theory::interpolation);
  REQUIRE(r.status == ReportStatus::pass);
  REQUIRE(r.gates.size() == 2);
  CHECK(r.gates[0].theoretical == doctest::Approx(-2.0));
  CHECK(r.gates[1].theoretical == doctest::Approx(-1.5));
  CHECK(r.design.quasi_uniform);
  CHECK(r.design.h_slope == doctest::Approx(-1.0));
  REQUIRE(r.resolution_change);
  CHECK(*r.resolution_change < 0.05);
  for (const LadderRow& row : r.rows) {
    CHECK(row.rho == doctest::Approx(1.0));
    CHECK(row.lambda == 0.0);
    CHECK(row.std_error[0] == 0.0);
  }
}

TEST_CASE("reports are deterministic and thread-count independent") {
  RateExperimentConfig c = small_interpolation();
  c.noise = NoiseModel::gaussian(0.1, 0);
  c.lambda = NuggetPolicy::fixed(0.1);
  c.replicates = 4;
  set_thread_count(1);
  const RateReport a = run_rate_experiment(c);
  set_thread_count(4);
  const RateReport b = run_rate_experiment(c);
  set_thread_count(0);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(csv_of(a) == csv_of(b));

  c.seed = 8;
  CHECK(run_rate_experiment(c).to_json().dump() != a.to_json().dump());
}

TEST_CASE("random noise is averaged over replicates") {
  RateExperimentConfig c = small_interpolation();
  c.noise = NoiseModel::outliers({OutlierSchedule::Kind::fixed, 3}, 1.0, 0);
  c.lambda = NuggetPolicy::fixed(0.1);
  c.gates = {{2.0, 0.2}};
  CHECK(c.effective_replicates() == 20);
  const RateReport r = run_rate_experiment(c);
  CHECK(r.theory == Theory::misspec_gaussian);
  for (const LadderRow& row : r.rows) {
    CHECK(row.std_error[0] > 0.0);
    CHECK(row.noise_norm == doctest::Approx(std::sqrt(3.0)));
    CHECK(row.lambda == doctest::Approx(0.01));
  }
}

TEST_CASE("csv and json layout") {
  const RateReport r = run_rate_experiment(small_interpolation());
  const std::string csv = csv_of(r);
  CHECK(csv.rfind("n,mean_error,std_error,mean_error_Linf,std_error_Linf,h,separation,rho,lambda\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find('\r') == std::string::npos);
  const auto j = r.to_json();
  CHECK(j["status"] == "pass");
  CHECK(j["table"].size() == 5);
  CHECK(j["gates"][1]["norm"] == "Linf");
  CHECK(r.summary().rfind("small: pass", 0) == 0);
}

TEST_CASE("theory selection") {
  RateExperimentConfig c;
  CHECK(resolve_theory(c) == Theory::interpolation);
  c.lambda = NuggetPolicy::fixed(0.1);
  CHECK(resolve_theory(c) == Theory::misspec_gaussian);
  c.noise = NoiseModel::gaussian(0.1, 0);
  CHECK(resolve_theory(c) == Theory::gaussian_regression);
  c.lambda = NuggetPolicy::zero();
  CHECK(resolve_theory(c) == Theory::misspec_interpolation);
  c.theory = Theory::interpolation;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(theory_from_name("misspec_gaussian") == Theory::misspec_gaussian);
  CHECK_THROWS_AS(theory_from_name("bogus"), ConfigError);
}

TEST_CASE("config validation names the field") {
  auto expect = [](const RateExperimentConfig& c, const std::string& field) {
    try {
      c.validate();
      FAIL("expected ConfigError for " << field);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  RateExperimentConfig c;
  c.ladder = {16, 32, 64};
  expect(c, "ladder");
  c = RateExperimentConfig{};
  c.ladder = {16, 8, 32, 64};
  expect(c, "ladder");
  c = RateExperimentConfig{};
  c.gates = {{3.0, 0.4}};
  expect(c, "gates.q");
  c = RateExperimentConfig{};
  c.kernel.tau_schedule = {2.0, 2.0};
  expect(c, "kernel.tau_schedule");
  c = RateExperimentConfig{};
  c.kernel.tau = 0.4;
  expect(c, "tau");
  c = RateExperimentConfig{};
  c.theory = Theory::misspec_gaussian;
  expect(c, "lambda");

  c = RateExperimentConfig{};
  c.dim = 2;
  c.ladder = {16, 32, 64, 256};
  CHECK_THROWS_WITH_AS(run_rate_experiment(c), doctest::Contains("perfect 2-th power"), ConfigError);
}

TEST_CASE("coarse evaluation grids mark the report invalid") {
  RateExperimentConfig c = small_interpolation();
  c.eval_resolution = 24;
  const RateReport r = run_rate_experiment(c);
  CHECK(r.status == ReportStatus::invalid);
  CHECK(r.invalid_reason.find("unresolved") != std::string::npos);
}

TEST_CASE("random designs fall back to measured scaling") {
  RateExperimentConfig c = small_interpolation();
  c.design.kind = DesignConfig::Kind::uniform_random;
  const RateReport r = run_rate_experiment(c);
  CHECK_FALSE(r.design.quasi_uniform);
  CHECK(r.design.rho_slope > 0.1);
  bool warned = false;
  for (const std::string& w : r.warnings) warned = warned || w.find("not quasi-uniform") != std::string::npos;
  CHECK(warned);
  // the kink target is well specified here, so the rho exponent is zero and only the h slope enters
  CHECK(r.gates[0].theoretical == doctest::Approx(2.0 * r.design.h_slope));
}

TEST_CASE("p-greedy designs are nested prefixes") {
  const KernelSpec k(2.0, 1.0, 1.0, 1);
  DesignConfig d;
  d.kind = DesignConfig::Kind::p_greedy;
  d.candidate_resolution = 512;
  const auto designs = build_designs(d, {8, 16, 32}, Domain::unit_cube(1), k, 0);
  REQUIRE(designs.size() == 3);
  CHECK(designs[2].points().topRows(16) == designs[1].points());
  for (const PointSet& X : designs) CHECK(X.metrics().has_value());
  d.candidate_resolution = 16;
  CHECK_THROWS_AS(build_designs(d, {8, 16, 32}, Domain::unit_cube(1), k, 0), ConfigError);
}

TEST_CASE("kernel schedules vary tau along the ladder") {
  RateExperimentConfig c = small_interpolation();
  c.target.id = "lacunary";
  c.target.params.tau_f = 2.0;
  c.kernel.tau_schedule = {2.0, 2.0, 2.5, 2.5, 3.0};
  c.gates = {{2.0, 0.5}};
  const RateReport r = run_rate_experiment(c);
  CHECK(r.rows[2].tau_k == 2.5);
  // tau_k+ = 3 > tau_f brings in rho, which is 1 on grids
  CHECK(r.gates[0].theoretical == doctest::Approx(-2.0));
  CHECK(r.status != ReportStatus::invalid);
}
