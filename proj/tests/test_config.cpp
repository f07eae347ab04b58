#include <doctest.h>

#include "gprates/config.hpp"
#include "gprates/harness.hpp"

#include <string>

using namespace gprates;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("a minimal rates config takes the documented defaults") {
  const ExperimentConfig c = parse_config(R"({"experiment": "rates", "kernel": {"tau": 2}})");
  CHECK(c.kind == ExperimentKind::rates);
  CHECK(c.id == "rates");
  CHECK(c.seed() == 0);
  const auto& r = std::get<RateExperimentConfig>(c.body);
  CHECK(r.target.id == "lacunary");
  CHECK(r.ladder == std::vector<int>{16, 32, 64, 128, 256, 512});
  CHECK(r.gates.size() == 1);
  CHECK(r.gates[0].q == 2.0);
  CHECK(r.noise.kind == NoiseModel::Kind::none);
}

TEST_CASE("nested fields are read with their kinds") {
  const ExperimentConfig c = parse_config(R"({
    "experiment": "rates", "id": "a5", "seed": 9,
    "target": {"id": "lacunary", "tau_f": 1},
    "kernel": {"tau": 2, "lengthscale": 0.5},
    "noise": {"kind": "outliers", "magnitude": 1, "schedule": {"kind": "fixed", "count": 3}},
    "lambda": {"kind": "adaptive_h", "exponent": 1.5},
    "gates": [{"q": 2, "tolerance": 0.2}, {"q": "inf"}]
  })");
  const auto& r = std::get<RateExperimentConfig>(c.body);
  CHECK(r.id == "a5");
  CHECK(r.seed == 9);
  CHECK(r.target.params.tau_f == 1.0);
  CHECK(r.kernel.lengthscale == 0.5);
  CHECK(r.noise.schedule.count == 3);
  CHECK(r.lambda.kind == NuggetPolicy::Kind::adaptive_h);
  CHECK(r.lambda.exponent == 1.5);
  REQUIRE(r.gates.size() == 2);
  CHECK(std::isinf(r.gates[1].q));
}

TEST_CASE("missing tau names the field") {
  const std::string e = error_of(R"({"experiment": "rates", "kernel": {"lengthscale": 1}})");
  CHECK(contains(e, "kernel.tau"));
  CHECK(contains(e, "missing"));
}

TEST_CASE("unknown keys are rejected with their path") {
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 2}, "ladders": [1]})"), "ladders: unknown key"));
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 2, "nu": 1.5}})"), "kernel.nu: unknown key"));
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 2}, "target": {"id": "kink", "sigma": 1}})"),
                 "target.sigma"));
  // keys of a different kind are unknown too
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 2}, "noise": {"kind": "gaussian", "sigma": 0.1,
                 "df": 3}})"),
                 "noise.df"));
}

TEST_CASE("syntax errors report line and column") {
  const std::string e = error_of("{\n  \"experiment\": \"rates\",\n  \"kernel\": {\"tau\": 2,}\n}");
  CHECK(contains(e, "line 3"));
  CHECK(contains(e, "column"));
}

TEST_CASE("type and value errors") {
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": "two"}})"), "kernel.tau: expected a number"));
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 2}, "ladder": [16, 32.5]})"), "ladder"));
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 2}, "seed": -1})"), "seed"));
  CHECK(contains(error_of(R"({"experiment": "regression"})"), "experiment: unknown experiment"));
  CHECK(contains(error_of(R"({"kernel": {"tau": 2}})"), "experiment: missing"));
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 0.4}})"), "tau"));
  CHECK(contains(error_of(R"({"experiment": "rates", "kernel": {"tau": 2}, "gates": [{"q": 3}]})"), "gates.q"));
  CHECK(contains(error_of(R"({"experiment": "design", "design": {"kind": "grid"}, "dim": 2, "n": 10})"),
                 "perfect 2-th power"));
  CHECK(contains(error_of(R"({"experiment": "regress", "kernel": {"tau": 2}})"), "lambda: missing"));
  CHECK(contains(error_of(R"({"experiment": "bo", "kernel": {"tau": 1.2}})"), "kernel.tau must exceed"));
  CHECK(contains(error_of(R"({"experiment": "bo", "gamma": 0})"), "gamma"));
  CHECK(contains(error_of(R"({"experiment": "rates", "id": "a/b", "kernel": {"tau": 2}})"), "id"));
  CHECK(contains(error_of("[1, 2]"), "expected an object"));
}

TEST_CASE("seed override reaches the experiment body") {
  ExperimentConfig c = parse_config(R"({"experiment": "bo", "seed": 3})");
  CHECK(c.seed() == 3);
  c.set_seed(11);
  CHECK(std::get<BoRunConfig>(c.body).seed == 11);
}

TEST_CASE("canonical JSON round-trips for every experiment kind") {
  std::vector<std::string> texts = {
      R"({"experiment": "design", "design": {"kind": "p_greedy", "candidate_resolution": 128}, "kernel": {"tau": 2}, "n": 20})",
      R"({"experiment": "interpolate", "kernel": {"tau": 2}, "target": {"kind": "expansion", "tau_f": 1.5}})",
      R"({"experiment": "regress", "kernel": {"tau": 2}, "noise": {"kind": "student_t", "df": 4},
          "lambda": {"kind": "fixed", "sigma": 0.1}})",
      R"({"experiment": "bq", "kernel": {"tau": 2}, "density": "tent"})",
      R"({"experiment": "bo", "acquisition": {"kind": "ucb", "beta": 1.5}, "budgets": [10, 20]})",
  };
  for (const ExperimentConfig& c : acceptance_configs(42)) texts.push_back(to_json(c).dump());
  for (const std::string& t : texts) {
    const ExperimentConfig c = parse_config(t);
    const std::string once = to_json(c).dump();
    INFO(once);
    CHECK(to_json(parse_config(once)).dump() == once);
  }
}
