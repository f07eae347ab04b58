#pragma once

#include "gprates/bayes_opt.hpp"
#include "gprates/bayes_quad.hpp"
#include "gprates/experiment.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace gprates {

enum class ExperimentKind { design, interpolate, regress, rates, bq, bo };

const char* experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(const std::string& name);

/// Generates one design and reports its fill distance, separation radius and mesh ratio.
struct DesignRunConfig {
  int dim = 1;
  int n = 64;
  DesignConfig design;
  KernelConfig kernel;  // p_greedy only
  std::uint64_t seed = 0;

  void validate() const;
};

/// One fit of a target on one design. Interpolation uses lambda = 0 and no noise.
struct FitRunConfig {
  int dim = 1;
  int n = 64;
  TargetConfig target;
  KernelConfig kernel;
  DesignConfig design;
  NoiseModel noise;
  NuggetPolicy lambda;
  double prior_mean = 0.0;
  int eval_resolution = 0;
  std::uint64_t seed = 0;

  void validate(bool regression) const;
};

struct BoRunConfig {
  int dim = 1;
  TargetConfig target;
  BOConfig bo;
  int candidate_resolution = 0;  // per axis; 0 keeps the default grid
  std::vector<int> budgets{25, 50, 100, 200};
  double mesh_ratio_cap = 8.0;
  double regret_cap = 1e-3;
  std::uint64_t seed = 0;

  /// bo with its candidate grid filled in from dim and candidate_resolution.
  BOConfig resolved() const;
  void validate() const;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::rates;
  std::string id;  // prefix of every artifact file
  std::variant<DesignRunConfig, FitRunConfig, RateExperimentConfig, BqExperimentConfig, BoRunConfig> body;

  std::uint64_t seed() const;
  void set_seed(std::uint64_t seed);
  void validate() const;
};

/// Parses and validates a JSON experiment. Every problem is a ConfigError whose message starts with
/// the offending field path (or the line and column for syntax errors). Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON with every field spelled out; parse_config(to_json(c).dump()) reproduces c.
nlohmann::ordered_json to_json(const ExperimentConfig& config);

}  // namespace gprates
