#pragma once

#include "gprates/design.hpp"
#include "gprates/error_norms.hpp"
#include "gprates/rates.hpp"
#include "gprates/targets.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gprates {

struct TargetConfig {
  enum class Kind { named, expansion };
  Kind kind = Kind::named;
  std::string id = "lacunary";  // named
  NamedTargetParams params;     // named
  double tau_f = 2.0;           // expansion: smoothness of the generating kernel
  double lengthscale = 1.0;     // expansion
  double amplitude = 1.0;       // expansion
  int num_centers = 40;         // expansion
};

/// Builds the target on `domain`; expansion centers and weights come from `seed`.
TargetSpec build_target(const TargetConfig& config, const Domain& domain, std::uint64_t seed);

struct KernelConfig {
  double tau = 2.0;
  double lengthscale = 1.0;
  double amplitude = 1.0;
  /// Optional smoothness per ladder entry (same length as the ladder). Empty keeps tau fixed.
  std::vector<double> tau_schedule;

  KernelSpec at(std::size_t ladder_index, int dim) const;
  double tau_min() const;
  double tau_max() const;
};

struct DesignConfig {
  enum class Kind { grid, uniform_random, p_greedy };
  Kind kind = Kind::grid;
  int candidate_resolution = 0;  // p_greedy: candidates per axis, 0 picks a default
  int probe_resolution = 0;      // fill-distance probes per axis, 0 picks a default
};

const char* design_kind_name(DesignConfig::Kind kind);

/// Design sequence for the ladder. Grids need n to be a perfect d-th power. Greedy designs
/// are nested prefixes of one run; random designs draw each n from its own stream.
std::vector<PointSet> build_designs(const DesignConfig& config, const std::vector<int>& ladder, const Domain& domain,
                                    const KernelSpec& kernel, std::uint64_t seed);

enum class Theory { automatic, interpolation, gaussian_regression, misspec_gaussian, misspec_interpolation };

const char* theory_name(Theory t);
Theory theory_from_name(const std::string& name);

struct NormGate {
  double q = 2.0;  // 1, 2 or infinity
  double tolerance = 0.4;
};

std::string norm_label(double q);

struct RateExperimentConfig {
  std::string id = "rates";
  int dim = 1;
  TargetConfig target;
  KernelConfig kernel;
  DesignConfig design;
  NoiseModel noise;
  NuggetPolicy lambda;  // lambda = sigma_n(h)^2
  double prior_mean = 0.0;
  Theory theory = Theory::automatic;
  std::vector<NormGate> gates{NormGate{}};
  std::vector<int> ladder{16, 32, 64, 128, 256, 512};
  int burn_in = 1;
  int replicates = 0;  // 0: 20 for random noise, 1 otherwise
  int eval_resolution = 0;
  double s = 0.0;
  bool check_resolution = true;
  std::uint64_t seed = 0;

  int effective_replicates() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Measurements at one ladder point. Errors are indexed like the config's gates.
struct LadderRow {
  int n = 0;
  double h = 0.0;
  double separation = 0.0;
  double rho = 0.0;
  double tau_k = 0.0;
  double lambda = 0.0;
  double jitter = 0.0;
  double noise_norm = 0.0;  // mean over replicates of |eps|_2
  std::vector<double> mean_error;
  std::vector<double> std_error;
};

struct DesignCheck {
  double h_slope = 0.0;
  double rho_slope = 0.0;
  bool quasi_uniform = false;  // |h_slope + 1/d| <= 0.15 and rho_slope <= 0.1
};

/// Log-log slopes of h and rho after burn-in on a design sequence with cached metrics.
DesignCheck check_design_sequence(const std::vector<PointSet>& designs, int burn_in);

/// Noise vector of replicate r at ladder size n, drawn from a stream derived from the experiment seed.
Vector replicate_noise(const NoiseModel& noise, std::uint64_t seed, int n, int r);

/// Posterior means prior_mean + k(Q, X) W for each column of W, evaluated in row chunks to bound memory.
Matrix predict_columns(const KernelSpec& kernel, const Matrix& X, const Matrix& W, const Matrix& Q,
                       double prior_mean);

enum class Verdict { pass, fail, flagged };
const char* verdict_name(Verdict v);

struct GateResult {
  NormGate gate;
  double theoretical = 0.0;
  double fitted = 0.0;
  double std_error = 0.0;
  std::vector<double> term_exponents;  // empty when a closed form was used
  Verdict verdict = Verdict::fail;
};

enum class ReportStatus { pass, fail, invalid };
const char* status_name(ReportStatus s);

struct RateReport {
  std::string id;
  Theory theory = Theory::interpolation;
  std::vector<LadderRow> rows;
  DesignCheck design;
  std::vector<GateResult> gates;
  std::optional<double> resolution_change;  // relative change of the L2 error when the eval grid doubles
  std::vector<std::string> warnings;
  ReportStatus status = ReportStatus::invalid;
  std::string invalid_reason;

  nlohmann::ordered_json to_json() const;
  /// n, mean_error, std_error for the first gate, then the other gates and the design metrics.
  void write_csv(std::ostream& out) const;
  /// One line: id, status and per-gate slopes against theory.
  std::string summary() const;
};

/// Theory a configuration is compared against when `theory` is automatic.
Theory resolve_theory(const RateExperimentConfig& config);

RateReport run_rate_experiment(const RateExperimentConfig& config);

}  // namespace gprates
