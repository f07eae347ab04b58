#pragma once

#include "gprates/error_norms.hpp"
#include "gprates/experiment.hpp"
#include "gprates/gp_fit.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace gprates {

/// Integration density with its supremum (needed for the Holder check).
struct DensitySpec {
  std::string id;
  Density fn;
  double sup_norm;
};

/// "uniform": 1/vol on the domain. "tent": product of 2(1 - |2t - 1|) in unit coordinates, rescaled.
DensitySpec make_density(const std::string& id, const Domain& domain);
const std::vector<std::string>& density_registry();

/// Integral of the posterior mean against p, with the same midpoint rule used for the truth.
double bq_estimate(const PosteriorModel& model, const Density& p, const EvalGrid& grid);

struct BqRow {
  int n = 0;
  double abs_error = 0.0;  // mean over replicates of |I_true - I_est|
  double rep_std = 0.0;
  double l1_error = 0.0;   // mean over replicates of the L1 error of the posterior mean
  bool holder_ok = true;   // |I_true - I_est| <= |p|_inf * L1 + 1e-12 on every replicate
};

struct BqCurveOptions {
  KernelConfig kernel;
  NuggetPolicy lambda;
  int replicates = 1;
  double prior_mean = 0.0;
  std::uint64_t seed = 0;
};

/// Absolute integration error along a design sequence.
std::vector<BqRow> bq_error_curve(const TargetSpec& t, const DensitySpec& p, const std::vector<PointSet>& designs,
                                  const NoiseModel& noise, const BqCurveOptions& options, const EvalGrid& grid);

void write_bq_csv(const std::vector<BqRow>& rows, std::ostream& out);

struct BqExperimentConfig {
  std::string id = "bq";
  int dim = 1;
  TargetConfig target;
  KernelConfig kernel;
  DesignConfig design;
  NoiseModel noise;
  NuggetPolicy lambda;
  std::string density = "uniform";
  double prior_mean = 0.0;
  std::vector<int> ladder{16, 32, 64, 128, 256, 512};
  int burn_in = 1;
  int replicates = 0;  // 0: 20 for random noise, 1 otherwise
  int eval_resolution = 0;
  double tolerance = 0.5;
  std::uint64_t seed = 0;

  int effective_replicates() const;
  void validate() const;
};

struct BqReport {
  std::string id;
  std::vector<BqRow> rows;
  DesignCheck design;
  double theoretical = 0.0;
  double fitted = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  bool holder_ok = true;
  std::vector<std::string> warnings;
  ReportStatus status = ReportStatus::invalid;
  std::string invalid_reason;

  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

/// Noise-free data: exponent of h^{tau_f ^ tau_k-} rho^{(tau_k+ - tau_f)_+}. Gaussian noise with
/// tau_k = tau_f + d/2: -tau_f / (2 tau_f + d).
BqReport run_bq_experiment(const BqExperimentConfig& config);

}  // namespace gprates
