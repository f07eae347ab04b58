#pragma once

#include "gprates/gp_fit.hpp"
#include "gprates/targets.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gprates {

struct Acquisition {
  enum class Kind { expected_improvement, ucb };
  Kind kind = Kind::expected_improvement;
  double beta = 2.0;  // ucb only

  static Acquisition expected_improvement() { return {}; }
  static Acquisition ucb(double beta) { return {Kind::ucb, beta}; }
  std::string describe() const;
};

struct BOConfig {
  double gamma = 0.3;
  Acquisition acquisition;
  int n = 25;
  KernelSpec kernel{2.0, 1.0, 1.0, 1};
  std::optional<PointSet> candidates;  // default_candidates of the unit cube when empty
  std::uint64_t seed = 0;

  PointSet candidate_set() const;
  /// gamma in (0, 1], tau > d/2 + 1, n >= 2 and n - 1 <= number of candidates.
  void validate() const;
};

/// Midpoint candidate grid: 2048 points in d = 1, 64^2 in d = 2, 16^3 in d = 3.
PointSet default_candidates(const Domain& domain);
/// Midpoint grid used for max f: 32768 points in d = 1, 512^2 in d = 2, 64^3 in d = 3.
PointSet reference_grid(const Domain& domain);

/// Indices of candidates with P(x) >= gamma * max P, where P = sqrt(posterior variance).
std::vector<int> stabilized_indices(const Vector& power, double gamma);
PointSet stabilized_candidates(const PosteriorModel& model, const PointSet& candidates, double gamma);

/// log E[(g - best)_+] for g ~ N(mean, sd^2); -inf when the improvement is surely zero.
double log_expected_improvement(double mean, double sd, double best);
double expected_improvement(double mean, double sd, double best);

/// EI uses the best observed value; UCB is mean + beta * sd.
double acquisition_value(const PosteriorModel& model, const Eigen::Ref<const Vector>& x, const Acquisition& kind);

struct BOStep {
  int step = 0;              // 1-based
  int candidate = -1;        // index into the candidate set
  Vector x;
  double fx = 0.0;
  double p_value = 0.0;      // P_{step-1}(x) before x was added
  double p_max = 0.0;        // max over candidates of P_{step-1}
  double p_threshold = 0.0;  // gamma * p_max
  double acquisition = 0.0;  // F(x); the posterior mean for the final step
  double rho_so_far = 0.0;   // mesh ratio of x_1..x_step against the candidate hull
};

struct BOResult {
  int n = 0;
  Vector x_final;
  double f_final = 0.0;
  double f_max = 0.0;        // max of f over a reference grid finer than the candidates
  double f_max_grid = 0.0;   // max of f over the candidates
  double regret = 0.0;       // f_max - f(x_n)
  double grid_regret = 0.0;  // f_max_grid - f(x_n)
  double linf_error = 0.0;  // max over candidates of |f - R_f| with R_f built on x_1..x_{n-1}
  double mesh_ratio = 0.0;  // of x_1..x_{n-1}
  std::vector<BOStep> trace;
  bool aborted = false;
  std::string abort_reason;

  /// grid_regret <= 2 |f - R_f|_inf over the candidates (up to rounding).
  bool proof_inequality_holds() const;
};

/// Re-checks P_{i-1}(x_i) >= gamma * max P_{i-1} - tol for every stabilized step.
bool verify_certificate(const std::vector<BOStep>& trace, double gamma, double tol = 1e-10);

/// x_1 is the first candidate, x_2..x_{n-1} maximize F over the stabilized candidates (lowest index on
/// ties), x_n maximizes the interpolant over all candidates.
BOResult run_gamma_F_n(const TargetSpec& target, const BOConfig& config);

/// Same as calling run_gamma_F_n for every budget in `ns`, sharing one sequential run.
std::vector<BOResult> run_gamma_F_n_ladder(const TargetSpec& target, const BOConfig& config, const std::vector<int>& ns);

/// step, x1..xd, f(x), P-threshold, acquisition value, rho_so_far.
void write_trace_csv(const BOResult& result, std::ostream& out);

struct BoSummary {
  std::vector<BOResult> runs;
  bool certificate_ok = true;
  bool mesh_ratio_ok = true;
  bool regret_decreased = false;
  bool regret_small = false;
  bool proof_inequality_ok = true;
  double regret_slope = 0.0;   // reported only
  double theory_slope = 0.0;   // -(tau ^ tau_f)/d + 1/2
  double mesh_ratio_cap = 8.0;
  double regret_cap = 1e-3;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

BoSummary summarize_bo(const TargetSpec& target, const BOConfig& config, const std::vector<int>& ns,
                       double mesh_ratio_cap = 8.0, double regret_cap = 1e-3);

}  // namespace gprates
