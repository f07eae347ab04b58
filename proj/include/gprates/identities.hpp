#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gprates {

/// Outcome of one randomized identity or inequality check. `worst` is the largest
/// relative defect seen (identity) or the largest lhs/rhs - 1 (inequality).
struct IdentityCheck {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;
  double tolerance = 0.0;

  bool pass() const { return trials > 0 && failures == 0; }
  nlohmann::ordered_json to_json() const;
};

/// |f - R_f|^2 + |R_f|^2 = |f|^2 for kernel expansions f and interpolation designs of size <= 64.
IdentityCheck check_pythagorean(int configs, std::uint64_t seed, double tolerance = 1e-6);

/// For f = sum alpha_i k(., z_i), sigma > 0 and noise eps, with R the regression fit of f|_X + eps:
///   |R|_H <= (|eps|^2 / sigma^2 + |f|_H^2)^{1/2}
///   |f|_X - R|_X|_2 <= |eps|_2 + (|eps|^2 + sigma^2 |f|_H^2)^{1/2}
IdentityCheck check_regression_bounds(int trials, std::uint64_t seed, double slack = 1e-8);

/// eps^T K^{-1} eps <= |eps|^2 / lambda_min(K).
IdentityCheck check_rayleigh_bound(int trials, std::uint64_t seed, double slack = 1e-8);

/// Closed forms for nu in {1/2, 3/2, 5/2, 7/2} against the Bessel path over r/l in [1e-6, 20].
IdentityCheck check_matern_closed_forms(double tolerance = 1e-9);

/// The four checks above at their standard trial counts.
std::vector<IdentityCheck> run_identity_suite(std::uint64_t seed);

}  // namespace gprates
