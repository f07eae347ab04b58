#pragma once

#include "gprates/common.hpp"
#include "gprates/stats.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gprates {

enum class DesignRegime { quasi_uniform, fill_optimal_only, arbitrary };

struct NuggetPolicy {
  enum class Kind { zero, fixed, adaptive_h };
  Kind kind = Kind::zero;
  double sigma = 0.0;     // fixed: sigma_n = sigma
  double exponent = 0.0;  // adaptive_h: sigma_n = scale * h^exponent
  double scale = 1.0;

  static NuggetPolicy zero() { return {}; }
  static NuggetPolicy fixed(double sigma) { return {Kind::fixed, sigma, 0.0, 1.0}; }
  static NuggetPolicy adaptive_h(double exponent, double scale = 1.0) { return {Kind::adaptive_h, 0.0, exponent, scale}; }

  /// sigma_n for a design with fill distance h.
  double sigma_n(double h) const;
  double lambda(double h) const { const double s = sigma_n(h); return s * s; }
};

/// Smoothness and norm parameters of one convergence statement. q may be +infinity.
struct RateParams {
  double tau_f = 2.0;
  double tau_k_minus = 2.0;
  double tau_k_plus = 2.0;
  int d = 1;
  double s = 0.0;
  double q = 2.0;
  std::optional<double> noise_growth;  // exponent g of E|eps|_2 ~ n^g; empty when noise free
  DesignRegime design = DesignRegime::quasi_uniform;
  NuggetPolicy nugget;

  /// Throws ConfigError when smoothness ordering or the admissible range of s is violated.
  void validate() const;
  /// Advisory messages for conditions that cannot be enforced numerically.
  std::vector<std::string> advisories() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

double gamma_of(double q);
double tau_zero(double tau, int d, double q);
double tau_star(double tau, int d, double q);
/// Upper end of the admissible range for s: (tau_f ^ tau_k_minus)*.
double admissible_s_max(const RateParams& p);

/// One term of an error bound, written as a monomial in h, rho, q_X, sigma_n and n,
/// optionally multiplied by E|eps|_2.
struct BoundTerm {
  std::string label;
  double h_exp = 0.0;
  double rho_exp = 0.0;
  double qx_exp = 0.0;
  double sigma_exp = 0.0;
  double n_exp = 0.0;
  bool noise = false;
};

/// How h, rho and sigma_n scale with n on the measured or assumed design sequence.
struct Scaling {
  double h_slope;
  double rho_slope = 0.0;
  double sigma_slope = 0.0;

  static Scaling nominal(int d) { return {-1.0 / d, 0.0, 0.0}; }
};

/// Adds the sigma_n slope implied by a nugget policy.
Scaling with_nugget(Scaling base, const NuggetPolicy& nugget);

struct TermExponents {
  std::string statement;
  double prefactor_h_exp = 0.0;  // common factor h^{d/gamma - s}
  std::vector<BoundTerm> terms;
  /// Closed-form n-exponent for the regime, when its preconditions hold.
  std::optional<double> closed_form_n_exp;
  std::vector<std::string> warnings;

  /// n-exponent of each term including the common prefactor.
  std::vector<double> n_exponents(const Scaling& scaling, std::optional<double> noise_growth) const;
  double dominant(const Scaling& scaling, std::optional<double> noise_growth) const;
};

struct InterpolationExponent {
  double h_exp;
  double rho_exp;
};

/// Noise-free interpolation: h^{(tau_f ^ tau_k-) - s - d(1/2 - 1/q)_+} rho^{(tau_k+ - tau_f)_+}.
InterpolationExponent exponent_interpolation(const RateParams& p);
double n_exponent(const InterpolationExponent& e, const Scaling& scaling);

struct GaussianRegressionExponent {
  double n_exp;
  bool closed_form;        // true when the minimax formula applies
  TermExponents terms;     // three-term bound, always filled for diagnostics
};

/// Gaussian likelihood with matched noise. Falls back to the dominant three-term exponent with a warning.
GaussianRegressionExponent exponent_gaussian_regression(const RateParams& p);

/// Gaussian likelihood under arbitrary corruption with nugget policy p.nugget.
TermExponents exponent_misspec_gaussian(const RateParams& p);

/// Interpolation under arbitrary corruption.
TermExponents exponent_misspec_interpolation(const RateParams& p);

/// Quadrature error exponent for noise-free data (in h and rho) converted to n.
double exponent_bq(const RateParams& p, const Scaling& scaling);
/// Quadrature with a matched Gaussian likelihood and tau_k = tau_f + d/2.
double exponent_bq_gaussian(const RateParams& p);
/// Regret exponent of the gamma-stabilized strategy: -(tau ^ tau_f)/d + 1/2.
double exponent_bo(double tau, double tau_f, int d);

struct EmpiricalRate {
  double slope;
  double std_error;
  std::size_t points;
};

/// OLS of log error on log n after dropping the first burn_in rows. Needs >= 3 rows and positive errors.
EmpiricalRate fit_empirical_rate(const std::vector<std::pair<double, double>>& table, int burn_in);

}  // namespace gprates
