#include "gprates/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gprates {

namespace {

double pos(double x) { return std::max(x, 0.0); }

bool is_integer(double x) { return std::isfinite(x) && std::abs(x - std::round(x)) < 1e-12; }

double min_smoothness(const RateParams& p) { return std::min(p.tau_f, p.tau_k_minus); }

bool well_specified(const RateParams& p) { return p.tau_f >= p.tau_k_plus; }

std::string fmt_num(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

double NuggetPolicy::sigma_n(double h) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::fixed: return sigma;
    case Kind::adaptive_h: return scale * std::pow(h, exponent);
  }
  return 0.0;
}

double gamma_of(double q) { return std::max(2.0, q); }

double tau_zero(double tau, int d, double q) {
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  return tau - d * pos(0.5 - inv_q);
}

double tau_star(double tau, int d, double q) {
  const double t0 = tau_zero(tau, d, q);
  if (std::isinf(tau)) return tau;
  const bool keep = is_integer(tau) && ((q > 2.0 && std::isfinite(q) && is_integer(t0)) || q == 2.0);
  return keep ? t0 : std::ceil(t0 - 1e-12) - 1.0;
}

double admissible_s_max(const RateParams& p) { return tau_star(min_smoothness(p), p.d, p.q); }

void RateParams::validate() const {
  if (d < 1) throw ConfigError("rates.d must be >= 1");
  if (!(tau_f > 0.5 * d)) throw ConfigError("rates.tau_f must exceed d/2");
  if (!(tau_k_minus > 0.5 * d)) throw ConfigError("rates.tau_k_minus must exceed d/2");
  if (!(tau_k_plus >= tau_k_minus)) throw ConfigError("rates.tau_k_plus must be >= tau_k_minus");
  if (!(q >= 1.0)) throw ConfigError("rates.q must be in [1, infinity]");
  if (!(s >= 0.0)) throw ConfigError("rates.s must be >= 0");
  const double s_max = admissible_s_max(*this);
  if (s > s_max + 1e-12) {
    throw ConfigError("rates.s=" + fmt_num(s) + " exceeds (tau_f ^ tau_k_minus)* = " + fmt_num(s_max) +
                      " (tau0 = tau - d(1/2 - 1/q)_+, then the integer case split)");
  }
  if (nugget.kind == NuggetPolicy::Kind::fixed && !(nugget.sigma > 0.0)) {
    throw ConfigError("rates.nugget.sigma must be > 0");
  }
  if (nugget.kind == NuggetPolicy::Kind::adaptive_h && !(nugget.scale > 0.0)) {
    throw ConfigError("rates.nugget.scale must be > 0");
  }
}

std::vector<std::string> RateParams::advisories() const {
  std::vector<std::string> out;
  if (std::isfinite(tau_f)) {
    const double ceil_f = std::ceil(tau_f);
    for (double t : {tau_k_minus, tau_k_plus}) {
      if (t > tau_f && t < ceil_f) {
        out.push_back("kernel smoothness " + fmt_num(t) + " lies in the excluded interval (tau_f, ceil(tau_f)) = (" +
                      fmt_num(tau_f) + ", " + fmt_num(ceil_f) + "); corrupted-data bounds do not cover it");
        break;
      }
    }
  }
  if (design != DesignRegime::quasi_uniform) {
    out.push_back("design is not declared quasi-uniform; rho-dependent terms may grow with n");
  }
  return out;
}

Scaling with_nugget(Scaling base, const NuggetPolicy& nugget) {
  base.sigma_slope = nugget.kind == NuggetPolicy::Kind::adaptive_h ? nugget.exponent * base.h_slope : 0.0;
  return base;
}

std::vector<double> TermExponents::n_exponents(const Scaling& scaling, std::optional<double> noise_growth) const {
  const double qx_slope = scaling.h_slope - scaling.rho_slope;
  std::vector<double> out;
  for (const BoundTerm& t : terms) {
    if (t.noise && !noise_growth) continue;
    double e = (prefactor_h_exp + t.h_exp) * scaling.h_slope + t.rho_exp * scaling.rho_slope +
               t.qx_exp * qx_slope + t.sigma_exp * scaling.sigma_slope + t.n_exp;
    if (t.noise) e += *noise_growth;
    out.push_back(e);
  }
  return out;
}

double TermExponents::dominant(const Scaling& scaling, std::optional<double> noise_growth) const {
  const std::vector<double> e = n_exponents(scaling, noise_growth);
  if (e.empty()) throw ConfigError("bound has no active terms");
  return *std::max_element(e.begin(), e.end());
}

InterpolationExponent exponent_interpolation(const RateParams& p) {
  p.validate();
  const double inv_q = std::isinf(p.q) ? 0.0 : 1.0 / p.q;
  return {min_smoothness(p) - p.s - p.d * pos(0.5 - inv_q), pos(p.tau_k_plus - p.tau_f)};
}

double n_exponent(const InterpolationExponent& e, const Scaling& scaling) {
  return e.h_exp * scaling.h_slope + e.rho_exp * scaling.rho_slope;
}

namespace {

double prefactor(const RateParams& p) {
  const double g = gamma_of(p.q);
  return (std::isinf(g) ? 0.0 : p.d / g) - p.s;
}

double closed_form_base(const RateParams& p) {
  const double g = gamma_of(p.q);
  return -(std::isinf(g) ? 0.0 : 1.0 / g) + p.s / p.d;
}

}  // namespace

GaussianRegressionExponent exponent_gaussian_regression(const RateParams& p) {
  p.validate();
  const double half_d = 0.5 * p.d;
  TermExponents t;
  t.statement = "gaussian_regression";
  t.prefactor_h_exp = prefactor(p);
  if (well_specified(p)) {
    t.terms.push_back({"h^(tau_k- - d/2) |f|", p.tau_k_minus - half_d, 0, 0, 0, 0, false});
    t.terms.push_back({"n^(1/2) h^(tau_k- - d/2)", p.tau_k_minus - half_d, 0, 0, 0, 0.5, false});
    t.terms.push_back({"n^(d/(4 tau_k-))", 0, 0, 0, 0, p.d / (4.0 * p.tau_k_minus), false});
  } else {
    t.terms.push_back({"h^((tau_f ^ tau_k-) - d/2) rho^(tau_k+ - tau_f)_+ |f|", min_smoothness(p) - half_d,
                       pos(p.tau_k_plus - p.tau_f), 0, 0, 0, false});
    t.terms.push_back({"n^(1/2) h^(tau_k- - d/2)", p.tau_k_minus - half_d, 0, 0, 0, 0.5, false});
    const double third = std::max(pos(0.5 - p.tau_f / (2.0 * p.tau_k_plus)), p.d / (4.0 * p.tau_k_minus));
    t.terms.push_back({"n^((1/2 - tau_f/(2 tau_k+))_+ v d/(4 tau_k-))", 0, 0, 0, 0, third, false});
  }

  const double matched = p.tau_f + half_d;
  const bool smoothness_ok = std::isfinite(p.tau_f) && std::abs(p.tau_k_minus - matched) < 1e-12 &&
                             std::abs(p.tau_k_plus - matched) < 1e-12;
  const bool q_ok = p.q >= 1.0 && p.q <= 2.0;
  const bool s_ok = p.s <= tau_star(p.tau_f, p.d, p.q) + 1e-12;
  const bool design_ok = p.design == DesignRegime::quasi_uniform;
  GaussianRegressionExponent out{0.0, false, t};
  if (smoothness_ok && q_ok && s_ok && design_ok) {
    out.closed_form = true;
    out.n_exp = -p.tau_f / (2.0 * p.tau_f + p.d) + p.s / p.d;
    out.terms.closed_form_n_exp = out.n_exp;
  } else {
    out.n_exp = t.dominant(Scaling::nominal(p.d), std::nullopt);
    std::string why;
    if (!smoothness_ok) why += " tau_k != tau_f + d/2;";
    if (!q_ok) why += " q outside [1, 2];";
    if (!s_ok) why += " s > tau_f*;";
    if (!design_ok) why += " design not quasi-uniform;";
    out.terms.warnings.push_back("minimax closed form does not apply (" + why.substr(1, why.size() - 2) +
                                 "); using the dominant term of the three-term bound");
  }
  return out;
}

TermExponents exponent_misspec_gaussian(const RateParams& p) {
  p.validate();
  if (p.nugget.kind == NuggetPolicy::Kind::zero) {
    throw ConfigError("misspecified gaussian bound needs nugget policy fixed or adaptive_h");
  }
  const double half_d = 0.5 * p.d;
  TermExponents t;
  t.statement = "misspecified_gaussian";
  t.prefactor_h_exp = prefactor(p);
  if (well_specified(p)) {
    t.terms.push_back({"h^(tau_k- - d/2) |f|", p.tau_k_minus - half_d, 0, 0, 0, 0, false});
    t.terms.push_back({"sigma_n |f|", 0, 0, 0, 1, 0, false});
    t.terms.push_back({"h^(tau_k- - d/2) sigma_n^-1 E|eps|", p.tau_k_minus - half_d, 0, 0, -1, 0, true});
    t.terms.push_back({"E|eps|", 0, 0, 0, 0, 0, true});
  } else {
    const double gap = p.tau_k_plus - p.tau_f;
    t.terms.push_back({"h^((tau_f ^ tau_k-) - d/2) rho^(tau_k+ - tau_f) |f|", min_smoothness(p) - half_d, gap, 0, 0, 0,
                       false});
    t.terms.push_back({"sigma_n q^-(tau_k+ - tau_f) |f|", 0, 0, -gap, 1, 0, false});
    t.terms.push_back({"h^(tau_k- - d/2) sigma_n^-1 E|eps|", p.tau_k_minus - half_d, 0, 0, -1, 0, true});
    t.terms.push_back({"E|eps|", 0, 0, 0, 0, 0, true});
  }
  const double g = p.noise_growth.value_or(-kInfinity);
  const bool fixed_kernel = std::abs(p.tau_k_minus - p.tau_k_plus) < 1e-12;
  if (p.nugget.kind == NuggetPolicy::Kind::fixed && fixed_kernel && std::abs(p.tau_k_minus - p.tau_f) < 1e-12) {
    // The sigma_n |f| term of the full bound is kept: it only disappears when E|eps| does not decay.
    t.closed_form_n_exp = closed_form_base(p) + std::max({g, 0.0, -p.tau_f / p.d + 0.5});
  } else if (p.nugget.kind == NuggetPolicy::Kind::adaptive_h && fixed_kernel &&
             p.nugget.exponent >= p.tau_k_minus - half_d - 1e-12 && p.design == DesignRegime::quasi_uniform) {
    t.closed_form_n_exp = closed_form_base(p) + std::max(g, -min_smoothness(p) / p.d + 0.5);
  }
  return t;
}

TermExponents exponent_misspec_interpolation(const RateParams& p) {
  p.validate();
  const double half_d = 0.5 * p.d;
  TermExponents t;
  t.statement = "misspecified_interpolation";
  t.prefactor_h_exp = prefactor(p);
  if (well_specified(p)) {
    t.terms.push_back({"h^(tau_k- - d/2) |f|", p.tau_k_minus - half_d, 0, 0, 0, 0, false});
    t.terms.push_back({"rho^(tau_k+ - d/2) E|eps|", 0, p.tau_k_plus - half_d, 0, 0, 0, true});
  } else {
    const double gap = p.tau_k_plus - p.tau_f;
    t.terms.push_back({"rho^(tau_k+ - tau_f) h^((tau_f ^ tau_k-) - d/2) |f|", min_smoothness(p) - half_d, gap, 0, 0, 0,
                       false});
    t.terms.push_back({"rho^(tau_k+ - tau_f) rho^(tau_f - d/2) E|eps|", 0, gap + p.tau_f - half_d, 0, 0, 0, true});
  }
  if (p.design == DesignRegime::quasi_uniform) {
    const double g = p.noise_growth.value_or(-kInfinity);
    t.closed_form_n_exp = closed_form_base(p) + std::max(g, -min_smoothness(p) / p.d + 0.5);
  }
  return t;
}

double exponent_bq(const RateParams& p, const Scaling& scaling) {
  p.validate();
  return min_smoothness(p) * scaling.h_slope + pos(p.tau_k_plus - p.tau_f) * scaling.rho_slope;
}

double exponent_bq_gaussian(const RateParams& p) {
  p.validate();
  return -p.tau_f / (2.0 * p.tau_f + p.d);
}

double exponent_bo(double tau, double tau_f, int d) { return -std::min(tau, tau_f) / d + 0.5; }

EmpiricalRate fit_empirical_rate(const std::vector<std::pair<double, double>>& table, int burn_in) {
  if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (static_cast<int>(table.size()) - burn_in < 3) {
    throw ConfigError("fit_empirical_rate: need at least 3 rows after burn-in");
  }
  std::vector<double> x, y;
  for (std::size_t i = static_cast<std::size_t>(burn_in); i < table.size(); ++i) {
    const auto [n, err] = table[i];
    if (!(err > 0.0) || !std::isfinite(err)) {
      throw NumericalError("fit_empirical_rate: error at n=" + fmt_num(n) +
                           " is not positive; the target may be reproduced exactly, so the experiment is degenerate");
    }
    if (!(n > 0.0)) throw ConfigError("fit_empirical_rate: n must be positive");
    x.push_back(std::log(n));
    y.push_back(std::log(err));
  }
  const LineFit f = fit_line(x, y);
  return {f.slope, f.slope_stderr, f.points};
}

}  // namespace gprates
