#include "gprates/experiment.hpp"

#include "gprates/csv.hpp"
#include "gprates/gp_fit.hpp"
#include "gprates/log.hpp"
#include "gprates/random.hpp"
#include "gprates/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gprates {

namespace {

constexpr std::uint64_t kTargetStream = 1;
constexpr std::uint64_t kDesignStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr Eigen::Index kPredictChunk = 2048;

template <typename... Args>
std::string strf(const char* fmt, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

int integer_root(int n, int d) {
  const int m = static_cast<int>(std::lround(std::pow(static_cast<double>(n), 1.0 / d)));
  for (int c = std::max(1, m - 1); c <= m + 1; ++c) {
    long long p = 1;
    for (int k = 0; k < d; ++k) p *= c;
    if (p == n) return c;
  }
  return 0;
}

int default_candidate_resolution(int dim) {
  switch (dim) {
    case 1: return 2048;
    case 2: return 64;
    case 3: return 16;
    default: return 8;
  }
}

int probe_resolution_for(const DesignConfig& config, int n, int dim) {
  if (config.probe_resolution > 0) return config.probe_resolution;
  const int per_axis = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 / dim)));
  return std::max(default_probe_resolution(dim), 4 * per_axis + 1);
}

bool is_inf(double q) { return std::isinf(q); }

}  // namespace

TargetSpec build_target(const TargetConfig& config, const Domain& domain, std::uint64_t seed) {
  if (config.kind == TargetConfig::Kind::named) return make_named_target(config.id, domain, config.params);
  const KernelSpec k(config.tau_f, config.lengthscale, config.amplitude, domain.dim());
  return make_expansion_target(k, domain, config.num_centers, seed);
}

KernelSpec KernelConfig::at(std::size_t ladder_index, int dim) const {
  const double t = tau_schedule.empty() ? tau : tau_schedule.at(ladder_index);
  return KernelSpec(t, lengthscale, amplitude, dim);
}

double KernelConfig::tau_min() const {
  return tau_schedule.empty() ? tau : *std::min_element(tau_schedule.begin(), tau_schedule.end());
}

double KernelConfig::tau_max() const {
  return tau_schedule.empty() ? tau : *std::max_element(tau_schedule.begin(), tau_schedule.end());
}

const char* design_kind_name(DesignConfig::Kind kind) {
  switch (kind) {
    case DesignConfig::Kind::grid: return "grid";
    case DesignConfig::Kind::uniform_random: return "uniform_random";
    case DesignConfig::Kind::p_greedy: return "p_greedy";
  }
  return "?";
}

std::vector<PointSet> build_designs(const DesignConfig& config, const std::vector<int>& ladder, const Domain& domain,
                                    const KernelSpec& kernel, std::uint64_t seed) {
  const int d = domain.dim();
  std::vector<PointSet> raw;
  raw.reserve(ladder.size());
  switch (config.kind) {
    case DesignConfig::Kind::grid:
      for (int n : ladder) {
        const int m = integer_root(n, d);
        if (m == 0) {
          throw ConfigError("design.kind=grid needs every ladder entry to be a perfect " + std::to_string(d) +
                            "-th power; got n=" + std::to_string(n));
        }
        raw.push_back(gen_grid(m, domain));
      }
      break;
    case DesignConfig::Kind::uniform_random:
      for (int n : ladder) {
        raw.push_back(gen_uniform_random(n, domain, derive_seed(seed, {kDesignStream, static_cast<std::uint64_t>(n)})));
      }
      break;
    case DesignConfig::Kind::p_greedy: {
      const int res = config.candidate_resolution > 0 ? config.candidate_resolution : default_candidate_resolution(d);
      const PointSet candidates = gen_grid(res, domain);
      const int n_max = *std::max_element(ladder.begin(), ladder.end());
      if (n_max > candidates.size()) {
        throw ConfigError("design.candidate_resolution too small: " + std::to_string(candidates.size()) +
                          " candidates for n=" + std::to_string(n_max));
      }
      const PointSet full = gen_p_greedy(n_max, kernel, candidates);
      for (int n : ladder) raw.push_back(full.prefix(n));
      break;
    }
  }
  std::vector<PointSet> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.push_back(with_design_metrics(raw[i], probe_resolution_for(config, ladder[i], d)));
  }
  return out;
}

const char* theory_name(Theory t) {
  switch (t) {
    case Theory::automatic: return "automatic";
    case Theory::interpolation: return "interpolation";
    case Theory::gaussian_regression: return "gaussian_regression";
    case Theory::misspec_gaussian: return "misspec_gaussian";
    case Theory::misspec_interpolation: return "misspec_interpolation";
  }
  return "?";
}

Theory theory_from_name(const std::string& name) {
  for (Theory t : {Theory::automatic, Theory::interpolation, Theory::gaussian_regression, Theory::misspec_gaussian,
                   Theory::misspec_interpolation}) {
    if (name == theory_name(t)) return t;
  }
  throw ConfigError("unknown theory '" + name +
                    "' (expected automatic, interpolation, gaussian_regression, misspec_gaussian, misspec_interpolation)");
}

std::string norm_label(double q) {
  if (is_inf(q)) return "Linf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "L%g", q);
  return buf;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::flagged: return "flagged";
  }
  return "?";
}

const char* status_name(ReportStatus s) {
  switch (s) {
    case ReportStatus::pass: return "pass";
    case ReportStatus::fail: return "fail";
    case ReportStatus::invalid: return "invalid";
  }
  return "?";
}

int RateExperimentConfig::effective_replicates() const {
  if (replicates > 0) return replicates;
  return noise.is_random() ? 20 : 1;
}

void RateExperimentConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (ladder.empty()) throw ConfigError("ladder must not be empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 1) throw ConfigError("ladder entries must be positive");
    if (i > 0 && ladder[i] <= ladder[i - 1]) throw ConfigError("ladder must be strictly increasing");
  }
  if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
  if (static_cast<int>(ladder.size()) - burn_in < 3) throw ConfigError("ladder needs at least 3 entries after burn_in");
  if (replicates < 0) throw ConfigError("replicates must be >= 0");
  if (eval_resolution < 0) throw ConfigError("eval_resolution must be >= 0");
  if (gates.empty()) throw ConfigError("gates must not be empty");
  for (const NormGate& g : gates) {
    if (!(g.q == 1.0 || g.q == 2.0 || is_inf(g.q))) throw ConfigError("gates.q must be 1, 2 or inf");
    if (!(g.tolerance > 0.0)) throw ConfigError("gates.tolerance must be > 0");
  }
  if (!kernel.tau_schedule.empty() && kernel.tau_schedule.size() != ladder.size()) {
    throw ConfigError("kernel.tau_schedule must have one entry per ladder point");
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(1, kernel.tau_schedule.size()); ++i) (void)kernel.at(i, dim);
  if (target.kind == TargetConfig::Kind::expansion) {
    (void)KernelSpec(target.tau_f, target.lengthscale, target.amplitude, dim);
    if (target.num_centers < 1) throw ConfigError("target.num_centers must be >= 1");
  }
  noise.validate();
  const Theory t = resolve_theory(*this);
  if (t == Theory::misspec_gaussian && lambda.kind == NuggetPolicy::Kind::zero) {
    throw ConfigError("theory misspec_gaussian needs lambda policy fixed or adaptive_h");
  }
  if (t == Theory::interpolation && noise.is_random()) {
    throw ConfigError("theory interpolation requires noise kind none");
  }
}

DesignCheck check_design_sequence(const std::vector<PointSet>& designs, int burn_in) {
  std::vector<double> ln, lh, lr;
  for (std::size_t i = static_cast<std::size_t>(burn_in); i < designs.size(); ++i) {
    const DesignMetrics& m = designs[i].metrics().value();
    ln.push_back(std::log(static_cast<double>(designs[i].size())));
    lh.push_back(std::log(m.fill_distance));
    lr.push_back(std::log(m.mesh_ratio));
  }
  const int dim = designs.front().dim();
  DesignCheck c;
  c.h_slope = fit_line(ln, lh).slope;
  c.rho_slope = fit_line(ln, lr).slope;
  c.quasi_uniform = std::abs(c.h_slope + 1.0 / dim) <= 0.15 && c.rho_slope <= 0.1;
  return c;
}

Matrix predict_columns(const KernelSpec& kernel, const Matrix& X, const Matrix& W, const Matrix& Q,
                       double prior_mean) {
  Matrix out(Q.rows(), W.cols());
  for (Eigen::Index b = 0; b < Q.rows(); b += kPredictChunk) {
    const Eigen::Index len = std::min(kPredictChunk, Q.rows() - b);
    out.middleRows(b, len) = cross_matrix(kernel, Q.middleRows(b, len), X) * W;
  }
  out.array() += prior_mean;
  return out;
}

Vector replicate_noise(const NoiseModel& noise, std::uint64_t seed, int n, int r) {
  if (!noise.is_random()) return Vector::Zero(n);
  const auto s = derive_seed(seed, {kNoiseStream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)});
  return draw_noise(noise.with_seed(s), n);
}

Theory resolve_theory(const RateExperimentConfig& config) {
  if (config.theory != Theory::automatic) return config.theory;
  const bool nugget = config.lambda.kind != NuggetPolicy::Kind::zero;
  switch (config.noise.kind) {
    case NoiseModel::Kind::none: return nugget ? Theory::misspec_gaussian : Theory::interpolation;
    case NoiseModel::Kind::gaussian: return nugget ? Theory::gaussian_regression : Theory::misspec_interpolation;
    default: return nugget ? Theory::misspec_gaussian : Theory::misspec_interpolation;
  }
}

namespace {

void compare(const RateExperimentConfig& config, const TargetSpec& target, RateReport& report) {
  const int d = config.dim;
  const bool qu = report.design.quasi_uniform;
  Scaling scaling = qu ? Scaling::nominal(d) : Scaling{report.design.h_slope, report.design.rho_slope};
  scaling = with_nugget(scaling, config.lambda);
  if (!qu) {
    report.warnings.push_back(strf("design sequence is not quasi-uniform (h slope %.3f, rho slope %.3f); comparing "
                                   "against the rho-inflated exponent",
                                   report.design.h_slope, report.design.rho_slope));
  }

  std::vector<std::pair<double, double>> table(report.rows.size());
  for (std::size_t g = 0; g < config.gates.size(); ++g) {
    const NormGate& gate = config.gates[g];
    RateParams p;
    p.tau_f = target.tau_f();
    p.tau_k_minus = config.kernel.tau_min();
    p.tau_k_plus = config.kernel.tau_max();
    p.d = d;
    p.s = config.s;
    p.q = gate.q;
    p.noise_growth = expected_noise_growth(config.noise);
    p.design = qu ? DesignRegime::quasi_uniform : DesignRegime::arbitrary;
    p.nugget = config.lambda;
    if (g == 0) {
      for (const std::string& a : p.advisories()) report.warnings.push_back(a);
    }

    GateResult r;
    r.gate = gate;
    switch (report.theory) {
      case Theory::interpolation:
        r.theoretical = n_exponent(exponent_interpolation(p), scaling);
        break;
      case Theory::gaussian_regression: {
        const GaussianRegressionExponent e = exponent_gaussian_regression(p);
        if (e.closed_form) {
          r.theoretical = e.n_exp;
        } else {
          r.theoretical = e.terms.dominant(scaling, std::nullopt);
          r.term_exponents = e.terms.n_exponents(scaling, std::nullopt);
          for (const std::string& w : e.terms.warnings) report.warnings.push_back(norm_label(gate.q) + ": " + w);
        }
        break;
      }
      case Theory::misspec_gaussian:
      case Theory::misspec_interpolation: {
        const TermExponents t = report.theory == Theory::misspec_gaussian ? exponent_misspec_gaussian(p)
                                                                           : exponent_misspec_interpolation(p);
        if (t.closed_form_n_exp && qu) {
          r.theoretical = *t.closed_form_n_exp;
        } else {
          r.theoretical = t.dominant(scaling, p.noise_growth);
          r.term_exponents = t.n_exponents(scaling, p.noise_growth);
        }
        break;
      }
      case Theory::automatic: break;
    }

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      table[i] = {static_cast<double>(report.rows[i].n), report.rows[i].mean_error[g]};
    }
    const EmpiricalRate fitted = fit_empirical_rate(table, config.burn_in);
    r.fitted = fitted.slope;
    r.std_error = fitted.std_error;
    if (std::abs(r.fitted - r.theoretical) <= gate.tolerance) {
      r.verdict = Verdict::pass;
    } else if (report.theory == Theory::gaussian_regression && !r.term_exponents.empty()) {
      const auto [lo, hi] = std::minmax_element(r.term_exponents.begin(), r.term_exponents.end());
      r.verdict = (r.fitted >= *lo - gate.tolerance && r.fitted <= *hi + gate.tolerance) ? Verdict::flagged
                                                                                          : Verdict::fail;
    } else {
      r.verdict = Verdict::fail;
    }
    report.gates.push_back(std::move(r));
  }
}

}  // namespace

RateReport run_rate_experiment(const RateExperimentConfig& config) {
  config.validate();
  RateReport report;
  report.id = config.id;
  report.theory = resolve_theory(config);

  const int d = config.dim;
  const Domain domain = Domain::unit_cube(d);
  const TargetSpec target = build_target(config.target, domain, derive_seed(config.seed, {kTargetStream}));
  const EvalGrid grid(domain, config.eval_resolution > 0 ? config.eval_resolution : default_eval_resolution(d));
  const Vector f_grid = target.evaluate(grid.points());
  const int reps = config.effective_replicates();
  const MeanSpec prior = MeanSpec::constant(config.prior_mean);

  std::vector<PointSet> designs;
  try {
    designs = build_designs(config.design, config.ladder, domain, config.kernel.at(0, d), config.seed);

    for (std::size_t i = 0; i < config.ladder.size(); ++i) {
      const PointSet& X = designs[i];
      const int n = X.size();
      const DesignMetrics& m = *X.metrics();
      const KernelSpec kernel = config.kernel.at(i, d);

      LadderRow row;
      row.n = n;
      row.h = m.fill_distance;
      row.separation = m.separation_radius;
      row.rho = m.mesh_ratio;
      row.tau_k = kernel.tau();
      row.lambda = config.lambda.lambda(m.fill_distance);

      const Vector f_design = target.evaluate(X.points());
      Matrix Y(n, reps);
      double noise_sum = 0.0;
      for (int r = 0; r < reps; ++r) {
        const Vector eps = replicate_noise(config.noise, config.seed, n, r);
        noise_sum += eps.norm();
        Y.col(r) = f_design + eps;
      }
      row.noise_norm = noise_sum / reps;

      const PosteriorModel model = fit(kernel, prior, X, Y.col(0), row.lambda);
      row.jitter = model.jitter();
      const Matrix W = model.solve(Y.array() - config.prior_mean);
      const Matrix pred = predict_columns(kernel, X.points(), W, grid.points(), config.prior_mean);

      row.mean_error.resize(config.gates.size());
      row.std_error.resize(config.gates.size());
      std::vector<std::vector<double>> per_gate(config.gates.size());
      bool ordered = true;
      for (int r = 0; r < reps; ++r) {
        const Vector residual = f_grid - pred.col(r);
        const ErrorNorms e = error_norms(residual, grid);
        ordered = ordered && norms_ordered(e, grid);
        for (std::size_t g = 0; g < config.gates.size(); ++g) {
          const double q = config.gates[g].q;
          per_gate[g].push_back(q == 1.0 ? e.l1 : q == 2.0 ? e.l2 : e.linf);
        }
      }
      if (!ordered) report.warnings.push_back("norm ordering L1 <= L2 <= Linf violated at n=" + std::to_string(n));
      for (std::size_t g = 0; g < config.gates.size(); ++g) {
        row.mean_error[g] = mean(per_gate[g]);
        row.std_error[g] = sample_stddev(per_gate[g]);
      }

      if (config.check_resolution && i + 1 == config.ladder.size()) {
        const EvalGrid fine(domain, 2 * grid.resolution());
        const Vector fine_pred = predict_columns(kernel, X.points(), W.col(0), fine.points(), config.prior_mean).col(0);
        const double l2_fine = lq_norm(target.evaluate(fine.points()) - fine_pred, 2.0, fine);
        const double l2_coarse = lq_norm(f_grid - pred.col(0), 2.0, grid);
        report.resolution_change = l2_fine > 0.0 ? std::abs(l2_fine - l2_coarse) / l2_fine : 0.0;
      }
      logger()->info("{} n={} h={:.4g} rho={:.4g} err0={:.4g}", config.id, n, row.h, row.rho, row.mean_error[0]);
      report.rows.push_back(std::move(row));
    }
  } catch (const SingularDesignError& e) {
    report.status = ReportStatus::invalid;
    report.invalid_reason = std::string("cholesky failure: ") + e.what();
    return report;
  } catch (const NumericalError& e) {
    report.status = ReportStatus::invalid;
    report.invalid_reason = std::string("numerical failure: ") + e.what();
    return report;
  }

  report.design = check_design_sequence(designs, config.burn_in);
  try {
    compare(config, target, report);
  } catch (const NumericalError& e) {
    report.status = ReportStatus::invalid;
    report.invalid_reason = e.what();
    return report;
  }

  if (report.resolution_change && *report.resolution_change >= 0.05) {
    report.status = ReportStatus::invalid;
    report.invalid_reason = strf("unresolved: doubling the eval grid changed the L2 error by %.1f%%",
                                 100.0 * *report.resolution_change);
    return report;
  }
  const bool any_fail = std::any_of(report.gates.begin(), report.gates.end(),
                                    [](const GateResult& g) { return g.verdict == Verdict::fail; });
  report.status = any_fail ? ReportStatus::fail : ReportStatus::pass;
  return report;
}

nlohmann::ordered_json RateReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["id"] = id;
  j["theory"] = theory_name(theory);
  j["status"] = status_name(status);
  if (!invalid_reason.empty()) j["invalid_reason"] = invalid_reason;
  ordered_json gj = ordered_json::array();
  for (const GateResult& g : gates) {
    ordered_json e;
    e["norm"] = norm_label(g.gate.q);
    e["theoretical_exponent"] = g.theoretical;
    e["fitted_slope"] = g.fitted;
    e["stderr"] = g.std_error;
    e["tolerance"] = g.gate.tolerance;
    e["verdict"] = verdict_name(g.verdict);
    if (!g.term_exponents.empty()) e["term_exponents"] = g.term_exponents;
    gj.push_back(e);
  }
  j["gates"] = gj;
  j["design_check"] = {{"h_slope", design.h_slope},
                       {"rho_slope", design.rho_slope},
                       {"quasi_uniform", design.quasi_uniform}};
  if (resolution_change) j["resolution_change"] = *resolution_change;
  j["warnings"] = warnings;
  ordered_json tj = ordered_json::array();
  for (const LadderRow& r : rows) {
    ordered_json e;
    e["n"] = r.n;
    e["h"] = r.h;
    e["separation"] = r.separation;
    e["rho"] = r.rho;
    e["tau_k"] = r.tau_k;
    e["lambda"] = r.lambda;
    e["jitter"] = r.jitter;
    e["noise_norm"] = r.noise_norm;
    for (std::size_t g = 0; g < gates.size() && g < r.mean_error.size(); ++g) {
      e["error"][norm_label(gates[g].gate.q)] = {{"mean", r.mean_error[g]}, {"std", r.std_error[g]}};
    }
    tj.push_back(e);
  }
  j["table"] = tj;
  return j;
}

void RateReport::write_csv(std::ostream& out) const {
  CsvWriter csv(out);
  std::vector<std::string> head{"n", "mean_error", "std_error"};
  for (std::size_t g = 1; g < gates.size(); ++g) {
    head.push_back("mean_error_" + norm_label(gates[g].gate.q));
    head.push_back("std_error_" + norm_label(gates[g].gate.q));
  }
  for (const char* c : {"h", "separation", "rho", "lambda"}) head.emplace_back(c);
  csv.header(head);
  for (const LadderRow& r : rows) {
    std::vector<double> v{static_cast<double>(r.n)};
    for (std::size_t g = 0; g < r.mean_error.size(); ++g) {
      v.push_back(r.mean_error[g]);
      v.push_back(r.std_error[g]);
    }
    for (double x : {r.h, r.separation, r.rho, r.lambda}) v.push_back(x);
    csv.row(v);
  }
}

std::string RateReport::summary() const {
  std::string s = id + ": " + status_name(status);
  if (status == ReportStatus::invalid) return s + " (" + invalid_reason + ")";
  for (const GateResult& g : gates) {
    s += "; " + norm_label(g.gate.q) +
         strf(" slope %.3f vs theory %.3f (tol %g) ", g.fitted, g.theoretical, g.gate.tolerance) +
         verdict_name(g.verdict);
  }
  return s;
}

}  // namespace gprates
