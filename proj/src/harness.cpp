#include "gprates/harness.hpp"

#include "gprates/csv.hpp"
#include "gprates/design.hpp"
#include "gprates/identities.hpp"
#include "gprates/log.hpp"
#include "gprates/parallel.hpp"
#include "gprates/random.hpp"

#include <spdlog/fmt/fmt.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gprates {

namespace fs = std::filesystem;
using OJson = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kTargetStream = 1;
constexpr int kNoiseGrowthSeeds = 200;

void write_file(const fs::path& path, const std::string& text, RunOutcome& out) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  out.artifacts.push_back(path);
}

void write_json(const fs::path& path, const OJson& j, RunOutcome& out) { write_file(path, j.dump(2) + "\n", out); }

int exit_for(ReportStatus s) {
  switch (s) {
    case ReportStatus::pass: return kExitOk;
    case ReportStatus::fail: return kExitFailed;
    case ReportStatus::invalid: return kExitNumerical;
  }
  return kExitNumerical;
}

void run_design(const ExperimentConfig& config, const fs::path& dir, RunOutcome& out) {
  const auto& c = std::get<DesignRunConfig>(config.body);
  const Domain domain = Domain::unit_cube(c.dim);
  const PointSet X = build_designs(c.design, {c.n}, domain, c.kernel.at(0, c.dim), c.seed).front();
  const DesignMetrics& m = X.metrics().value();
  write_file(dir / (config.id + "_points.csv"), X.to_csv(), out);
  OJson j;
  j["id"] = config.id;
  j["n"] = X.size();
  j["dim"] = X.dim();
  j["design"] = design_kind_name(c.design.kind);
  j["fill_distance"] = m.fill_distance;
  j["fill_distance_error"] = m.fill_distance_error;
  j["separation_radius"] = m.separation_radius;
  j["mesh_ratio"] = m.mesh_ratio;
  j["config"] = to_json(config);
  write_json(dir / (config.id + "_metrics.json"), j, out);
  out.lines.push_back(fmt::format("{}: {} design, n={}, h={:.4g}, q={:.4g}, rho={:.4g}", config.id,
                                  design_kind_name(c.design.kind), X.size(), m.fill_distance, m.separation_radius,
                                  m.mesh_ratio));
}

void run_fit(const ExperimentConfig& config, const fs::path& dir, RunOutcome& out) {
  const auto& c = std::get<FitRunConfig>(config.body);
  const Domain domain = Domain::unit_cube(c.dim);
  const KernelSpec kernel = c.kernel.at(0, c.dim);
  const TargetSpec target = build_target(c.target, domain, derive_seed(c.seed, {kTargetStream}));
  const PointSet X = build_designs(c.design, {c.n}, domain, kernel, c.seed).front();
  const DesignMetrics& m = X.metrics().value();

  const Vector eps = replicate_noise(c.noise, c.seed, c.n, 0);
  const double lambda = c.lambda.lambda(m.fill_distance);
  const PosteriorModel model = fit(kernel, MeanSpec::constant(c.prior_mean), X, target.evaluate(X.points()) + eps, lambda);

  const EvalGrid grid(domain, c.eval_resolution > 0 ? c.eval_resolution : default_eval_resolution(c.dim));
  const Vector f = target.evaluate(grid.points());
  const Vector mean = model.mean_batch(grid.points());
  const Vector sd = model.variance_batch(grid.points()).cwiseMax(0.0).cwiseSqrt();
  const ErrorNorms e = error_norms(f - mean, grid);

  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  std::vector<std::string> head;
  for (int k = 1; k <= c.dim; ++k) head.push_back("x" + std::to_string(k));
  for (const char* h : {"f", "mean", "sd"}) head.emplace_back(h);
  csv.header(head);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    std::vector<double> row;
    for (int k = 0; k < c.dim; ++k) row.push_back(grid.points()(i, k));
    row.insert(row.end(), {f[i], mean[i], sd[i]});
    csv.row(row);
  }
  write_file(dir / (config.id + "_fit.csv"), csv_text.str(), out);
  write_file(dir / (config.id + "_points.csv"), X.to_csv(), out);

  OJson j;
  j["id"] = config.id;
  j["n"] = c.n;
  j["fill_distance"] = m.fill_distance;
  j["separation_radius"] = m.separation_radius;
  j["mesh_ratio"] = m.mesh_ratio;
  j["lambda"] = lambda;
  j["jitter"] = model.jitter();
  j["noise_norm"] = eps.norm();
  j["errors"] = {{"L1", e.l1}, {"L2", e.l2}, {"Linf", e.linf}};
  j["residual_norm"] = residual_norm(target, model);
  j["fit_rkhs_norm"] = rkhs_norm_expansion(kernel, X, model.dual());
  j["config"] = to_json(config);
  write_json(dir / (config.id + "_report.json"), j, out);
  out.lines.push_back(fmt::format("{}: {} n={} lambda={:.3g}: L1 {:.4e}, L2 {:.4e}, Linf {:.4e}", config.id,
                                  experiment_kind_name(config.kind), c.n, lambda, e.l1, e.l2, e.linf));
}

RateReport run_rates(const ExperimentConfig& config, const fs::path& dir, RunOutcome& out) {
  const auto& c = std::get<RateExperimentConfig>(config.body);
  const RateReport report = run_rate_experiment(c);
  std::ostringstream csv;
  report.write_csv(csv);
  write_file(dir / (config.id + "_curve.csv"), csv.str(), out);
  OJson j = report.to_json();
  j["config"] = to_json(config);
  write_json(dir / (config.id + "_report.json"), j, out);
  out.lines.push_back(report.summary());
  out.exit_code = exit_for(report.status);
  return report;
}

BqReport run_bq(const ExperimentConfig& config, const fs::path& dir, RunOutcome& out) {
  const auto& c = std::get<BqExperimentConfig>(config.body);
  const BqReport report = run_bq_experiment(c);
  std::ostringstream csv;
  write_bq_csv(report.rows, csv);
  write_file(dir / (config.id + "_curve.csv"), csv.str(), out);
  OJson j = report.to_json();
  j["config"] = to_json(config);
  write_json(dir / (config.id + "_report.json"), j, out);
  out.lines.push_back(report.summary());
  out.exit_code = exit_for(report.status);
  return report;
}

std::string bo_detail(const BoSummary& s) {
  if (s.runs.empty()) return "no budgets";
  double worst_rho = 0.0;
  for (const BOResult& r : s.runs) worst_rho = std::max(worst_rho, r.mesh_ratio);
  return fmt::format(
      "regret(n={}) {:.3e} -> regret(n={}) {:.3e} (cap {:.0e}, {}); max mesh ratio {:.2f} (cap {:.0f}); "
      "certificate {}; proof inequality {}; regret slope {:.2f} vs theory {:.2f} (reported only)",
      s.runs.front().n, s.runs.front().regret, s.runs.back().n, s.runs.back().regret, s.regret_cap,
      s.regret_decreased ? "decreasing" : "not decreasing", worst_rho, s.mesh_ratio_cap,
      s.certificate_ok ? "holds" : "violated", s.proof_inequality_ok ? "holds" : "violated", s.regret_slope,
      s.theory_slope);
}

BoSummary run_bo(const ExperimentConfig& config, const fs::path& dir, RunOutcome& out) {
  const auto& c = std::get<BoRunConfig>(config.body);
  const Domain domain = Domain::unit_cube(c.dim);
  const TargetSpec target = build_target(c.target, domain, derive_seed(c.seed, {kTargetStream}));
  const BoSummary s = summarize_bo(target, c.resolved(), c.budgets, c.mesh_ratio_cap, c.regret_cap);
  std::ostringstream csv;
  write_trace_csv(s.runs.back(), csv);
  write_file(dir / (config.id + "_trace.csv"), csv.str(), out);
  OJson j{{"id", config.id}};
  j.update(s.to_json());
  j["config"] = to_json(config);
  write_json(dir / (config.id + "_report.json"), j, out);

  const bool aborted = std::any_of(s.runs.begin(), s.runs.end(), [](const BOResult& r) { return r.aborted; });
  out.lines.push_back(config.id + ": " + (s.pass() ? "pass" : aborted ? "invalid" : "fail") + "; " + bo_detail(s));
  out.exit_code = aborted ? kExitNumerical : s.pass() ? kExitOk : kExitFailed;
  return s;
}

RunOutcome dispatch(const ExperimentConfig& config, const fs::path& dir) {
  RunOutcome out;
  fs::create_directories(dir);
  switch (config.kind) {
    case ExperimentKind::design: run_design(config, dir, out); break;
    case ExperimentKind::interpolate:
    case ExperimentKind::regress: run_fit(config, dir, out); break;
    case ExperimentKind::rates: run_rates(config, dir, out); break;
    case ExperimentKind::bq: run_bq(config, dir, out); break;
    case ExperimentKind::bo: run_bo(config, dir, out); break;
  }
  return out;
}

// ---- acceptance suite ----

struct Band {
  double lo;
  double hi;
  double theory;  // value the criterion states
};

struct RateCriterion {
  std::string id;
  std::string title;
  ExperimentConfig config;
  std::vector<Band> bands;  // one per gate
};

ExperimentConfig rates_config(const std::string& id, const RateExperimentConfig& body) {
  ExperimentConfig c;
  c.kind = ExperimentKind::rates;
  c.id = id;
  RateExperimentConfig b = body;
  b.id = id;
  c.body = b;
  return c;
}

RateExperimentConfig base_rates(std::uint64_t seed, double tau_f, double tau_k) {
  RateExperimentConfig c;
  c.seed = seed;
  c.target.id = "lacunary";
  c.target.params.tau_f = tau_f;
  c.kernel.tau = tau_k;
  return c;
}

NoiseModel three_outliers() {
  OutlierSchedule fixed;
  fixed.count = 3;
  return NoiseModel::outliers(fixed, 1.0, 0);
}

std::vector<RateCriterion> rate_criteria(std::uint64_t seed) {
  std::vector<RateCriterion> out;

  RateExperimentConfig a1 = base_rates(seed, 2.0, 2.0);
  a1.target.id = "kink";
  a1.gates = {{2.0, 0.4}, {kInfinity, 0.4}};
  out.push_back({"A1", "well-specified interpolation", rates_config("a1", a1),
                 {{-2.4, -1.6, -2.0}, {-1.9, -1.1, -1.5}}});

  RateExperimentConfig a2 = base_rates(seed, 1.0, 2.0);
  a2.gates = {{2.0, 0.4}};
  out.push_back({"A2", "misspecified smoothness, rough target", rates_config("a2", a2), {{-1.4, -0.6, -1.0}}});

  RateExperimentConfig a3 = base_rates(seed, 2.5, 3.0);
  a3.noise = NoiseModel::gaussian(0.1, 0);
  a3.lambda = NuggetPolicy::fixed(0.1);
  a3.replicates = 20;
  a3.ladder = {32, 64, 128, 256, 512, 1024, 2048};
  a3.gates = {{2.0, 0.2}};
  const double a3_theory = -2.5 / 6.0;
  out.push_back({"A3", "gaussian regression at the prescribed smoothness", rates_config("a3", a3),
                 {{a3_theory - 0.2, a3_theory + 0.2, a3_theory}}});

  RateExperimentConfig a4 = base_rates(seed, 2.0, 2.0);
  a4.noise = three_outliers();
  a4.lambda = NuggetPolicy::fixed(0.1);
  a4.gates = {{2.0, 0.2}};
  out.push_back({"A4", "gaussian likelihood with fixed outliers", rates_config("a4", a4), {{-0.7, -0.3, -0.5}}});

  RateExperimentConfig a5 = base_rates(seed, 1.0, 2.0);
  a5.noise = three_outliers();
  a5.lambda = NuggetPolicy::adaptive_h(1.5);
  a5.gates = {{2.0, 0.2}};
  out.push_back({"A5", "adaptive nugget under misspecified smoothness", rates_config("a5", a5),
                 {{-0.7, -0.3, -0.5}}});
  return out;
}

ExperimentConfig a2_expansion_config(std::uint64_t seed) {
  RateExperimentConfig c = base_rates(seed, 1.0, 2.0);
  c.target.kind = TargetConfig::Kind::expansion;
  c.target.tau_f = 1.0;
  c.gates = {{2.0, 0.4}};
  return rates_config("a2_expansion", c);
}

ExperimentConfig a6_config(std::uint64_t seed) {
  BqExperimentConfig b;
  b.id = "a6";
  b.seed = seed;
  b.target.id = "lacunary";
  b.target.params.tau_f = 2.0;
  b.kernel.tau = 2.0;
  b.density = "uniform";
  b.tolerance = 0.5;
  ExperimentConfig c;
  c.kind = ExperimentKind::bq;
  c.id = "a6";
  c.body = b;
  return c;
}

ExperimentConfig a7_config(std::uint64_t seed) {
  BoRunConfig b;
  b.seed = seed;
  b.target.id = "gramacy_lee";
  b.bo.gamma = 0.3;
  b.bo.acquisition = Acquisition::expected_improvement();
  b.bo.kernel = KernelSpec(2.0, 1.0, 1.0, 1);
  b.budgets = {25, 50, 100, 200};
  ExperimentConfig c;
  c.kind = ExperimentKind::bo;
  c.id = "a7";
  c.body = b;
  return c;
}

std::string band_text(const Band& b) { return fmt::format("[{:.3f}, {:.3f}]", b.lo, b.hi); }

CriterionResult judge_rates(const RateCriterion& rc, const RateReport& report) {
  CriterionResult r{rc.id, true, false, rc.title + ": "};
  if (report.status == ReportStatus::invalid) {
    r.detail += "invalid (" + report.invalid_reason + ")";
    return r;
  }
  bool in_bands = report.gates.size() == rc.bands.size();
  for (std::size_t g = 0; g < report.gates.size() && g < rc.bands.size(); ++g) {
    const GateResult& gate = report.gates[g];
    const Band& b = rc.bands[g];
    const bool ok = gate.fitted >= b.lo && gate.fitted <= b.hi;
    in_bands = in_bands && ok;
    r.detail += fmt::format("{}{} slope {:.3f} in {} {} (stated theory {:.3f}, computed {:.3f})", g ? "; " : "",
                            norm_label(gate.gate.q), gate.fitted, band_text(b), ok ? "yes" : "NO", b.theory,
                            gate.theoretical);
  }
  r.pass = in_bands && report.status == ReportStatus::pass;
  if (!r.pass && in_bands) r.detail += "; report status " + std::string(status_name(report.status));
  return r;
}

CriterionResult run_a8(const fs::path& dir, std::uint64_t seed, RunOutcome& out) {
  const std::vector<IdentityCheck> checks = run_identity_suite(seed);
  CriterionResult r{"A8", true, true, "exact identities: "};
  OJson j = OJson::array();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const IdentityCheck& c = checks[i];
    r.pass = r.pass && c.pass();
    r.detail += fmt::format("{}{} {}/{} (worst {:.1e}, tol {:.0e})", i ? "; " : "", c.name, c.trials - c.failures,
                            c.trials, c.worst, c.tolerance);
    j.push_back(c.to_json());
  }
  write_json(dir / "a8_report.json", OJson{{"id", "a8"}, {"seed", seed}, {"checks", j}}, out);
  return r;
}

CriterionResult run_a9(const fs::path& dir, std::uint64_t seed, RunOutcome& out) {
  OutlierSchedule fixed;
  fixed.count = 3;
  OutlierSchedule power;
  power.kind = OutlierSchedule::Kind::power;
  power.alpha = 0.5;
  OutlierSchedule fraction;
  fraction.kind = OutlierSchedule::Kind::fraction;
  fraction.beta = 0.25;
  const std::vector<std::pair<std::string, NoiseModel>> models = {
      {"gaussian", NoiseModel::gaussian(0.1, derive_seed(seed, {9, 1}))},
      {"fixed", NoiseModel::outliers(fixed, 1.0, derive_seed(seed, {9, 2}))},
      {"power", NoiseModel::outliers(power, 1.0, derive_seed(seed, {9, 3}))},
      {"fraction", NoiseModel::outliers(fraction, 1.0, derive_seed(seed, {9, 4}))},
  };
  const std::vector<int> ns = {32, 64, 128, 256, 512, 1024, 2048};
  constexpr double kTol = 0.1;

  CriterionResult r{"A9", true, true, "noise growth: "};
  OJson j = OJson::array();
  std::vector<NoiseGrowthFit> fits;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& [name, model] = models[i];
    const double expected = expected_noise_growth(model).value();
    const NoiseGrowthFit f = empirical_noise_growth(model, ns, kNoiseGrowthSeeds);
    const bool ok = std::abs(f.fit.slope - expected) <= kTol;
    r.pass = r.pass && ok;
    r.detail += fmt::format("{}{} {:.3f} vs {:.2f}{}", i ? "; " : "", name, f.fit.slope, expected, ok ? "" : " (NO)");
    j.push_back({{"noise", name}, {"description", model.describe()}, {"slope", f.fit.slope}, {"expected", expected},
                 {"tolerance", kTol}, {"pass", ok}});
    fits.push_back(f);
  }
  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  std::vector<std::string> head{"n"};
  for (const auto& m : models) head.push_back("mean_norm_" + m.first);
  csv.header(head);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    std::vector<double> row{static_cast<double>(ns[k])};
    for (const NoiseGrowthFit& f : fits) row.push_back(f.mean_norm[k]);
    csv.row(row);
  }
  write_file(dir / "a9_curve.csv", csv_text.str(), out);
  write_json(dir / "a9_report.json", OJson{{"id", "a9"}, {"seed", seed}, {"seeds_per_n", kNoiseGrowthSeeds}, {"fits", j}},
             out);
  return r;
}

std::vector<CriterionResult> run_a1_to_a9(const fs::path& dir, std::uint64_t seed) {
  fs::create_directories(dir);
  std::vector<CriterionResult> results;
  RunOutcome sink;

  for (const RateCriterion& rc : rate_criteria(seed)) {
    results.push_back(judge_rates(rc, run_rates(rc.config, dir, sink)));
    if (rc.id == "A2") {
      const RateReport diag = run_rates(a2_expansion_config(seed), dir, sink);
      CriterionResult d{"A2-expansion", false, false, "literal nu = 1/2 expansion target (not gating): "};
      d.detail += diag.status == ReportStatus::invalid
                      ? "invalid (" + diag.invalid_reason + ")"
                      : fmt::format("L2 slope {:.3f} vs theory {:.3f}", diag.gates.front().fitted,
                                    diag.gates.front().theoretical);
      results.push_back(d);
    }
  }

  const BqReport bq = run_bq(a6_config(seed), dir, sink);
  CriterionResult a6{"A6", true, false, "quadrature: "};
  if (bq.status == ReportStatus::invalid) {
    a6.detail += "invalid (" + bq.invalid_reason + ")";
  } else {
    const Band band{-2.5, -1.5, -2.0};
    const bool ok = bq.fitted >= band.lo && bq.fitted <= band.hi;
    a6.pass = ok && bq.holder_ok && bq.status == ReportStatus::pass;
    a6.detail += fmt::format("integral error slope {:.3f} in {} {} (stated theory {:.3f}, computed {:.3f}); Holder "
                             "chain {} on every ladder point",
                             bq.fitted, band_text(band), ok ? "yes" : "NO", band.theory, bq.theoretical,
                             bq.holder_ok ? "holds" : "violated");
  }
  results.push_back(a6);

  const BoSummary bo = run_bo(a7_config(seed), dir, sink);
  results.push_back({"A7", true, bo.pass(), "BO: " + bo_detail(bo)});

  results.push_back(run_a8(dir, seed, sink));
  results.push_back(run_a9(dir, seed, sink));
  return results;
}

OJson summary_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  OJson j;
  j["seed"] = seed;
  auto& arr = j["criteria"] = OJson::array();
  for (const CriterionResult& r : results) {
    arr.push_back({{"id", r.id}, {"gating", r.gating}, {"pass", r.pass}, {"detail", r.detail}});
  }
  return j;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, const fs::path& out_dir) {
  try {
    return dispatch(config, out_dir);
  } catch (const ConfigError& e) {
    RunOutcome out;
    out.exit_code = kExitConfig;
    out.lines.push_back(config.id + ": configuration error: " + e.what());
    return out;
  } catch (const NumericalError& e) {
    RunOutcome out;
    out.exit_code = kExitNumerical;
    out.lines.push_back(config.id + ": numerical abort: " + e.what());
    return out;
  }
}

std::string CriterionResult::line() const {
  return id + " " + (gating ? (pass ? "PASS" : "FAIL") : "INFO") + " " + detail;
}

const std::vector<std::string>& acceptance_ids() {
  static const std::vector<std::string> ids = {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10"};
  return ids;
}

std::vector<ExperimentConfig> acceptance_configs(std::uint64_t seed) {
  std::vector<ExperimentConfig> out;
  for (const RateCriterion& rc : rate_criteria(seed)) {
    out.push_back(rc.config);
    if (rc.id == "A2") out.push_back(a2_expansion_config(seed));
  }
  out.push_back(a6_config(seed));
  out.push_back(a7_config(seed));
  return out;
}

std::vector<std::string> differing_files(const fs::path& a, const fs::path& b) {
  std::map<std::string, std::pair<fs::path, fs::path>> files;
  for (const auto& [dir, first] : {std::pair{a, true}, std::pair{b, false}}) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      auto& slot = files[entry.path().filename().string()];
      (first ? slot.first : slot.second) = entry.path();
    }
  }
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::vector<std::string> diff;
  for (const auto& [name, paths] : files) {
    if (paths.first.empty() || paths.second.empty() || read(paths.first) != read(paths.second)) diff.push_back(name);
  }
  return diff;
}

std::vector<CriterionResult> run_acceptance(const fs::path& out_dir, std::uint64_t seed, bool check_determinism) {
  std::vector<CriterionResult> results = run_a1_to_a9(out_dir, seed);
  RunOutcome sink;
  if (check_determinism) {
    const fs::path rerun = out_dir / "determinism_rerun";
    fs::remove_all(rerun);
    const int threads = thread_count();
    const int other = threads == 1 ? 2 : 1;
    set_thread_count(other);
    try {
      (void)run_a1_to_a9(rerun, seed);
    } catch (...) {
      set_thread_count(threads);
      throw;
    }
    set_thread_count(threads);
    const std::vector<std::string> diff = differing_files(out_dir, rerun);
    CriterionResult a10{"A10", true, diff.empty(), ""};
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(rerun)) count += entry.is_regular_file() ? 1 : 0;
    if (diff.empty()) {
      a10.detail = fmt::format("determinism: {} artifact files byte-identical across two runs (threads {} and {})",
                               count, threads, other);
      fs::remove_all(rerun);
    } else {
      a10.detail = "determinism: files differ between runs: ";
      for (std::size_t i = 0; i < diff.size(); ++i) a10.detail += (i ? ", " : "") + diff[i];
      a10.detail += " (second run kept in " + rerun.string() + ")";
    }
    results.push_back(a10);
  }
  write_json(out_dir / "acceptance_summary.json", summary_json(results, seed), sink);
  return results;
}

std::string registry_text() {
  std::ostringstream out;
  out << "targets:\n";
  for (const RegistryEntry& e : target_registry()) {
    out << "  " << e.id << "  [tau_f " << e.smoothness << "]  " << e.description << "\n";
  }
  out << "  expansion  [tau_f = kernel tau]  sum of Matern kernels at random centers (target.kind = expansion)\n";
  out << "densities:\n";
  for (const std::string& d : density_registry()) out << "  " << d << "\n";
  out << "designs:\n";
  for (auto k : {DesignConfig::Kind::grid, DesignConfig::Kind::uniform_random, DesignConfig::Kind::p_greedy}) {
    out << "  " << design_kind_name(k) << "\n";
  }
  out << "noise:\n  none\n  gaussian\n  outliers (fixed | power | fraction)\n  student_t\n";
  out << "lambda policies:\n  zero\n  fixed\n  adaptive_h\n";
  out << "acquisitions:\n  expected_improvement\n  ucb\n";
  out << "experiments:\n";
  for (auto k : {ExperimentKind::design, ExperimentKind::interpolate, ExperimentKind::regress, ExperimentKind::rates,
                 ExperimentKind::bq, ExperimentKind::bo}) {
    out << "  " << experiment_kind_name(k) << "\n";
  }
  static const char* titles[] = {"well-specified interpolation rates (L2 and Linf)",
                                 "misspecified smoothness, rough target",
                                 "gaussian regression at the prescribed smoothness",
                                 "gaussian likelihood with fixed outliers",
                                 "adaptive nugget",
                                 "Bayesian quadrature rate and Holder chain",
                                 "gamma-stabilized Bayesian optimization",
                                 "exact identity suite",
                                 "noise growth calibration",
                                 "determinism of the acceptance artifacts"};
  out << "acceptance:\n";
  for (std::size_t i = 0; i < acceptance_ids().size(); ++i) out << "  " << acceptance_ids()[i] << "  " << titles[i] << "\n";
  return out.str();
}

}  // namespace gprates
