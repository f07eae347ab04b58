#include "gprates/config.hpp"

#include "gprates/csv.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gprates {

namespace {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

// Typed access to one JSON object. Every key looked up is remembered so that finish()
// can reject the keys nobody asked for.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  std::string where(const std::string& key = "") const {
    if (key.empty()) return path_.empty() ? "config" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigError(where(key) + ": " + message);
  }

  bool has(const std::string& key) {
    known_.insert(key);
    return j_.contains(key);
  }

  const Json& need(const std::string& key) {
    if (!has(key)) fail(key, "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) {
    const Json& v = need(key);
    if (!v.is_number()) fail(key, "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  int integer(const std::string& key) {
    const Json& v = need(key);
    if (!v.is_number() || v.get<double>() != std::floor(v.get<double>())) {
      fail(key, "expected an integer, got " + v.dump());
    }
    return v.get<int>();
  }
  int integer(const std::string& key, int fallback) { return has(key) ? integer(key) : fallback; }

  std::uint64_t seed(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer, got " + v.dump());
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false, got " + v.dump());
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const Json& v = need(key);
    if (!v.is_string()) fail(key, "expected a string, got " + v.dump());
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) { return has(key) ? string(key) : fallback; }

  std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_array()) fail(key, "expected an array of integers");
    std::vector<int> out;
    for (const Json& e : v) {
      if (!e.is_number_integer()) fail(key, "expected an array of integers, found " + e.dump());
      out.push_back(e.get<int>());
    }
    return out;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const Json& e : v) {
      if (!e.is_number()) fail(key, "expected an array of numbers, found " + e.dump());
      out.push_back(e.get<double>());
    }
    return out;
  }

  Reader object(const std::string& key) { return Reader(need(key), where(key)); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (known_.count(it.key())) continue;
      std::string expected;
      for (const std::string& k : known_) expected += (expected.empty() ? "" : ", ") + k;
      fail(it.key(), "unknown key (expected one of: " + expected + ")");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> known_;
};

// Turns a ConfigError thrown by a module validator into one that names the section.
template <class F>
void validate_section(const std::string& section, F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    throw ConfigError(section + ": " + e.what());
  }
}

KernelConfig parse_kernel(Reader r) {
  KernelConfig k;
  k.tau = r.number("tau");
  k.lengthscale = r.number("lengthscale", k.lengthscale);
  k.amplitude = r.number("amplitude", k.amplitude);
  k.tau_schedule = r.numbers("tau_schedule", {});
  r.finish();
  return k;
}

TargetConfig parse_target(Reader r, const std::string& default_id) {
  TargetConfig t;
  t.id = default_id;
  const std::string kind = r.string("kind", "named");
  if (kind == "named") {
    t.kind = TargetConfig::Kind::named;
    t.id = r.string("id", t.id);
    t.params.tau_f = r.number("tau_f", t.params.tau_f);
    t.params.terms = r.integer("terms", t.params.terms);
    t.params.value = r.number("value", t.params.value);
  } else if (kind == "expansion") {
    t.kind = TargetConfig::Kind::expansion;
    t.tau_f = r.number("tau_f");
    t.lengthscale = r.number("lengthscale", t.lengthscale);
    t.amplitude = r.number("amplitude", t.amplitude);
    t.num_centers = r.integer("num_centers", t.num_centers);
  } else {
    r.fail("kind", "unknown target kind '" + kind + "' (expected named or expansion)");
  }
  r.finish();
  return t;
}

DesignConfig parse_design(Reader r) {
  DesignConfig d;
  const std::string kind = r.string("kind", design_kind_name(d.kind));
  if (kind == "grid") {
    d.kind = DesignConfig::Kind::grid;
  } else if (kind == "uniform_random") {
    d.kind = DesignConfig::Kind::uniform_random;
  } else if (kind == "p_greedy") {
    d.kind = DesignConfig::Kind::p_greedy;
    d.candidate_resolution = r.integer("candidate_resolution", 0);
  } else {
    r.fail("kind", "unknown design kind '" + kind + "' (expected grid, uniform_random or p_greedy)");
  }
  d.probe_resolution = r.integer("probe_resolution", 0);
  r.finish();
  return d;
}

NoiseModel parse_noise(Reader r) {
  NoiseModel n;
  const std::string kind = r.string("kind");
  if (kind == "none") {
    n.kind = NoiseModel::Kind::none;
  } else if (kind == "gaussian") {
    n.kind = NoiseModel::Kind::gaussian;
    n.sigma = r.number("sigma");
  } else if (kind == "outliers") {
    n.kind = NoiseModel::Kind::outliers;
    n.magnitude = r.number("magnitude", n.magnitude);
    Reader s = r.object("schedule");
    const std::string sk = s.string("kind");
    if (sk == "fixed") {
      n.schedule.kind = OutlierSchedule::Kind::fixed;
      n.schedule.count = s.integer("count");
    } else if (sk == "power") {
      n.schedule.kind = OutlierSchedule::Kind::power;
      n.schedule.alpha = s.number("alpha");
    } else if (sk == "fraction") {
      n.schedule.kind = OutlierSchedule::Kind::fraction;
      n.schedule.beta = s.number("beta");
    } else {
      s.fail("kind", "unknown outlier schedule '" + sk + "' (expected fixed, power or fraction)");
    }
    s.finish();
  } else if (kind == "student_t") {
    n.kind = NoiseModel::Kind::student_t;
    n.df = r.number("df");
    n.scale = r.number("scale", n.scale);
  } else {
    r.fail("kind", "unknown noise kind '" + kind + "' (expected none, gaussian, outliers or student_t)");
  }
  r.finish();
  return n;
}

NuggetPolicy parse_lambda(Reader r) {
  const std::string kind = r.string("kind");
  NuggetPolicy p;
  if (kind == "zero") {
    p = NuggetPolicy::zero();
  } else if (kind == "fixed") {
    p = NuggetPolicy::fixed(r.number("sigma"));
  } else if (kind == "adaptive_h") {
    const double exponent = r.number("exponent");
    p = NuggetPolicy::adaptive_h(exponent, r.number("scale", 1.0));
  } else {
    r.fail("kind", "unknown lambda policy '" + kind + "' (expected zero, fixed or adaptive_h)");
  }
  r.finish();
  return p;
}

double parse_norm(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && (v == "inf" || v == "Linf" || v == "infinity")) return kInfinity;
  throw ConfigError(where + ": expected 1, 2 or \"inf\", got " + v.dump());
}

std::vector<NormGate> parse_gates(Reader& r, const std::string& key) {
  const Json& v = r.need(key);
  if (!v.is_array()) r.fail(key, "expected an array of {q, tolerance} objects");
  std::vector<NormGate> gates;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Reader g(v[i], r.where(key) + "[" + std::to_string(i) + "]");
    NormGate gate;
    gate.q = parse_norm(g.need("q"), g.where("q"));
    gate.tolerance = g.number("tolerance", gate.tolerance);
    g.finish();
    gates.push_back(gate);
  }
  return gates;
}

Acquisition parse_acquisition(Reader r) {
  const std::string kind = r.string("kind");
  Acquisition a;
  if (kind == "expected_improvement") {
    a = Acquisition::expected_improvement();
  } else if (kind == "ucb") {
    a = Acquisition::ucb(r.number("beta"));
  } else {
    r.fail("kind", "unknown acquisition '" + kind + "' (expected expected_improvement or ucb)");
  }
  r.finish();
  return a;
}

DesignRunConfig parse_design_run(Reader& r) {
  DesignRunConfig c;
  c.dim = r.integer("dim", c.dim);
  c.n = r.integer("n", c.n);
  if (r.has("design")) c.design = parse_design(r.object("design"));
  if (r.has("kernel")) c.kernel = parse_kernel(r.object("kernel"));
  return c;
}

FitRunConfig parse_fit_run(Reader& r, bool regression) {
  FitRunConfig c;
  c.dim = r.integer("dim", c.dim);
  c.n = r.integer("n", c.n);
  if (r.has("target")) c.target = parse_target(r.object("target"), c.target.id);
  c.kernel = parse_kernel(r.object("kernel"));
  if (r.has("design")) c.design = parse_design(r.object("design"));
  if (regression) {
    if (r.has("noise")) c.noise = parse_noise(r.object("noise"));
    c.lambda = parse_lambda(r.object("lambda"));
  }
  c.prior_mean = r.number("prior_mean", c.prior_mean);
  c.eval_resolution = r.integer("eval_resolution", c.eval_resolution);
  return c;
}

RateExperimentConfig parse_rates(Reader& r) {
  RateExperimentConfig c;
  c.dim = r.integer("dim", c.dim);
  if (r.has("target")) c.target = parse_target(r.object("target"), c.target.id);
  c.kernel = parse_kernel(r.object("kernel"));
  if (r.has("design")) c.design = parse_design(r.object("design"));
  if (r.has("noise")) c.noise = parse_noise(r.object("noise"));
  if (r.has("lambda")) c.lambda = parse_lambda(r.object("lambda"));
  c.prior_mean = r.number("prior_mean", c.prior_mean);
  if (r.has("theory")) {
    try {
      c.theory = theory_from_name(r.string("theory"));
    } catch (const ConfigError& e) {
      r.fail("theory", e.what());
    }
  }
  if (r.has("gates")) c.gates = parse_gates(r, "gates");
  c.ladder = r.integers("ladder", c.ladder);
  c.burn_in = r.integer("burn_in", c.burn_in);
  c.replicates = r.integer("replicates", c.replicates);
  c.eval_resolution = r.integer("eval_resolution", c.eval_resolution);
  c.s = r.number("s", c.s);
  c.check_resolution = r.boolean("check_resolution", c.check_resolution);
  return c;
}

BqExperimentConfig parse_bq(Reader& r) {
  BqExperimentConfig c;
  c.dim = r.integer("dim", c.dim);
  if (r.has("target")) c.target = parse_target(r.object("target"), c.target.id);
  c.kernel = parse_kernel(r.object("kernel"));
  if (r.has("design")) c.design = parse_design(r.object("design"));
  if (r.has("noise")) c.noise = parse_noise(r.object("noise"));
  if (r.has("lambda")) c.lambda = parse_lambda(r.object("lambda"));
  c.density = r.string("density", c.density);
  c.prior_mean = r.number("prior_mean", c.prior_mean);
  c.ladder = r.integers("ladder", c.ladder);
  c.burn_in = r.integer("burn_in", c.burn_in);
  c.replicates = r.integer("replicates", c.replicates);
  c.eval_resolution = r.integer("eval_resolution", c.eval_resolution);
  c.tolerance = r.number("tolerance", c.tolerance);
  return c;
}

BoRunConfig parse_bo(Reader& r) {
  BoRunConfig c;
  c.dim = r.integer("dim", c.dim);
  c.target.id = "gramacy_lee";
  if (r.has("target")) c.target = parse_target(r.object("target"), c.target.id);
  KernelConfig k{c.bo.kernel.tau(), c.bo.kernel.lengthscale(), c.bo.kernel.amplitude(), {}};
  if (r.has("kernel")) k = parse_kernel(r.object("kernel"));
  if (!k.tau_schedule.empty()) r.fail("kernel.tau_schedule", "not supported for bo (the kernel is fixed)");
  validate_section("kernel", [&] { c.bo.kernel = KernelSpec(k.tau, k.lengthscale, k.amplitude, c.dim); });
  c.bo.gamma = r.number("gamma", c.bo.gamma);
  if (r.has("acquisition")) c.bo.acquisition = parse_acquisition(r.object("acquisition"));
  c.budgets = r.integers("budgets", c.budgets);
  c.candidate_resolution = r.integer("candidate_resolution", c.candidate_resolution);
  c.mesh_ratio_cap = r.number("mesh_ratio_cap", c.mesh_ratio_cap);
  c.regret_cap = r.number("regret_cap", c.regret_cap);
  return c;
}

OJson kernel_json(const KernelConfig& k) {
  OJson j{{"tau", k.tau}, {"lengthscale", k.lengthscale}, {"amplitude", k.amplitude}};
  if (!k.tau_schedule.empty()) j["tau_schedule"] = k.tau_schedule;
  return j;
}

OJson target_json(const TargetConfig& t) {
  if (t.kind == TargetConfig::Kind::expansion) {
    return {{"kind", "expansion"},
            {"tau_f", t.tau_f},
            {"lengthscale", t.lengthscale},
            {"amplitude", t.amplitude},
            {"num_centers", t.num_centers}};
  }
  return {{"kind", "named"},
          {"id", t.id},
          {"tau_f", t.params.tau_f},
          {"terms", t.params.terms},
          {"value", t.params.value}};
}

OJson design_json(const DesignConfig& d) {
  OJson j{{"kind", design_kind_name(d.kind)}};
  if (d.kind == DesignConfig::Kind::p_greedy) j["candidate_resolution"] = d.candidate_resolution;
  j["probe_resolution"] = d.probe_resolution;
  return j;
}

OJson noise_json(const NoiseModel& n) {
  switch (n.kind) {
    case NoiseModel::Kind::none: return {{"kind", "none"}};
    case NoiseModel::Kind::gaussian: return {{"kind", "gaussian"}, {"sigma", n.sigma}};
    case NoiseModel::Kind::student_t: return {{"kind", "student_t"}, {"df", n.df}, {"scale", n.scale}};
    case NoiseModel::Kind::outliers: {
      OJson s;
      switch (n.schedule.kind) {
        case OutlierSchedule::Kind::fixed: s = {{"kind", "fixed"}, {"count", n.schedule.count}}; break;
        case OutlierSchedule::Kind::power: s = {{"kind", "power"}, {"alpha", n.schedule.alpha}}; break;
        case OutlierSchedule::Kind::fraction: s = {{"kind", "fraction"}, {"beta", n.schedule.beta}}; break;
      }
      return {{"kind", "outliers"}, {"magnitude", n.magnitude}, {"schedule", s}};
    }
  }
  return {};
}

OJson lambda_json(const NuggetPolicy& p) {
  switch (p.kind) {
    case NuggetPolicy::Kind::zero: return {{"kind", "zero"}};
    case NuggetPolicy::Kind::fixed: return {{"kind", "fixed"}, {"sigma", p.sigma}};
    case NuggetPolicy::Kind::adaptive_h: return {{"kind", "adaptive_h"}, {"exponent", p.exponent}, {"scale", p.scale}};
  }
  return {};
}

OJson norm_json(double q) { return std::isinf(q) ? OJson("inf") : OJson(q); }

}  // namespace

const char* experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::design: return "design";
    case ExperimentKind::interpolate: return "interpolate";
    case ExperimentKind::regress: return "regress";
    case ExperimentKind::rates: return "rates";
    case ExperimentKind::bq: return "bq";
    case ExperimentKind::bo: return "bo";
  }
  return "?";
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::design, ExperimentKind::interpolate, ExperimentKind::regress,
                           ExperimentKind::rates, ExperimentKind::bq, ExperimentKind::bo}) {
    if (name == experiment_kind_name(k)) return k;
  }
  throw ConfigError("unknown experiment '" + name + "' (expected design, interpolate, regress, rates, bq or bo)");
}

void DesignRunConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (n < 1) throw ConfigError("n must be >= 1");
  (void)kernel.at(0, dim);
  if (design.kind == DesignConfig::Kind::grid) {
    const int side = static_cast<int>(std::lround(std::pow(n, 1.0 / dim)));
    if (static_cast<int>(std::lround(std::pow(side, dim))) != n) {
      throw ConfigError("n = " + std::to_string(n) + " is not a perfect " + std::to_string(dim) +
                        "-th power, as a grid design needs");
    }
  }
}

void FitRunConfig::validate(bool regression) const {
  RateExperimentConfig shared;
  shared.dim = dim;
  shared.target = target;
  shared.kernel = kernel;
  shared.design = design;
  shared.noise = noise;
  shared.lambda = lambda;
  shared.eval_resolution = eval_resolution;
  shared.theory = Theory::misspec_interpolation;  // the theory is not used for single fits
  shared.validate();
  if (!kernel.tau_schedule.empty()) throw ConfigError("kernel.tau_schedule is only meaningful for ladders");
  if (n < 1) throw ConfigError("n must be >= 1");
  if (regression && lambda.kind == NuggetPolicy::Kind::zero) {
    throw ConfigError("lambda.kind must be fixed or adaptive_h for regress (use interpolate for lambda = 0)");
  }
  DesignRunConfig d{dim, n, design, kernel, seed};
  d.validate();
}

BOConfig BoRunConfig::resolved() const {
  BOConfig c = bo;
  const Domain unit = Domain::unit_cube(dim);
  c.candidates = candidate_resolution > 0 ? gen_grid(candidate_resolution, unit) : default_candidates(unit);
  c.n = budgets.empty() ? c.n : budgets.back();
  c.seed = seed;
  return c;
}

void BoRunConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (bo.kernel.dim() != dim) throw ConfigError("kernel dimension must equal dim");
  if (target.kind != TargetConfig::Kind::named && target.kind != TargetConfig::Kind::expansion) {
    throw ConfigError("target.kind must be named or expansion");
  }
  if (candidate_resolution < 0) throw ConfigError("candidate_resolution must be >= 0");
  if (budgets.empty()) throw ConfigError("budgets must not be empty");
  for (std::size_t i = 1; i < budgets.size(); ++i) {
    if (budgets[i] <= budgets[i - 1]) throw ConfigError("budgets must be strictly increasing");
  }
  if (!(mesh_ratio_cap > 1.0)) throw ConfigError("mesh_ratio_cap must be > 1");
  if (!(regret_cap > 0.0)) throw ConfigError("regret_cap must be > 0");
  const BOConfig c = resolved();
  for (int n : budgets) {
    BOConfig one = c;
    one.n = n;
    validate_section("budgets", [&] { one.validate(); });
  }
  (void)build_target(target, Domain::unit_cube(dim), 0);
}

std::uint64_t ExperimentConfig::seed() const {
  return std::visit([](const auto& b) { return b.seed; }, body);
}

void ExperimentConfig::set_seed(std::uint64_t s) {
  std::visit([s](auto& b) { b.seed = s; }, body);
}

void ExperimentConfig::validate() const {
  switch (kind) {
    case ExperimentKind::design: std::get<DesignRunConfig>(body).validate(); break;
    case ExperimentKind::interpolate: std::get<FitRunConfig>(body).validate(false); break;
    case ExperimentKind::regress: std::get<FitRunConfig>(body).validate(true); break;
    case ExperimentKind::rates: std::get<RateExperimentConfig>(body).validate(); break;
    case ExperimentKind::bq: std::get<BqExperimentConfig>(body).validate(); break;
    case ExperimentKind::bo: std::get<BoRunConfig>(body).validate(); break;
  }
  if (id.empty() || id.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("id must be a non-empty file name prefix without path separators");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  Reader r(j, "");
  ExperimentConfig c;
  const std::string kind = r.string("experiment");
  try {
    c.kind = experiment_kind_from_name(kind);
  } catch (const ConfigError& e) {
    r.fail("experiment", e.what());
  }
  c.id = r.string("id", experiment_kind_name(c.kind));
  switch (c.kind) {
    case ExperimentKind::design: c.body = parse_design_run(r); break;
    case ExperimentKind::interpolate: c.body = parse_fit_run(r, false); break;
    case ExperimentKind::regress: c.body = parse_fit_run(r, true); break;
    case ExperimentKind::rates: {
      RateExperimentConfig rc = parse_rates(r);
      rc.id = c.id;
      c.body = rc;
      break;
    }
    case ExperimentKind::bq: {
      BqExperimentConfig bc = parse_bq(r);
      bc.id = c.id;
      c.body = bc;
      break;
    }
    case ExperimentKind::bo: c.body = parse_bo(r); break;
  }
  c.set_seed(r.seed("seed", 0));
  r.finish();
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const ExperimentConfig& config) {
  OJson j;
  j["experiment"] = experiment_kind_name(config.kind);
  j["id"] = config.id;
  j["seed"] = config.seed();
  switch (config.kind) {
    case ExperimentKind::design: {
      const auto& c = std::get<DesignRunConfig>(config.body);
      j["dim"] = c.dim;
      j["n"] = c.n;
      j["design"] = design_json(c.design);
      j["kernel"] = kernel_json(c.kernel);
      break;
    }
    case ExperimentKind::interpolate:
    case ExperimentKind::regress: {
      const auto& c = std::get<FitRunConfig>(config.body);
      j["dim"] = c.dim;
      j["n"] = c.n;
      j["target"] = target_json(c.target);
      j["kernel"] = kernel_json(c.kernel);
      j["design"] = design_json(c.design);
      if (config.kind == ExperimentKind::regress) {
        j["noise"] = noise_json(c.noise);
        j["lambda"] = lambda_json(c.lambda);
      }
      j["prior_mean"] = c.prior_mean;
      j["eval_resolution"] = c.eval_resolution;
      break;
    }
    case ExperimentKind::rates: {
      const auto& c = std::get<RateExperimentConfig>(config.body);
      j["dim"] = c.dim;
      j["target"] = target_json(c.target);
      j["kernel"] = kernel_json(c.kernel);
      j["design"] = design_json(c.design);
      j["noise"] = noise_json(c.noise);
      j["lambda"] = lambda_json(c.lambda);
      j["prior_mean"] = c.prior_mean;
      j["theory"] = theory_name(c.theory);
      auto& gates = j["gates"] = OJson::array();
      for (const NormGate& g : c.gates) gates.push_back({{"q", norm_json(g.q)}, {"tolerance", g.tolerance}});
      j["ladder"] = c.ladder;
      j["burn_in"] = c.burn_in;
      j["replicates"] = c.replicates;
      j["eval_resolution"] = c.eval_resolution;
      j["s"] = c.s;
      j["check_resolution"] = c.check_resolution;
      break;
    }
    case ExperimentKind::bq: {
      const auto& c = std::get<BqExperimentConfig>(config.body);
      j["dim"] = c.dim;
      j["target"] = target_json(c.target);
      j["kernel"] = kernel_json(c.kernel);
      j["design"] = design_json(c.design);
      j["noise"] = noise_json(c.noise);
      j["lambda"] = lambda_json(c.lambda);
      j["density"] = c.density;
      j["prior_mean"] = c.prior_mean;
      j["ladder"] = c.ladder;
      j["burn_in"] = c.burn_in;
      j["replicates"] = c.replicates;
      j["eval_resolution"] = c.eval_resolution;
      j["tolerance"] = c.tolerance;
      break;
    }
    case ExperimentKind::bo: {
      const auto& c = std::get<BoRunConfig>(config.body);
      j["dim"] = c.dim;
      j["target"] = target_json(c.target);
      j["kernel"] = {{"tau", c.bo.kernel.tau()},
                     {"lengthscale", c.bo.kernel.lengthscale()},
                     {"amplitude", c.bo.kernel.amplitude()}};
      j["gamma"] = c.bo.gamma;
      j["acquisition"] = c.bo.acquisition.kind == Acquisition::Kind::ucb
                             ? OJson{{"kind", "ucb"}, {"beta", c.bo.acquisition.beta}}
                             : OJson{{"kind", "expected_improvement"}};
      j["budgets"] = c.budgets;
      j["candidate_resolution"] = c.candidate_resolution;
      j["mesh_ratio_cap"] = c.mesh_ratio_cap;
      j["regret_cap"] = c.regret_cap;
      break;
    }
  }
  return j;
}

}  // namespace gprates
