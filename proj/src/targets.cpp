#include "gprates/targets.hpp"

#include "gprates/parallel.hpp"
#include "gprates/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gprates {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double coordinate_mean(const Eigen::Ref<const Vector>& x) { return x.mean(); }

}  // namespace

TargetSpec TargetSpec::expansion(const KernelSpec& kernel, Matrix centers, Vector alpha, Domain domain) {
  if (centers.rows() != alpha.size()) throw ConfigError("target: centers and alpha lengths differ");
  if (kernel.dim() != domain.dim() || (centers.rows() > 0 && centers.cols() != domain.dim())) {
    throw ConfigError("target: kernel, centers and domain dimensions differ");
  }
  TargetSpec t(Kind::rkhs_expansion, "rkhs_expansion", kernel.tau(), std::move(domain));
  t.kernel_ = kernel;
  t.centers_ = std::move(centers);
  t.alpha_ = std::move(alpha);
  return t;
}

TargetSpec TargetSpec::named(std::string id, double tau_f, Domain domain,
                             std::function<double(const Eigen::Ref<const Vector>&)> fn) {
  if (!(tau_f > 0.5 * domain.dim())) throw ConfigError("target: tau_f must exceed dim/2");
  TargetSpec t(Kind::named, std::move(id), tau_f, std::move(domain));
  t.fn_ = std::move(fn);
  return t;
}

double TargetSpec::operator()(const Eigen::Ref<const Vector>& x) const {
  if (kind_ == Kind::named) return fn_(x);
  if (alpha_.size() == 0) return 0.0;
  return cross_vector(*kernel_, x, centers_).dot(alpha_);
}

Vector TargetSpec::evaluate(const Matrix& X) const {
  if (kind_ == Kind::rkhs_expansion) {
    if (alpha_.size() == 0) return Vector::Zero(X.rows());
    return cross_matrix(*kernel_, X, centers_) * alpha_;
  }
  Vector out(X.rows());
  parallel_for(static_cast<std::size_t>(X.rows()), [&](std::size_t b, std::size_t e) {
    for (auto i = static_cast<Eigen::Index>(b); i < static_cast<Eigen::Index>(e); ++i) out[i] = fn_(X.row(i).transpose());
  });
  return out;
}

double eval_target(const TargetSpec& t, const Eigen::Ref<const Vector>& x) { return t(x); }

TargetSpec make_expansion_target(const KernelSpec& kernel, const Domain& domain, int num_centers,
                                 std::uint64_t seed) {
  if (num_centers < 1) throw ConfigError("target: num_centers must be >= 1");
  Rng rng(seed);
  Matrix centers(num_centers, domain.dim());
  for (int i = 0; i < num_centers; ++i) {
    for (int j = 0; j < domain.dim(); ++j) {
      centers(i, j) = domain.lower()[j] + rng.uniform() * (domain.upper()[j] - domain.lower()[j]);
    }
  }
  Vector alpha(num_centers);
  for (int i = 0; i < num_centers; ++i) alpha[i] = rng.normal();
  return TargetSpec::expansion(kernel, std::move(centers), std::move(alpha), domain);
}

const std::vector<RegistryEntry>& target_registry() {
  static const std::vector<RegistryEntry> entries = {
      {"lacunary", "tau_f (parameter)",
       "sum_{k<terms} 2^{-k tau_f} cos(2 pi 2^k u + 0.7 k), u = mean coordinate; in W^{t} for t < tau_f only"},
      {"kink", "tau_f (parameter)",
       "|t - c|^{tau_f - d/2} prod_i sin(pi t_i)^4, t = x rescaled to the unit cube, c_i = 1/pi; one point "
       "singularity, in W^{t} for t < tau_f only"},
      {"bump", "infinite", "exp(-|x - c|^2 / (2 * 0.1^2)), c = domain centre, peak value 1 at c"},
      {"gramacy_lee", "infinite",
       "1-d only: -(sin(10 pi (0.5 + 2x)) / (2 (0.5 + 2x)) + (2x - 0.5)^4) on (0,1); smooth multimodal"},
      {"sine", "infinite", "sin(2 pi u), u = mean coordinate"},
      {"linear", "infinite", "u = mean coordinate"},
      {"constant", "infinite", "the constant `value`"},
  };
  return entries;
}

TargetSpec make_named_target(const std::string& id, const Domain& domain, const NamedTargetParams& params) {
  if (id == "lacunary") {
    if (!(params.tau_f > 0.5 * domain.dim())) throw ConfigError("target.tau_f must exceed dim/2");
    if (params.terms < 1 || params.terms > 40) throw ConfigError("target.terms must be in [1, 40]");
    const double tau_f = params.tau_f;
    const int terms = params.terms;
    return TargetSpec::named(id, tau_f, domain, [tau_f, terms](const Eigen::Ref<const Vector>& x) {
      const double u = coordinate_mean(x);
      double s = 0.0;
      for (int k = 0; k < terms; ++k) {
        const double freq = std::ldexp(1.0, k);
        s += std::pow(freq, -tau_f) * std::cos(2.0 * std::numbers::pi * freq * u + 0.7 * k);
      }
      return s;
    });
  }
  if (id == "kink") {
    if (!(params.tau_f > 0.5 * domain.dim())) throw ConfigError("target.tau_f must exceed dim/2");
    const double power = params.tau_f - 0.5 * domain.dim();
    const Vector lower = domain.lower();
    const Vector width = domain.width();
    return TargetSpec::named(id, params.tau_f, domain, [power, lower, width](const Eigen::Ref<const Vector>& x) {
      const Vector t = (x - lower).cwiseQuotient(width);
      // The window vanishes to fourth order on the boundary, so only the singularity limits the rate.
      double window = 1.0;
      for (Eigen::Index i = 0; i < t.size(); ++i) window *= std::pow(std::sin(std::numbers::pi * t[i]), 4);
      const double r = (t.array() - std::numbers::inv_pi).matrix().norm();
      return std::pow(r, power) * window;
    });
  }
  if (id == "bump") {
    const Vector centre = 0.5 * (domain.lower() + domain.upper());
    return TargetSpec::named(id, kInf, domain, [centre](const Eigen::Ref<const Vector>& x) {
      return std::exp(-(x - centre).squaredNorm() / (2.0 * 0.01));
    });
  }
  if (id == "gramacy_lee") {
    if (domain.dim() != 1) throw ConfigError("target gramacy_lee is defined for dim = 1 only");
    return TargetSpec::named(id, kInf, domain, [](const Eigen::Ref<const Vector>& x) {
      const double t = 0.5 + 2.0 * x[0];
      return -(std::sin(10.0 * std::numbers::pi * t) / (2.0 * t) + std::pow(2.0 * x[0] - 0.5, 4));
    });
  }
  if (id == "sine") {
    return TargetSpec::named(id, kInf, domain, [](const Eigen::Ref<const Vector>& x) {
      return std::sin(2.0 * std::numbers::pi * coordinate_mean(x));
    });
  }
  if (id == "linear") {
    return TargetSpec::named(id, kInf, domain, [](const Eigen::Ref<const Vector>& x) { return coordinate_mean(x); });
  }
  if (id == "constant") {
    const double c = params.value;
    return TargetSpec::named(id, kInf, domain, [c](const Eigen::Ref<const Vector>&) { return c; });
  }
  throw ConfigError("target.id: unknown target '" + id + "'");
}

int outlier_count(const OutlierSchedule& schedule, int n) {
  double raw = 0.0;
  switch (schedule.kind) {
    case OutlierSchedule::Kind::fixed: raw = schedule.count; break;
    case OutlierSchedule::Kind::power: raw = std::floor(std::pow(static_cast<double>(n), schedule.alpha)); break;
    case OutlierSchedule::Kind::fraction: raw = std::floor(schedule.beta * n); break;
  }
  return static_cast<int>(std::clamp(raw, 0.0, static_cast<double>(n)));
}

NoiseModel NoiseModel::none() { return NoiseModel{}; }

NoiseModel NoiseModel::gaussian(double sigma, std::uint64_t seed) {
  NoiseModel m;
  m.kind = Kind::gaussian;
  m.sigma = sigma;
  m.seed = seed;
  m.validate();
  return m;
}

NoiseModel NoiseModel::outliers(OutlierSchedule schedule, double magnitude, std::uint64_t seed) {
  NoiseModel m;
  m.kind = Kind::outliers;
  m.schedule = schedule;
  m.magnitude = magnitude;
  m.seed = seed;
  m.validate();
  return m;
}

NoiseModel NoiseModel::student_t(double df, double scale, std::uint64_t seed) {
  NoiseModel m;
  m.kind = Kind::student_t;
  m.df = df;
  m.scale = scale;
  m.seed = seed;
  m.validate();
  return m;
}

NoiseModel NoiseModel::with_seed(std::uint64_t s) const {
  NoiseModel m = *this;
  m.seed = s;
  return m;
}

void NoiseModel::validate() const {
  switch (kind) {
    case Kind::none: return;
    case Kind::gaussian:
      if (!(sigma > 0.0)) throw ConfigError("noise.sigma must be > 0");
      return;
    case Kind::outliers:
      if (!(magnitude >= 0.0)) throw ConfigError("noise.magnitude must be >= 0");
      switch (schedule.kind) {
        case OutlierSchedule::Kind::fixed:
          if (schedule.count < 0) throw ConfigError("noise.schedule.count must be >= 0");
          break;
        case OutlierSchedule::Kind::power:
          if (!(schedule.alpha > 0.0 && schedule.alpha < 1.0)) throw ConfigError("noise.schedule.alpha must be in (0, 1)");
          break;
        case OutlierSchedule::Kind::fraction:
          if (!(schedule.beta > 0.0 && schedule.beta <= 1.0)) throw ConfigError("noise.schedule.beta must be in (0, 1]");
          break;
      }
      return;
    case Kind::student_t:
      if (!(df > 0.0)) throw ConfigError("noise.df must be > 0");
      if (!(scale > 0.0)) throw ConfigError("noise.scale must be > 0");
      return;
  }
}

std::string NoiseModel::describe() const {
  std::ostringstream s;
  switch (kind) {
    case Kind::none: s << "none"; break;
    case Kind::gaussian: s << "gaussian(sigma=" << sigma << ")"; break;
    case Kind::student_t: s << "student_t(df=" << df << ", scale=" << scale << ")"; break;
    case Kind::outliers:
      s << "outliers(";
      switch (schedule.kind) {
        case OutlierSchedule::Kind::fixed: s << "fixed k=" << schedule.count; break;
        case OutlierSchedule::Kind::power: s << "power alpha=" << schedule.alpha; break;
        case OutlierSchedule::Kind::fraction: s << "fraction beta=" << schedule.beta; break;
      }
      s << ", magnitude=" << magnitude << ")";
      break;
  }
  return s.str();
}

Vector draw_noise(const NoiseModel& noise, int n) {
  noise.validate();
  Vector eps = Vector::Zero(n);
  Rng rng(noise.seed);
  switch (noise.kind) {
    case NoiseModel::Kind::none: break;
    case NoiseModel::Kind::gaussian:
      for (int i = 0; i < n; ++i) eps[i] = noise.sigma * rng.normal();
      break;
    case NoiseModel::Kind::student_t:
      for (int i = 0; i < n; ++i) eps[i] = noise.scale * rng.student_t(noise.df);
      break;
    case NoiseModel::Kind::outliers: {
      const int k = outlier_count(noise.schedule, n);
      std::vector<int> order(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
      // partial Fisher-Yates: the first k entries are a uniform draw without replacement
      for (int i = 0; i < k; ++i) {
        const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
        const double sign = rng.below(2) == 0 ? -1.0 : 1.0;
        eps[order[static_cast<std::size_t>(i)]] = sign * noise.magnitude;
      }
      break;
    }
  }
  return eps;
}

Corrupted corrupt(const TargetSpec& t, const PointSet& X, const NoiseModel& noise) {
  Corrupted out;
  out.eps = draw_noise(noise, X.size());
  out.y = t.evaluate(X.points()) + out.eps;
  return out;
}

std::optional<double> expected_noise_growth(const NoiseModel& noise) {
  switch (noise.kind) {
    case NoiseModel::Kind::none: return std::nullopt;
    case NoiseModel::Kind::gaussian: return 0.5;
    case NoiseModel::Kind::student_t:
      if (noise.df <= 2.0) {
        throw ConfigError("noise.df <= 2: student_t noise has infinite second moment, so the error bounds are vacuous");
      }
      return 0.5;
    case NoiseModel::Kind::outliers:
      switch (noise.schedule.kind) {
        case OutlierSchedule::Kind::fixed: return 0.0;
        case OutlierSchedule::Kind::power: return 0.5 * noise.schedule.alpha;
        case OutlierSchedule::Kind::fraction: return 0.5;
      }
  }
  return std::nullopt;
}

NoiseGrowthFit empirical_noise_growth(const NoiseModel& noise, const std::vector<int>& ns, int seeds) {
  if (seeds < 1) throw ConfigError("empirical_noise_growth: seeds must be >= 1");
  NoiseGrowthFit out;
  std::vector<double> log_n, log_norm;
  for (int n : ns) {
    std::vector<double> norms(static_cast<std::size_t>(seeds));
    for (int s = 0; s < seeds; ++s) {
      const auto seed = derive_seed(noise.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)});
      norms[static_cast<std::size_t>(s)] = draw_noise(noise.with_seed(seed), n).norm();
    }
    const double m = mean(norms);
    out.n.push_back(n);
    out.mean_norm.push_back(m);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_norm.push_back(std::log(m));
  }
  out.fit = fit_line(log_n, log_norm);
  return out;
}

}  // namespace gprates
