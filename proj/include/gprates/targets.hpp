#pragma once

#include "gprates/kernel.hpp"
#include "gprates/pointset.hpp"
#include "gprates/stats.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace gprates {

/// Ground-truth function with known Sobolev smoothness tau_f. Infinitely smooth targets
/// report tau_f = +infinity.
class TargetSpec {
 public:
  enum class Kind { rkhs_expansion, named };

  /// f = sum_i alpha_i k(., c_i); tau_f = kernel.tau().
  static TargetSpec expansion(const KernelSpec& kernel, Matrix centers, Vector alpha, Domain domain);
  static TargetSpec named(std::string id, double tau_f, Domain domain,
                          std::function<double(const Eigen::Ref<const Vector>&)> fn);

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  double tau_f() const { return tau_f_; }
  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }

  double operator()(const Eigen::Ref<const Vector>& x) const;
  /// One value per row of X.
  Vector evaluate(const Matrix& X) const;

  /// Present for kernel-expansion targets only.
  const std::optional<KernelSpec>& kernel() const { return kernel_; }
  const Matrix& centers() const { return centers_; }
  const Vector& alpha() const { return alpha_; }

 private:
  TargetSpec(Kind kind, std::string id, double tau_f, Domain domain)
      : kind_(kind), id_(std::move(id)), tau_f_(tau_f), domain_(std::move(domain)) {}

  Kind kind_;
  std::string id_;
  double tau_f_;
  Domain domain_;
  std::function<double(const Eigen::Ref<const Vector>&)> fn_;
  std::optional<KernelSpec> kernel_;
  Matrix centers_;
  Vector alpha_;
};

double eval_target(const TargetSpec& t, const Eigen::Ref<const Vector>& x);

/// Expansion of a Matern kernel with smoothness tau_f: centers uniform in the domain, alpha ~ N(0, 1).
TargetSpec make_expansion_target(const KernelSpec& kernel, const Domain& domain, int num_centers,
                                 std::uint64_t seed);

/// Parameters accepted by registry targets; unused fields are ignored by a given id.
struct NamedTargetParams {
  double tau_f = 2.0;     // lacunary
  int terms = 11;         // lacunary
  double value = 0.0;     // constant
};

struct RegistryEntry {
  std::string id;
  std::string smoothness;
  std::string description;
};

const std::vector<RegistryEntry>& target_registry();

/// Throws ConfigError for unknown ids or ids that do not support the domain dimension.
TargetSpec make_named_target(const std::string& id, const Domain& domain, const NamedTargetParams& params = {});

struct OutlierSchedule {
  enum class Kind { fixed, power, fraction };
  Kind kind = Kind::fixed;
  int count = 0;       // fixed
  double alpha = 0.5;  // power: floor(n^alpha)
  double beta = 0.1;   // fraction: floor(beta n)
};

int outlier_count(const OutlierSchedule& schedule, int n);

struct NoiseModel {
  enum class Kind { none, gaussian, outliers, student_t };
  Kind kind = Kind::none;
  double sigma = 0.0;           // gaussian
  OutlierSchedule schedule;     // outliers
  double magnitude = 1.0;       // outliers
  double df = 3.0;              // student_t
  double scale = 1.0;           // student_t
  std::uint64_t seed = 0;

  static NoiseModel none();
  static NoiseModel gaussian(double sigma, std::uint64_t seed);
  static NoiseModel outliers(OutlierSchedule schedule, double magnitude, std::uint64_t seed);
  static NoiseModel student_t(double df, double scale, std::uint64_t seed);

  bool is_random() const { return kind != Kind::none; }
  NoiseModel with_seed(std::uint64_t s) const;
  void validate() const;
  std::string describe() const;
};

struct Corrupted {
  Vector y;
  Vector eps;
};

/// y = f_X + eps with eps drawn from the noise model's seed.
Corrupted corrupt(const TargetSpec& t, const PointSet& X, const NoiseModel& noise);
Vector draw_noise(const NoiseModel& noise, int n);

/// Exponent g with E|eps|_2 = Theta(n^g); nullopt for noise-free models.
/// Throws ConfigError for student_t with df <= 2 (infinite second moment).
std::optional<double> expected_noise_growth(const NoiseModel& noise);

struct NoiseGrowthFit {
  std::vector<int> n;
  std::vector<double> mean_norm;
  LineFit fit;
};

/// Monte Carlo estimate of E|eps|_2 over `seeds` derived streams per n, regressed on log n.
NoiseGrowthFit empirical_noise_growth(const NoiseModel& noise, const std::vector<int>& ns, int seeds);

}  // namespace gprates
