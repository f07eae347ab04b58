#pragma once

#include "gprates/kernel.hpp"
#include "gprates/pointset.hpp"

#include <Eigen/Cholesky>
#include <functional>
#include <memory>
#include <string>

namespace gprates {

/// Prior mean m(x): a constant, a per-axis quadratic, or a named function.
class MeanSpec {
 public:
  MeanSpec() : MeanSpec(constant(0.0)) {}

  static MeanSpec constant(double c);
  /// c0 + sum_k linear[k] x_k + sum_k quadratic[k] x_k^2
  static MeanSpec polynomial(double c0, Vector linear, Vector quadratic);
  static MeanSpec named(std::string name, std::function<double(const Eigen::Ref<const Vector>&)> fn);

  double operator()(const Eigen::Ref<const Vector>& x) const { return fn_(x); }
  Vector evaluate(const Matrix& X) const;
  const std::string& name() const { return name_; }
  bool is_zero() const { return zero_; }

 private:
  MeanSpec(std::string name, std::function<double(const Eigen::Ref<const Vector>&)> fn, bool zero)
      : name_(std::move(name)), fn_(std::move(fn)), zero_(zero) {}

  std::string name_;
  std::function<double(const Eigen::Ref<const Vector>&)> fn_;
  bool zero_;
};

double default_jitter(const KernelSpec& spec);
double max_jitter(const KernelSpec& spec);

/// Cholesky factor of K + shift*I, escalating the shift tenfold from `first_jitter` up to
/// 1e-6*A whenever the factorization fails. first_jitter = 0 tries the bare matrix first.
struct Factorization {
  Eigen::LLT<Matrix> llt;
  double jitter = 0.0;
  int escalations = 0;
};

Factorization factorize_with_jitter(const Matrix& K, const KernelSpec& spec, const Matrix& points,
                                    double first_jitter);

/// Fitted conditioning state for one design and one observation vector. Immutable.
class PosteriorModel {
 public:
  const KernelSpec& kernel() const { return kernel_; }
  const MeanSpec& prior_mean() const { return *mean_; }
  const PointSet& design() const { return *design_; }
  double lambda() const { return lambda_; }
  /// Diagonal shift added on top of lambda to make the factorization succeed.
  double jitter() const { return factor_->jitter; }
  const Vector& observations() const { return y_; }
  const Vector& dual() const { return dual_; }
  Matrix chol_lower() const { return factor_->llt.matrixL(); }

  double mean(const Eigen::Ref<const Vector>& x) const;
  double variance(const Eigen::Ref<const Vector>& x) const;
  Vector mean_batch(const Matrix& Q) const;
  Vector variance_batch(const Matrix& Q) const;

  /// Same design, kernel and lambda with new observations; reuses the factorization.
  PosteriorModel refit(const Vector& y) const;

  /// Dual weights for several centred observation vectors (one per column) with the shared factor.
  /// For lambda = 0 two refinement steps remove most of the bias introduced by the jitter.
  Matrix solve(const Matrix& rhs) const;

  static constexpr int kRefinementSteps = 2;

 private:
  friend PosteriorModel fit(const KernelSpec&, const MeanSpec&, const PointSet&, const Vector&, double);
  PosteriorModel(KernelSpec kernel, std::shared_ptr<const MeanSpec> mean, std::shared_ptr<const PointSet> design,
                 double lambda, std::shared_ptr<const Factorization> factor, Vector y, Vector mean_at_design);

  KernelSpec kernel_;
  std::shared_ptr<const MeanSpec> mean_;
  std::shared_ptr<const PointSet> design_;
  double lambda_;
  std::shared_ptr<const Factorization> factor_;
  Vector y_;
  Vector mean_at_design_;
  Vector dual_;
};

/// Factorizes K + lambda*I (jitter 1e-10*A added when lambda = 0) and solves for the dual weights.
/// Throws SingularDesignError naming the closest pair when escalation up to 1e-6*A fails.
PosteriorModel fit(const KernelSpec& kernel, const MeanSpec& prior_mean, const PointSet& X, const Vector& y,
                   double lambda);

double posterior_mean(const PosteriorModel& model, const Eigen::Ref<const Vector>& x);
/// Clamped at zero; a negative raw value below -1e-8*A is logged.
double posterior_var(const PosteriorModel& model, const Eigen::Ref<const Vector>& x);

/// sqrt(alpha^T K alpha) for f = sum_i alpha_i k(., c_i).
double rkhs_norm_expansion(const KernelSpec& spec, const Matrix& centers, const Vector& alpha);
double rkhs_norm_expansion(const KernelSpec& spec, const PointSet& centers, const Vector& alpha);

/// sqrt(eps^T K^{-1} eps), the native-space norm of the interpolant of pure noise.
double noise_interpolant_norm(const KernelSpec& spec, const PointSet& X, const Vector& eps);

}  // namespace gprates
