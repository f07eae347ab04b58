#include "gprates/gp_fit.hpp"

#include "gprates/log.hpp"
#include "gprates/parallel.hpp"

#include <cmath>
#include <limits>

namespace gprates {

MeanSpec MeanSpec::constant(double c) {
  return MeanSpec("constant", [c](const Eigen::Ref<const Vector>&) { return c; }, c == 0.0);
}

MeanSpec MeanSpec::polynomial(double c0, Vector linear, Vector quadratic) {
  if (linear.size() != quadratic.size()) throw ConfigError("prior_mean: linear and quadratic sizes differ");
  const bool zero = c0 == 0.0 && linear.isZero(0.0) && quadratic.isZero(0.0);
  return MeanSpec(
      "polynomial",
      [c0, linear = std::move(linear), quadratic = std::move(quadratic)](const Eigen::Ref<const Vector>& x) {
        if (x.size() != linear.size()) throw ConfigError("prior_mean: dimension mismatch");
        return c0 + linear.dot(x) + quadratic.dot(x.cwiseProduct(x));
      },
      zero);
}

MeanSpec MeanSpec::named(std::string name, std::function<double(const Eigen::Ref<const Vector>&)> fn) {
  return MeanSpec(std::move(name), std::move(fn), false);
}

Vector MeanSpec::evaluate(const Matrix& X) const {
  Vector out(X.rows());
  if (zero_) return out.setZero();
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = fn_(X.row(i).transpose());
  return out;
}

double default_jitter(const KernelSpec& spec) { return 1e-10 * spec.amplitude(); }
double max_jitter(const KernelSpec& spec) { return 1e-6 * spec.amplitude(); }

namespace {

std::pair<int, int> closest_pair(const Matrix& points) {
  std::pair<int, int> best{-1, -1};
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      const double d = (points.row(i) - points.row(j)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  return best;
}

bool factor_ok(const Eigen::LLT<Matrix>& llt) {
  if (llt.info() != Eigen::Success) return false;
  const auto diag = llt.matrixLLT().diagonal();
  return (diag.array() > 0.0).all() && diag.allFinite();
}

}  // namespace

Factorization factorize_with_jitter(const Matrix& K, const KernelSpec& spec, const Matrix& points,
                                    double first_jitter) {
  Factorization out;
  double jitter = first_jitter;
  const double cap = max_jitter(spec);
  while (true) {
    Matrix shifted = K;
    if (jitter > 0.0) shifted.diagonal().array() += jitter;
    out.llt.compute(shifted);
    if (factor_ok(out.llt)) {
      out.jitter = jitter;
      if (out.escalations > 0) {
        logger()->info("cholesky succeeded after {} jitter escalation(s), jitter={:.3e}", out.escalations, jitter);
      }
      return out;
    }
    const double next = jitter == 0.0 ? default_jitter(spec) : jitter * 10.0;
    if (next > cap * (1.0 + 1e-12)) break;
    logger()->info("cholesky failed at jitter={:.3e}, escalating to {:.3e}", jitter, next);
    jitter = next;
    ++out.escalations;
  }
  const auto [i, j] = closest_pair(points);
  std::string what = "singular design: Cholesky failed with jitter up to " + std::to_string(cap);
  if (i >= 0) {
    what += "; closest pair is points " + std::to_string(i) + " and " + std::to_string(j) + " at distance " +
            std::to_string((points.row(i) - points.row(j)).norm());
  }
  throw SingularDesignError(what, i, j);
}

PosteriorModel::PosteriorModel(KernelSpec kernel, std::shared_ptr<const MeanSpec> mean,
                               std::shared_ptr<const PointSet> design, double lambda,
                               std::shared_ptr<const Factorization> factor, Vector y, Vector mean_at_design)
    : kernel_(std::move(kernel)),
      mean_(std::move(mean)),
      design_(std::move(design)),
      lambda_(lambda),
      factor_(std::move(factor)),
      y_(std::move(y)),
      mean_at_design_(std::move(mean_at_design)) {
  dual_ = solve(y_ - mean_at_design_);
}

PosteriorModel fit(const KernelSpec& kernel, const MeanSpec& prior_mean, const PointSet& X, const Vector& y,
                   double lambda) {
  if (X.empty()) throw ConfigError("fit: empty design");
  if (y.size() != X.size()) throw ConfigError("fit: observations length does not match design size");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("fit: lambda must be a finite value >= 0");
  GramMatrix K = gram(kernel, X, 0.0);
  if (lambda == 0.0 && K.warning) {
    const auto [i, j] = closest_pair(X.points());
    throw SingularDesignError("singular design: interpolation through coincident points " + std::to_string(i) +
                                  " and " + std::to_string(j),
                              i, j);
  }
  if (lambda > 0.0) K.matrix.diagonal().array() += lambda;
  const double first = lambda == 0.0 ? default_jitter(kernel) : 0.0;
  auto factor = std::make_shared<const Factorization>(factorize_with_jitter(K.matrix, kernel, X.points(), first));
  return PosteriorModel(kernel, std::make_shared<const MeanSpec>(prior_mean), std::make_shared<const PointSet>(X),
                        lambda, std::move(factor), y, prior_mean.evaluate(X.points()));
}

PosteriorModel PosteriorModel::refit(const Vector& y) const {
  if (y.size() != y_.size()) throw ConfigError("refit: observations length does not match design size");
  return PosteriorModel(kernel_, mean_, design_, lambda_, factor_, y, mean_at_design_);
}

Matrix PosteriorModel::solve(const Matrix& rhs) const {
  Matrix w = factor_->llt.solve(rhs);
  if (lambda_ == 0.0 && factor_->jitter > 0.0) {
    // Iterative refinement toward K w = rhs. The factor is of K + jitter*I, so K w = L L^T w - jitter*w.
    const auto L = factor_->llt.matrixL();
    for (int step = 0; step < kRefinementSteps; ++step) {
      const Matrix lt_w = L.transpose() * w;
      const Matrix residual = rhs - (L * lt_w - factor_->jitter * w);
      w += factor_->llt.solve(residual);
    }
  }
  return w;
}

double PosteriorModel::mean(const Eigen::Ref<const Vector>& x) const {
  return (*mean_)(x) + cross_vector(kernel_, x, design_->points()).dot(dual_);
}

double PosteriorModel::variance(const Eigen::Ref<const Vector>& x) const {
  const Vector kx = cross_vector(kernel_, x, design_->points());
  const Vector v = factor_->llt.matrixL().solve(kx);
  const double raw = kernel_.amplitude() - v.squaredNorm();
  if (raw < -1e-8 * kernel_.amplitude()) logger()->warn("posterior variance clamped from {:.3e}", raw);
  return std::max(raw, 0.0);
}

Vector PosteriorModel::mean_batch(const Matrix& Q) const {
  Vector out = cross_matrix(kernel_, Q, design_->points()) * dual_;
  if (!mean_->is_zero()) out += mean_->evaluate(Q);
  return out;
}

Vector PosteriorModel::variance_batch(const Matrix& Q) const {
  const Matrix kxq = cross_matrix(kernel_, Q, design_->points()).transpose();
  const Matrix v = factor_->llt.matrixL().solve(kxq);
  Vector out(Q.rows());
  for (Eigen::Index i = 0; i < Q.rows(); ++i) {
    const double raw = kernel_.amplitude() - v.col(i).squaredNorm();
    if (raw < -1e-8 * kernel_.amplitude()) logger()->warn("posterior variance clamped from {:.3e}", raw);
    out[i] = std::max(raw, 0.0);
  }
  return out;
}

double posterior_mean(const PosteriorModel& model, const Eigen::Ref<const Vector>& x) { return model.mean(x); }

double posterior_var(const PosteriorModel& model, const Eigen::Ref<const Vector>& x) { return model.variance(x); }

double rkhs_norm_expansion(const KernelSpec& spec, const Matrix& centers, const Vector& alpha) {
  if (alpha.size() != centers.rows()) throw ConfigError("rkhs_norm_expansion: alpha length mismatch");
  if (alpha.size() == 0) return 0.0;
  const Matrix K = gram(spec, centers, 0.0).matrix;
  return std::sqrt(std::max(alpha.dot(K * alpha), 0.0));
}

double rkhs_norm_expansion(const KernelSpec& spec, const PointSet& centers, const Vector& alpha) {
  return rkhs_norm_expansion(spec, centers.points(), alpha);
}

double noise_interpolant_norm(const KernelSpec& spec, const PointSet& X, const Vector& eps) {
  if (eps.size() != X.size()) throw ConfigError("noise_interpolant_norm: eps length mismatch");
  if (eps.isZero(0.0)) return 0.0;
  const Matrix K = gram(spec, X, 0.0).matrix;
  const Factorization f = factorize_with_jitter(K, spec, X.points(), 0.0);
  const Vector v = f.llt.matrixL().solve(eps);
  return v.norm();
}

}  // namespace gprates
