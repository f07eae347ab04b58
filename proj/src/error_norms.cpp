#include "gprates/error_norms.hpp"

#include "gprates/stats.hpp"

#include <cmath>

namespace gprates {

EvalGrid::EvalGrid(Domain domain, int resolution) : domain_(std::move(domain)), resolution_(resolution) {
  if (resolution < 1) throw ConfigError("eval grid: resolution must be >= 1");
  const int d = domain_.dim();
  Eigen::Index total = 1;
  for (int k = 0; k < d; ++k) total *= resolution;
  points_.resize(total, d);
  const Vector cell = domain_.width() / resolution;
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rest = idx;
    for (int k = d - 1; k >= 0; --k) {
      points_(idx, k) = domain_.lower()[k] + (static_cast<double>(rest % resolution) + 0.5) * cell[k];
      rest /= resolution;
    }
  }
  weight_ = domain_.volume() / static_cast<double>(total);
}

int default_eval_resolution(int dim) {
  switch (dim) {
    case 1: return 4096;
    case 2: return 256;
    case 3: return 48;
    default: return 16;
  }
}

double lq_norm(const Vector& residual, double q, const EvalGrid& grid) {
  if (residual.size() != grid.size()) throw ConfigError("lq_norm: residual size does not match grid");
  if (std::isinf(q)) return residual.size() ? residual.cwiseAbs().maxCoeff() : 0.0;
  if (q != 1.0 && q != 2.0) throw ConfigError("lq_norm: q must be 1, 2 or infinity");
  std::vector<double> terms(static_cast<std::size_t>(residual.size()));
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    const double a = std::abs(residual[i]);
    terms[static_cast<std::size_t>(i)] = q == 1.0 ? a : a * a;
  }
  const double s = grid.weight() * pairwise_sum(terms);
  return q == 1.0 ? s : std::sqrt(s);
}

ErrorNorms error_norms(const Vector& residual, const EvalGrid& grid) {
  return {lq_norm(residual, 1.0, grid), lq_norm(residual, 2.0, grid), lq_norm(residual, kInfNorm, grid)};
}

bool norms_ordered(const ErrorNorms& e, const EvalGrid& grid) {
  const double vol = grid.domain().volume();
  const double mean_abs = e.l1 / vol;
  const double rms = e.l2 / std::sqrt(vol);
  const double slack = 1e-12;
  return mean_abs <= rms * (1 + slack) && rms <= e.linf * (1 + slack);
}

double lq_error(const TargetSpec& t, const PosteriorModel& model, double q, const EvalGrid& grid) {
  return lq_norm(t.evaluate(grid.points()) - model.mean_batch(grid.points()), q, grid);
}

double residual_norm(const TargetSpec& t, const PosteriorModel& model) {
  const Matrix& X = model.design().points();
  return (t.evaluate(X) - model.mean_batch(X)).norm();
}

double integrate_values(const Vector& g, const Vector& p, const EvalGrid& grid) {
  if (g.size() != grid.size() || p.size() != grid.size()) throw ConfigError("integrate: size mismatch");
  std::vector<double> terms(static_cast<std::size_t>(g.size()));
  for (Eigen::Index i = 0; i < g.size(); ++i) terms[static_cast<std::size_t>(i)] = g[i] * p[i];
  return grid.weight() * pairwise_sum(terms);
}

double integrate(const std::function<double(const Eigen::Ref<const Vector>&)>& g, const Density& p,
                 const EvalGrid& grid) {
  Vector gv(grid.size()), pv(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const Vector x = grid.points().row(i).transpose();
    gv[i] = g(x);
    pv[i] = p(x);
  }
  return integrate_values(gv, pv, grid);
}

}  // namespace gprates
