#pragma once

#include "gprates/gp_fit.hpp"
#include "gprates/pointset.hpp"
#include "gprates/targets.hpp"

#include <functional>
#include <limits>

namespace gprates {

/// Tensor midpoint grid with equal cell-volume weights.
class EvalGrid {
 public:
  EvalGrid(Domain domain, int resolution);

  const Domain& domain() const { return domain_; }
  int resolution() const { return resolution_; }
  const Matrix& points() const { return points_; }
  double weight() const { return weight_; }
  Eigen::Index size() const { return points_.rows(); }

 private:
  Domain domain_;
  int resolution_;
  Matrix points_;
  double weight_;
};

int default_eval_resolution(int dim);

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// (sum_i w |r_i|^q)^{1/q} for q in {1, 2}, max |r_i| for q = infinity.
double lq_norm(const Vector& residual, double q, const EvalGrid& grid);

struct ErrorNorms {
  double l1;
  double l2;
  double linf;
};

ErrorNorms error_norms(const Vector& residual, const EvalGrid& grid);

/// Mean absolute <= RMS <= max with a relative slack for rounding.
bool norms_ordered(const ErrorNorms& e, const EvalGrid& grid);

double lq_error(const TargetSpec& t, const PosteriorModel& model, double q, const EvalGrid& grid);

/// l2 norm of (f - posterior mean) over the design points.
double residual_norm(const TargetSpec& t, const PosteriorModel& model);

using Density = std::function<double(const Eigen::Ref<const Vector>&)>;

/// Midpoint rule sum_i w g(x_i) p(x_i) with pairwise summation.
double integrate(const std::function<double(const Eigen::Ref<const Vector>&)>& g, const Density& p,
                 const EvalGrid& grid);
/// Same with g and p already evaluated on the grid.
double integrate_values(const Vector& g, const Vector& p, const EvalGrid& grid);

}  // namespace gprates
