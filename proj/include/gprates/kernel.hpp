#pragma once

#include "gprates/common.hpp"
#include "gprates/pointset.hpp"

#include <optional>
#include <string>

namespace gprates {

/// Matern kernel parameterized by Sobolev smoothness tau; the Bessel order is nu = tau - dim/2.
class KernelSpec {
 public:
  /// Throws ConfigError unless tau > dim/2, lengthscale > 0, amplitude > 0 and dim >= 1.
  KernelSpec(double tau, double lengthscale, double amplitude, int dim);

  double tau() const { return tau_; }
  double lengthscale() const { return lengthscale_; }
  double amplitude() const { return amplitude_; }
  int dim() const { return dim_; }
  double nu() const { return nu_; }

  /// Twice nu when nu is one of 1/2, 3/2, 5/2, 7/2; otherwise 0.
  int half_integer_order() const { return half_order_; }
  bool is_half_integer() const { return half_order_ != 0; }

  std::string describe() const;

 private:
  double tau_;
  double lengthscale_;
  double amplitude_;
  int dim_;
  double nu_;
  int half_order_;
};

/// Kernel as a function of distance r = |x - y|.
double matern_radial(const KernelSpec& spec, double r);

/// Same function evaluated through the Bessel-K formula regardless of nu.
double matern_radial_bessel(const KernelSpec& spec, double r);

double matern_eval(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y);

struct GramMatrix {
  Matrix matrix;
  std::optional<std::string> warning;
};

/// K[i][j] = k(x_i, x_j) + jitter on the diagonal. Rows of X are points.
GramMatrix gram(const KernelSpec& spec, const Matrix& X, double jitter);
GramMatrix gram(const KernelSpec& spec, const PointSet& X, double jitter);

Vector cross_vector(const KernelSpec& spec, const Eigen::Ref<const Vector>& x, const Matrix& X);
Vector cross_vector(const KernelSpec& spec, const Eigen::Ref<const Vector>& x, const PointSet& X);

/// Rows index Q, columns index X.
Matrix cross_matrix(const KernelSpec& spec, const Matrix& Q, const Matrix& X);

/// Smallest eigenvalue of a symmetric matrix. Throws std::logic_error on asymmetric input.
double min_eigenvalue(const Matrix& K);

}  // namespace gprates
