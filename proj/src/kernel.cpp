#include "gprates/kernel.hpp"

#include "gprates/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gprates {

namespace {

int detect_half_order(double nu) {
  for (int twice : {1, 3, 5, 7}) {
    if (std::abs(nu - 0.5 * twice) < 1e-12) return twice;
  }
  return 0;
}

double closed_form(int twice_nu, double z) {
  const double e = std::exp(-z);
  switch (twice_nu) {
    case 1: return e;
    case 3: return (1.0 + z) * e;
    case 5: return (1.0 + z + z * z / 3.0) * e;
    case 7: return (1.0 + z + 0.4 * z * z + z * z * z / 15.0) * e;
    default: throw std::logic_error("closed_form: unsupported order");
  }
}

double scaled_distance(const KernelSpec& spec, double r) {
  return std::sqrt(2.0 * spec.nu()) * r / spec.lengthscale();
}

}  // namespace

KernelSpec::KernelSpec(double tau, double lengthscale, double amplitude, int dim)
    : tau_(tau), lengthscale_(lengthscale), amplitude_(amplitude), dim_(dim) {
  if (dim < 1) throw ConfigError("kernel.dim must be a positive integer");
  if (!(std::isfinite(tau) && tau > 0.5 * dim)) {
    throw ConfigError("kernel.tau must exceed dim/2 (got tau=" + std::to_string(tau) +
                      ", dim=" + std::to_string(dim) + ")");
  }
  if (!(std::isfinite(lengthscale) && lengthscale > 0)) throw ConfigError("kernel.lengthscale must be > 0");
  if (!(std::isfinite(amplitude) && amplitude > 0)) throw ConfigError("kernel.amplitude must be > 0");
  nu_ = tau - 0.5 * dim;
  half_order_ = detect_half_order(nu_);
}

std::string KernelSpec::describe() const {
  std::ostringstream s;
  s << "matern(tau=" << tau_ << ", nu=" << nu_ << ", l=" << lengthscale_ << ", A=" << amplitude_
    << ", d=" << dim_ << ")";
  return s.str();
}

double matern_radial_bessel(const KernelSpec& spec, double r) {
  if (r <= 0.0) return spec.amplitude();
  const double nu = spec.nu();
  const double z = scaled_distance(spec, r);
  const double bessel = std::cyl_bessel_k(nu, z);
  if (bessel == 0.0) return 0.0;
  // log form keeps 2^{1-nu} z^nu / Gamma(nu) finite for small z and large nu
  const double log_scale = (1.0 - nu) * std::log(2.0) - std::lgamma(nu) + nu * std::log(z);
  const double value = spec.amplitude() * std::exp(log_scale) * bessel;
  return std::min(value, spec.amplitude());
}

double matern_radial(const KernelSpec& spec, double r) {
  if (r <= 0.0) return spec.amplitude();
  if (spec.is_half_integer()) {
    return spec.amplitude() * closed_form(spec.half_integer_order(), scaled_distance(spec, r));
  }
  return matern_radial_bessel(spec, r);
}

double matern_eval(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y) {
  if (x.size() != spec.dim() || y.size() != spec.dim()) {
    throw ConfigError("matern_eval: point dimension does not match kernel.dim");
  }
  return matern_radial(spec, (x - y).norm());
}

GramMatrix gram(const KernelSpec& spec, const Matrix& X, double jitter) {
  if (X.rows() == 0) throw ConfigError("gram: empty point set");
  if (X.cols() != spec.dim()) throw ConfigError("gram: point dimension does not match kernel.dim");
  if (jitter < 0) throw ConfigError("gram: jitter must be >= 0");
  const Eigen::Index n = X.rows();
  GramMatrix out;
  out.matrix.resize(n, n);
  std::vector<char> has_duplicate(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (auto i = static_cast<Eigen::Index>(begin); i < static_cast<Eigen::Index>(end); ++i) {
      out.matrix(i, i) = spec.amplitude() + jitter;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double r = (X.row(i) - X.row(j)).norm();
        if (r == 0.0) has_duplicate[static_cast<std::size_t>(i)] = 1;
        out.matrix(i, j) = matern_radial(spec, r);
      }
    }
  });
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) out.matrix(j, i) = out.matrix(i, j);
  }
  if (jitter == 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (has_duplicate[static_cast<std::size_t>(i)]) {
        out.warning = "duplicate design points: Gram matrix is singular (first duplicate at row " +
                      std::to_string(i) + ")";
        break;
      }
    }
  }
  return out;
}

GramMatrix gram(const KernelSpec& spec, const PointSet& X, double jitter) {
  return gram(spec, X.points(), jitter);
}

Vector cross_vector(const KernelSpec& spec, const Eigen::Ref<const Vector>& x, const Matrix& X) {
  if (x.size() != spec.dim() || X.cols() != spec.dim()) {
    throw ConfigError("cross_vector: point dimension does not match kernel.dim");
  }
  Vector out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out[i] = matern_radial(spec, (X.row(i).transpose() - x).norm());
  }
  return out;
}

Vector cross_vector(const KernelSpec& spec, const Eigen::Ref<const Vector>& x, const PointSet& X) {
  return cross_vector(spec, x, X.points());
}

Matrix cross_matrix(const KernelSpec& spec, const Matrix& Q, const Matrix& X) {
  if (Q.cols() != spec.dim() || X.cols() != spec.dim()) {
    throw ConfigError("cross_matrix: point dimension does not match kernel.dim");
  }
  Matrix out(Q.rows(), X.rows());
  parallel_for(static_cast<std::size_t>(Q.rows()), [&](std::size_t begin, std::size_t end) {
    for (auto i = static_cast<Eigen::Index>(begin); i < static_cast<Eigen::Index>(end); ++i) {
      for (Eigen::Index j = 0; j < X.rows(); ++j) {
        out(i, j) = matern_radial(spec, (Q.row(i) - X.row(j)).norm());
      }
    }
  });
  return out;
}

double min_eigenvalue(const Matrix& K) {
  if (K.rows() != K.cols() || K.rows() == 0) {
    throw std::logic_error("min_eigenvalue: matrix must be square and nonempty");
  }
  if (!(K.array() == K.transpose().array()).all()) {
    throw std::logic_error("min_eigenvalue: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(K, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("min_eigenvalue: eigensolver failed");
  return solver.eigenvalues()[0];
}

}  // namespace gprates
