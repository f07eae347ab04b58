#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace gprates {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Point = Eigen::VectorXd;

/// Invalid parameters or preconditions detected before any numerics run.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not complete (e.g. Cholesky failed after jitter escalation).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kernel matrix of a design is numerically singular.
class SingularDesignError : public NumericalError {
 public:
  SingularDesignError(const std::string& what, int closest_i, int closest_j)
      : NumericalError(what), closest_i_(closest_i), closest_j_(closest_j) {}
  int closest_i() const { return closest_i_; }
  int closest_j() const { return closest_j_; }

 private:
  int closest_i_;
  int closest_j_;
};

}  // namespace gprates
