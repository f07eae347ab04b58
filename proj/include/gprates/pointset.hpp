#pragma once

#include "gprates/common.hpp"

#include <optional>
#include <string>

namespace gprates {

/// Axis-aligned hyper-rectangle (lower, upper) with lower[i] < upper[i].
class Domain {
 public:
  Domain(Vector lower, Vector upper);

  static Domain unit_cube(int dim);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector width() const { return upper_ - lower_; }
  double volume() const;
  double diameter() const { return width().norm(); }

  bool contains_open(const Eigen::Ref<const Vector>& x) const;
  bool contains_closed(const Eigen::Ref<const Vector>& x) const;

 private:
  Vector lower_;
  Vector upper_;
};

struct DesignMetrics {
  double fill_distance;
  double fill_distance_error;  // probe-grid bracket: h <= fill_distance + fill_distance_error
  double separation_radius;
  double mesh_ratio;
};

/// Ordered design points (one per row) inside an open domain.
class PointSet {
 public:
  /// Throws ConfigError if a point lies outside the open domain or has the wrong dimension.
  PointSet(Matrix points, Domain domain);

  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  bool empty() const { return points_.rows() == 0; }

  const Matrix& points() const { return points_; }
  Vector point(int i) const { return points_.row(i).transpose(); }
  const Domain& domain() const { return domain_; }

  const std::optional<DesignMetrics>& metrics() const { return metrics_; }
  PointSet with_metrics(const DesignMetrics& m) const;

  /// First `count` points, same domain.
  PointSet prefix(int count) const;
  PointSet subset(const std::vector<int>& indices) const;

  /// Header row x1..xd, one point per line, 17 significant digits.
  std::string to_csv() const;

 private:
  Matrix points_;
  Domain domain_;
  std::optional<DesignMetrics> metrics_;
};

}  // namespace gprates
