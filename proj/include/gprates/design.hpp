#pragma once

#include "gprates/kernel.hpp"
#include "gprates/pointset.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gprates {

/// Tensor grid of cell midpoints, n_per_dim cells per axis.
PointSet gen_grid(int n_per_dim, const Domain& domain);

/// n i.i.d. uniform points from a seeded generator.
PointSet gen_uniform_random(int n, const Domain& domain, std::uint64_t seed);

/// Power function P_m(x)^2 of interpolation on a fixed candidate set, updated one
/// selected point at a time with the Newton basis.
class PowerFunction {
 public:
  PowerFunction(const KernelSpec& spec, Matrix candidates);

  void add(int candidate_index);

  const Vector& squared() const { return power_sq_; }
  const std::vector<int>& selected() const { return selected_; }
  int steps() const { return static_cast<int>(basis_.size()); }
  const Matrix& candidates() const { return candidates_; }

 private:
  void push_basis(Vector column, double pivot_value);

  KernelSpec spec_;
  Matrix candidates_;
  Vector power_sq_;
  std::vector<Vector> basis_;
  std::vector<int> selected_;
};

/// Greedy maximization of the power function over candidates, lowest index on ties.
PointSet gen_p_greedy(int n, const KernelSpec& spec, const PointSet& candidates);

int default_probe_resolution(int dim);

struct FillDistance {
  double value;        // max over probes of the distance to the nearest design point
  double error_bound;  // half the probe-cell diagonal: true value lies in [value, value + error_bound]
};

FillDistance fill_distance(const PointSet& X, int probe_resolution);
/// Fill distance of the rows of `points` with respect to a closed box.
FillDistance fill_distance(const Matrix& points, const Domain& region, int probe_resolution);

double separation_radius(const PointSet& X);
double separation_radius(const Matrix& points);

double mesh_ratio(const PointSet& X, int probe_resolution);

/// Computes h, q, rho and returns a copy with cached metrics.
PointSet with_design_metrics(const PointSet& X, int probe_resolution);

struct TraceRow {
  int n;
  double h;
  double q;
  double rho;
};

struct QuasiUniformityTrace {
  std::vector<TraceRow> rows;
  double h_slope;         // slope of log h against log n
  double h_slope_stderr;
};

QuasiUniformityTrace quasi_uniformity_trace(const std::vector<PointSet>& sequence, int probe_resolution);

}  // namespace gprates
