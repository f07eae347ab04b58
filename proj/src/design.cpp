#include "gprates/design.hpp"

#include "gprates/parallel.hpp"
#include "gprates/random.hpp"
#include "gprates/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gprates {

PointSet gen_grid(int n_per_dim, const Domain& domain) {
  if (n_per_dim < 1) throw ConfigError("gen_grid: n_per_dim must be >= 1");
  const int d = domain.dim();
  Eigen::Index total = 1;
  for (int k = 0; k < d; ++k) total *= n_per_dim;
  Matrix pts(total, d);
  const Vector cell = domain.width() / n_per_dim;
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rest = idx;
    // last axis varies fastest
    for (int k = d - 1; k >= 0; --k) {
      const auto j = static_cast<double>(rest % n_per_dim);
      rest /= n_per_dim;
      pts(idx, k) = domain.lower()[k] + (j + 0.5) * cell[k];
    }
  }
  return PointSet(std::move(pts), domain);
}

PointSet gen_uniform_random(int n, const Domain& domain, std::uint64_t seed) {
  if (n < 1) throw ConfigError("gen_uniform_random: n must be >= 1");
  Rng rng(seed);
  Matrix pts(n, domain.dim());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < domain.dim(); ++k) {
      pts(i, k) = domain.lower()[k] + rng.uniform() * (domain.upper()[k] - domain.lower()[k]);
    }
  }
  return PointSet(std::move(pts), domain);
}

PowerFunction::PowerFunction(const KernelSpec& spec, Matrix candidates)
    : spec_(spec), candidates_(std::move(candidates)) {
  if (candidates_.cols() != spec.dim()) throw ConfigError("power function: candidate dimension mismatch");
  power_sq_ = Vector::Constant(candidates_.rows(), spec.amplitude());
}

void PowerFunction::push_basis(Vector column, double pivot_value) {
  const double pivot = std::sqrt(std::max(pivot_value, 0.0));
  if (!(pivot > 0.0)) {
    throw SingularDesignError("power function: selected point already has zero posterior variance", -1, -1);
  }
  column /= pivot;
  power_sq_ -= column.cwiseProduct(column);
  basis_.push_back(std::move(column));
}

void PowerFunction::add(int candidate_index) {
  if (candidate_index < 0 || candidate_index >= candidates_.rows()) {
    throw ConfigError("power function: candidate index out of range");
  }
  const Vector x = candidates_.row(candidate_index).transpose();
  Vector column = cross_vector(spec_, x, candidates_);
  for (const Vector& v : basis_) column -= v[candidate_index] * v;
  const double pivot_value = column[candidate_index];
  push_basis(std::move(column), pivot_value);
  power_sq_[candidate_index] = 0.0;
  selected_.push_back(candidate_index);
}

PointSet gen_p_greedy(int n, const KernelSpec& spec, const PointSet& candidates) {
  if (n < 1) throw ConfigError("gen_p_greedy: n must be >= 1");
  if (candidates.size() < n) {
    throw ConfigError("gen_p_greedy: need at least n=" + std::to_string(n) + " candidates, got " +
                      std::to_string(candidates.size()));
  }
  PowerFunction power(spec, candidates.points());
  std::vector<char> taken(static_cast<std::size_t>(candidates.size()), 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < candidates.size(); ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      if (power.squared()[i] > best_value) {
        best_value = power.squared()[i];
        best = i;
      }
    }
    power.add(best);
    taken[static_cast<std::size_t>(best)] = 1;
  }
  return candidates.subset(power.selected());
}

int default_probe_resolution(int dim) {
  switch (dim) {
    case 1: return 512;
    case 2: return 128;
    case 3: return 32;
    default: return 16;
  }
}

FillDistance fill_distance(const Matrix& points, const Domain& region, int probe_resolution) {
  if (points.rows() == 0) throw ConfigError("fill_distance: empty point set");
  if (probe_resolution < 2) throw ConfigError("fill_distance: probe_resolution must be >= 2");
  const int d = region.dim();
  if (points.cols() != d) throw ConfigError("fill_distance: dimension mismatch");
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(probe_resolution);
  const Vector step = region.width() / (probe_resolution - 1);

  const std::size_t chunks = static_cast<std::size_t>(std::max(1, thread_count())) * 4;
  const std::size_t chunk_len = (total + chunks - 1) / chunks;
  std::vector<double> chunk_max(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t cb, std::size_t ce) {
    Vector probe(d);
    for (std::size_t c = cb; c < ce; ++c) {
      double local = 0.0;
      const std::size_t end = std::min(total, (c + 1) * chunk_len);
      for (std::size_t lin = c * chunk_len; lin < end; ++lin) {
        std::size_t rest = lin;
        for (int k = d - 1; k >= 0; --k) {
          const auto j = static_cast<double>(rest % static_cast<std::size_t>(probe_resolution));
          rest /= static_cast<std::size_t>(probe_resolution);
          probe[k] = region.lower()[k] + j * step[k];
        }
        double nearest = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < points.rows(); ++i) {
          nearest = std::min(nearest, (points.row(i).transpose() - probe).squaredNorm());
        }
        local = std::max(local, nearest);
      }
      chunk_max[c] = local;
    }
  });
  double worst = *std::max_element(chunk_max.begin(), chunk_max.end());
  // Midpoints of nearest-neighbour pairs are extra probes; they guarantee value >= q_X.
  if (points.rows() >= 2) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      Eigen::Index nearest = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < points.rows(); ++j) {
        if (j == i) continue;
        const double dist = (points.row(i) - points.row(j)).squaredNorm();
        if (dist < best) {
          best = dist;
          nearest = j;
        }
      }
      const Vector mid = 0.5 * (points.row(i) + points.row(nearest)).transpose();
      if (!region.contains_closed(mid)) continue;
      double to_set = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < points.rows(); ++j) {
        to_set = std::min(to_set, (points.row(j).transpose() - mid).squaredNorm());
      }
      worst = std::max(worst, to_set);
    }
  }
  return {std::sqrt(worst), 0.5 * step.norm()};
}

FillDistance fill_distance(const PointSet& X, int probe_resolution) {
  return fill_distance(X.points(), X.domain(), probe_resolution);
}

double separation_radius(const Matrix& points) {
  if (points.rows() < 2) throw ConfigError("separation_radius: need at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      best = std::min(best, (points.row(i) - points.row(j)).squaredNorm());
      if (best == 0.0) return 0.0;
    }
  }
  return 0.5 * std::sqrt(best);
}

double separation_radius(const PointSet& X) { return separation_radius(X.points()); }

double mesh_ratio(const PointSet& X, int probe_resolution) {
  const double q = separation_radius(X);
  if (q <= 0.0) throw NumericalError("mesh_ratio: separation radius is zero (duplicate points)");
  return fill_distance(X, probe_resolution).value / q;
}

PointSet with_design_metrics(const PointSet& X, int probe_resolution) {
  const FillDistance h = fill_distance(X, probe_resolution);
  const double q = separation_radius(X);
  if (q <= 0.0) throw NumericalError("design metrics: separation radius is zero (duplicate points)");
  return X.with_metrics({h.value, h.error_bound, q, h.value / q});
}

QuasiUniformityTrace quasi_uniformity_trace(const std::vector<PointSet>& sequence, int probe_resolution) {
  QuasiUniformityTrace trace{};
  std::vector<double> log_n, log_h;
  for (const PointSet& X : sequence) {
    const FillDistance h = fill_distance(X, probe_resolution);
    const double q = separation_radius(X);
    trace.rows.push_back({X.size(), h.value, q, q > 0 ? h.value / q : std::numeric_limits<double>::infinity()});
    log_n.push_back(std::log(static_cast<double>(X.size())));
    log_h.push_back(std::log(h.value));
  }
  if (trace.rows.size() >= 2) {
    const LineFit fit = fit_line(log_n, log_h);
    trace.h_slope = fit.slope;
    trace.h_slope_stderr = fit.slope_stderr;
  }
  return trace;
}

}  // namespace gprates
