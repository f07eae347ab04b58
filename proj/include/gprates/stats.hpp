#pragma once

#include <cstddef>
#include <vector>

namespace gprates {

/// Sum by recursive halving; error grows like log(n) rather than n.
double pairwise_sum(const double* values, std::size_t count);
double pairwise_sum(const std::vector<double>& values);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // zero when only two points are fitted
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs at least two distinct x values.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& values);
/// Sample standard deviation (n - 1 denominator); zero for fewer than two values.
double sample_stddev(const std::vector<double>& values);

}  // namespace gprates
