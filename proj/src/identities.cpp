#include "gprates/identities.hpp"

#include "gprates/design.hpp"
#include "gprates/gp_fit.hpp"
#include "gprates/random.hpp"

#include <algorithm>
#include <cmath>

namespace gprates {

namespace {

constexpr int kMaxDraws = 100000;
constexpr double kMinSeparation = 2e-3;

Matrix random_points(Rng& rng, int n, int d) {
  Matrix m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.uniform();
  return m;
}

Vector random_normal(Rng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

// Dart throwing: a uniform draw is kept only if it lies at least 2 * kMinSeparation from every point kept so far,
// so the Gram matrix stays far above the jitter.
PointSet separated_design(Rng& rng, int n, int d) {
  Matrix pts(n, d);
  int kept = 0;
  for (int draw = 0; kept < n; ++draw) {
    if (draw >= kMaxDraws) {
      throw NumericalError("could not draw a separated random design of size " + std::to_string(n));
    }
    Eigen::RowVectorXd p(d);
    for (int j = 0; j < d; ++j) p(j) = rng.uniform();
    bool far = true;
    for (int i = 0; i < kept && far; ++i) far = (pts.row(i) - p).norm() >= 2.0 * kMinSeparation;
    if (far) pts.row(kept++) = p;
  }
  return PointSet(std::move(pts), Domain::unit_cube(d));
}

void record(IdentityCheck& c, double defect) {
  ++c.trials;
  c.worst = std::max(c.worst, defect);
  if (!(defect <= c.tolerance)) ++c.failures;
}

}  // namespace

nlohmann::ordered_json IdentityCheck::to_json() const {
  return {{"name", name},   {"trials", trials},       {"failures", failures},
          {"worst", worst}, {"tolerance", tolerance}, {"pass", pass()}};
}

IdentityCheck check_pythagorean(int configs, std::uint64_t seed, double tolerance) {
  IdentityCheck c{"pythagorean", 0, 0, 0.0, tolerance};
  Rng rng(seed);
  for (int i = 0; i < configs; ++i) {
    const int d = 1 + i % 2;
    const KernelSpec k(d == 1 ? 2.0 : 2.5, 0.4, 1.0, d);
    const int n = 4 + static_cast<int>(rng.below(61));
    const int nz = 3 + static_cast<int>(rng.below(20));
    const PointSet X = separated_design(rng, n, d);
    const Matrix Z = random_points(rng, nz, d);
    const Vector alpha = random_normal(rng, nz);
    const PosteriorModel R = fit(k, MeanSpec(), X, cross_matrix(k, X.points(), Z) * alpha, 0.0);

    Matrix centers(nz + n, d);
    centers << Z, X.points();
    Vector coeff(nz + n);
    coeff << alpha, -R.dual();
    const double f2 = std::pow(rkhs_norm_expansion(k, Z, alpha), 2);
    const double r2 = std::pow(rkhs_norm_expansion(k, X.points(), R.dual()), 2);
    const double diff2 = std::pow(rkhs_norm_expansion(k, centers, coeff), 2);
    record(c, std::abs(diff2 + r2 - f2) / f2);
  }
  return c;
}

IdentityCheck check_regression_bounds(int trials, std::uint64_t seed, double slack) {
  IdentityCheck c{"regression_bounds", 0, 0, 0.0, slack};
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const KernelSpec k(t % 2 ? 2.0 : 1.0, 0.3, 1.0, 1);
    const int n = 3 + static_cast<int>(rng.below(40));
    const PointSet X = separated_design(rng, n, 1);
    const Matrix Z = random_points(rng, 6, 1);
    const Vector alpha = random_normal(rng, 6);
    const double f_norm = rkhs_norm_expansion(k, Z, alpha);
    const Vector fX = cross_matrix(k, X.points(), Z) * alpha;
    const Vector eps = 0.3 * random_normal(rng, n);
    const double sigma = std::pow(10.0, -2.0 + 2.0 * rng.uniform());

    const PosteriorModel R = fit(k, MeanSpec(), X, fX + eps, sigma * sigma);
    const double r_norm = rkhs_norm_expansion(k, X.points(), R.dual());
    const double norm_bound = std::sqrt(eps.squaredNorm() / (sigma * sigma) + f_norm * f_norm);
    const double resid = (fX - R.mean_batch(X.points())).norm();
    const double resid_bound = eps.norm() + std::sqrt(eps.squaredNorm() + sigma * sigma * f_norm * f_norm);
    // one trial covers both inequalities
    record(c, std::max(r_norm / norm_bound - 1.0, resid / resid_bound - 1.0));
  }
  return c;
}

IdentityCheck check_rayleigh_bound(int trials, std::uint64_t seed, double slack) {
  IdentityCheck c{"rayleigh_bound", 0, 0, 0.0, slack};
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const KernelSpec k(t % 2 ? 2.0 : 1.5, 0.3, 1.5, 1);
    const int n = 2 + static_cast<int>(rng.below(30));
    const PointSet X = separated_design(rng, n, 1);
    const Vector eps = random_normal(rng, n);
    const double lam = min_eigenvalue(gram(k, X, 0.0).matrix);
    const double lhs = std::pow(noise_interpolant_norm(k, X, eps), 2);
    record(c, lhs / (eps.squaredNorm() / lam) - 1.0);
  }
  return c;
}

IdentityCheck check_matern_closed_forms(double tolerance) {
  IdentityCheck c{"matern_closed_forms", 0, 0, 0.0, tolerance};
  for (double tau : {1.0, 2.0, 3.0, 4.0}) {
    const KernelSpec k(tau, 0.8, 1.3, 1);
    for (int i = 0; i <= 200; ++i) {
      const double ratio = std::pow(10.0, -6.0 + i * (std::log10(20.0) + 6.0) / 200.0);
      const double closed = matern_radial(k, ratio * k.lengthscale());
      const double bessel = matern_radial_bessel(k, ratio * k.lengthscale());
      record(c, std::abs(closed - bessel) / std::abs(closed));
    }
  }
  return c;
}

std::vector<IdentityCheck> run_identity_suite(std::uint64_t seed) {
  return {check_pythagorean(50, derive_seed(seed, {8, 1})), check_regression_bounds(100, derive_seed(seed, {8, 2})),
          check_rayleigh_bound(100, derive_seed(seed, {8, 3})), check_matern_closed_forms()};
}

}  // namespace gprates
