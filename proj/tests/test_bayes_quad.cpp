#include <doctest.h>

#include "gprates/bayes_quad.hpp"
#include "gprates/design.hpp"

#include <sstream>

using namespace gprates;

namespace {
const Domain kUnit = Domain::unit_cube(1);
}

TEST_CASE("bq_estimate examples") {
  const KernelSpec k(2.0, 0.5, 1.0, 1);
  const EvalGrid grid(kUnit, 2048);
  const PointSet X = gen_grid(5, kUnit);

  const Vector c = Vector::Constant(5, 1.7);
  const PosteriorModel flat = fit(k, MeanSpec::constant(1.7), X, c, 0.0);
  const DensitySpec uniform = make_density("uniform", kUnit);
  CHECK(bq_estimate(flat, uniform.fn, grid) == doctest::Approx(1.7).epsilon(1e-12));

  const Density zero = [](const Eigen::Ref<const Vector>&) { return 0.0; };
  const PosteriorModel any = fit(k, MeanSpec(), X, Vector::LinSpaced(5, -1.0, 2.0), 0.0);
  CHECK(bq_estimate(any, zero, grid) == 0.0);
}

TEST_CASE("two-point estimate matches explicit quadrature weights") {
  const KernelSpec k(2.0, 0.3, 1.3, 1);
  Matrix pts(2, 1);
  pts << 0.2, 0.65;
  const PointSet X(pts, kUnit);
  Vector y(2);
  y << 0.8, -0.4;
  const EvalGrid grid(kUnit, 4096);
  const DensitySpec tent = make_density("tent", kUnit);

  const PosteriorModel model = fit(k, MeanSpec(), X, y, 1e-3);
  // z_i = int k(x, x_i) p(x) dx, weights w = (K + lambda I)^{-1} z, estimate = w . y
  Vector z(2);
  for (int i = 0; i < 2; ++i) {
    const Vector xi = X.point(i);
    z[i] = integrate([&](const Eigen::Ref<const Vector>& x) { return matern_eval(k, x, xi); }, tent.fn, grid);
  }
  Matrix K = gram(k, X, 0.0).matrix;
  K.diagonal().array() += 1e-3;
  const Vector w = K.ldlt().solve(z);
  CHECK(bq_estimate(model, tent.fn, grid) == doctest::Approx(w.dot(y)).epsilon(1e-10));
}

TEST_CASE("densities integrate to one") {
  const EvalGrid grid(kUnit, 1024);
  for (const std::string& id : density_registry()) {
    const DensitySpec p = make_density(id, kUnit);
    CHECK(integrate([](const Eigen::Ref<const Vector>&) { return 1.0; }, p.fn, grid) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  const Domain box(Vector::Constant(2, 0.0), Vector::Constant(2, 2.0));
  const DensitySpec tent2 = make_density("tent", box);
  CHECK(tent2.sup_norm == doctest::Approx(1.0));
  CHECK(tent2.fn(Vector::Constant(2, 1.0)) == doctest::Approx(1.0));
  const EvalGrid grid2(box, 128);
  CHECK(integrate([](const Eigen::Ref<const Vector>&) { return 1.0; }, tent2.fn, grid2) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(make_density("gaussian", kUnit), ConfigError);
}

TEST_CASE("target equal to the prior mean gives zero error") {
  NamedTargetParams params;
  params.value = 0.6;
  const TargetSpec t = make_named_target("constant", kUnit, params);
  std::vector<PointSet> designs;
  for (int n : {4, 8, 16}) designs.push_back(gen_grid(n, kUnit));
  BqCurveOptions options;
  options.prior_mean = 0.6;
  const auto rows = bq_error_curve(t, make_density("uniform", kUnit), designs, NoiseModel::none(), options,
                                   EvalGrid(kUnit, 512));
  for (const BqRow& r : rows) {
    CHECK(r.abs_error < 1e-12);
    CHECK(r.holder_ok);
  }
}

TEST_CASE("noise-free quadrature converges at the interpolation rate with the Holder chain") {
  BqExperimentConfig c;
  c.target.params.tau_f = 2.0;
  c.seed = 3;
  const BqReport r = run_bq_experiment(c);
  CHECK(r.theoretical == doctest::Approx(-2.0));
  CHECK(r.holder_ok);
  CHECK(r.status == ReportStatus::pass);
  for (const BqRow& row : r.rows) CHECK(row.abs_error <= row.l1_error + 1e-12);

  c.density = "tent";
  const BqReport tent = run_bq_experiment(c);
  CHECK(tent.holder_ok);

  std::ostringstream csv;
  write_bq_csv(r.rows, csv);
  CHECK(csv.str().rfind("n,abs_error,rep_std,l1_error,holder_ok\n", 0) == 0);
  CHECK(r.to_json()["holder_chain"] == true);
}

TEST_CASE("gaussian quadrature uses the regression rate") {
  BqExperimentConfig c;
  c.target.params.tau_f = 2.0;
  c.kernel.tau = 2.5;
  c.noise = NoiseModel::gaussian(0.1, 0);
  c.lambda = NuggetPolicy::fixed(0.1);
  c.replicates = 4;
  c.ladder = {16, 32, 64, 128};
  c.burn_in = 0;
  const BqReport r = run_bq_experiment(c);
  CHECK(r.theoretical == doctest::Approx(-0.4));
  CHECK(r.warnings.empty());
  CHECK(r.holder_ok);
  for (const BqRow& row : r.rows) CHECK(row.rep_std > 0.0);

  c.lambda = NuggetPolicy::zero();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.lambda = NuggetPolicy::fixed(0.1);
  c.noise = NoiseModel::outliers({}, 1.0, 0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
