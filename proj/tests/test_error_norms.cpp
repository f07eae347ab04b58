#include <doctest.h>

#include "gprates/design.hpp"
#include "gprates/error_norms.hpp"
#include "gprates/parallel.hpp"
#include "gprates/random.hpp"

#include <cmath>
#include <numbers>

using namespace gprates;

namespace {
Vector pt(double x) { return Vector::Constant(1, x); }
const Domain kUnit = Domain::unit_cube(1);
double one(const Eigen::Ref<const Vector>&) { return 1.0; }
}  // namespace

TEST_CASE("eval grid invariants") {
  for (int d : {1, 2, 3}) {
    const Domain dom(Vector::Zero(d), Vector::LinSpaced(d, 1.0, 2.0));
    const EvalGrid g(dom, 6);
    CHECK(g.size() == static_cast<Eigen::Index>(std::pow(6, d)));
    CHECK(g.weight() * static_cast<double>(g.size()) == doctest::Approx(dom.volume()).epsilon(1e-14));
  }
  CHECK(default_eval_resolution(1) == 4096);
  CHECK(default_eval_resolution(2) == 256);
  CHECK(default_eval_resolution(3) == 48);
}

TEST_CASE("lq_error examples") {
  const EvalGrid grid(kUnit, 4096);
  const KernelSpec k(2.0, 0.5, 1.0, 1);
  const PointSet X = gen_grid(12, kUnit);

  // the target is the posterior mean itself
  Rng rng(3);
  Vector y(12);
  for (int i = 0; i < 12; ++i) y[i] = rng.normal();
  const PosteriorModel base = fit(k, MeanSpec::constant(0), X, y, 0.0);
  const TargetSpec self = TargetSpec::expansion(k, X.points(), base.dual(), kUnit);
  const PosteriorModel again = fit(k, MeanSpec::constant(0), X, self.evaluate(X.points()), 0.0);
  for (double q : {1.0, 2.0, kInfNorm}) CHECK(lq_error(self, again, q, grid) <= 1e-8);

  NamedTargetParams p;
  p.value = 2.5;
  const TargetSpec c = make_named_target("constant", kUnit, p);
  const PosteriorModel cm = fit(k, MeanSpec::constant(2.5), X, c.evaluate(X.points()), 0.0);
  for (double q : {1.0, 2.0, kInfNorm}) CHECK(lq_error(c, cm, q, grid) == 0.0);

  const TargetSpec lin = make_named_target("linear", kUnit);
  const PosteriorModel zero = fit(k, MeanSpec::constant(0), X, Vector::Zero(12), 0.0);
  CHECK(lq_error(lin, zero, 2.0, grid) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(lq_error(lin, zero, 1.0, grid) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(lq_error(lin, zero, kInfNorm, grid) == doctest::Approx(1.0).epsilon(1e-3));

  CHECK_THROWS_AS(lq_norm(Vector::Zero(4096), 3.0, grid), ConfigError);
}

TEST_CASE("normalized norms are ordered") {
  Rng rng(8);
  for (int d : {1, 2}) {
    const EvalGrid grid(Domain(Vector::Zero(d), Vector::Constant(d, 3.0)), d == 1 ? 500 : 40);
    for (int t = 0; t < 20; ++t) {
      Vector r(grid.size());
      for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.normal() * (1 + t);
      CHECK(norms_ordered(error_norms(r, grid), grid));
    }
  }
}

TEST_CASE("residual_norm examples") {
  const KernelSpec k(2.0, 0.4, 1.3, 1);
  const TargetSpec f = make_named_target("sine", kUnit);
  const PointSet X = gen_grid(10, kUnit);
  const PosteriorModel interp = fit(k, MeanSpec::constant(0), X, f.evaluate(X.points()), 0.0);
  CHECK(residual_norm(f, interp) <= 1e-6);

  // n = 1: residual = |y| sigma^2 / (A + sigma^2)
  NamedTargetParams p;
  p.value = 0.8;
  const TargetSpec c = make_named_target("constant", kUnit, p);
  const PointSet single = gen_grid(1, kUnit);
  const double s2 = 0.2;
  const PosteriorModel reg = fit(k, MeanSpec::constant(0), single, Vector::Constant(1, 0.8), s2);
  CHECK(residual_norm(c, reg) == doctest::Approx(0.8 * s2 / (1.3 + s2)).epsilon(1e-12));

  double previous = -1.0;
  for (double lambda : {1e-6, 1e-4, 1e-2, 1e-1, 1.0, 10.0}) {
    const double r = residual_norm(f, fit(k, MeanSpec::constant(0), X, f.evaluate(X.points()), lambda));
    CHECK(r > previous);
    previous = r;
  }
}

TEST_CASE("integrate examples") {
  const EvalGrid grid(kUnit, 4096);
  CHECK(std::abs(integrate(one, one, grid) - 1.0) <= 1e-12);
  CHECK(integrate([](const Eigen::Ref<const Vector>& x) { return x[0]; }, one, grid) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(integrate([](const Eigen::Ref<const Vector>& x) { return std::sin(2 * std::numbers::pi * x[0]); },
                           one, grid)) <= 1e-12);
  const EvalGrid sq(Domain::unit_cube(2), 64);
  CHECK(integrate([](const Eigen::Ref<const Vector>& x) { return x[0] * x[1]; }, one, sq) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("pairwise summation is independent of the thread count") {
  const EvalGrid grid(kUnit, 4096);
  Vector r(grid.size());
  Rng rng(1);
  for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = rng.normal();
  const double a = lq_norm(r, 2.0, grid);
  set_thread_count(4);
  const double b = lq_norm(r, 2.0, grid);
  set_thread_count(1);
  CHECK(a == b);
}
