#include <doctest.h>

#include "gprates/kernel.hpp"
#include "gprates/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace gprates;

namespace {

Vector pt(double x) { return Vector::Constant(1, x); }

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, by the trapezoid rule (spectrally accurate here).
double bessel_k_quadrature(double nu, double x) {
  const double t_max = std::acosh(std::max(1.0, 800.0 / x)) + 1.0;
  const int steps = 200000;
  const double h = t_max / steps;
  double sum = 0.5 * std::exp(-x);
  for (int i = 1; i <= steps; ++i) {
    const double t = i * h;
    const double w = i == steps ? 0.5 : 1.0;
    sum += w * std::exp(-x * std::cosh(t) + std::log(std::cosh(nu * t)));
  }
  return sum * h;
}

double matern_oracle(double nu, double l, double A, double r) {
  const double z = std::sqrt(2.0 * nu) * r / l;
  return A * std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(z, nu) * bessel_k_quadrature(nu, z);
}

}  // namespace

TEST_CASE("kernel spec validation") {
  CHECK_THROWS_AS(KernelSpec(0.5, 1.0, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(KernelSpec(1.0, 1.0, 1.0, 2), ConfigError);
  CHECK_THROWS_AS(KernelSpec(2.0, 0.0, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(KernelSpec(2.0, 1.0, -1.0, 1), ConfigError);
  CHECK_THROWS_AS(KernelSpec(2.0, 1.0, 1.0, 0), ConfigError);

  CHECK(KernelSpec(1.0, 1.0, 1.0, 1).half_integer_order() == 1);
  CHECK(KernelSpec(2.0, 1.0, 1.0, 1).half_integer_order() == 3);
  CHECK(KernelSpec(3.0, 1.0, 1.0, 1).half_integer_order() == 5);
  CHECK(KernelSpec(4.0, 1.0, 1.0, 1).half_integer_order() == 7);
  CHECK(KernelSpec(2.5, 1.0, 1.0, 2).half_integer_order() == 3);
  CHECK_FALSE(KernelSpec(1.5, 1.0, 1.0, 1).is_half_integer());
  CHECK_FALSE(KernelSpec(5.0, 1.0, 1.0, 1).is_half_integer());
  CHECK(KernelSpec(2.5, 1.0, 1.0, 1).nu() == doctest::Approx(2.0));
}

TEST_CASE("matern_eval examples") {
  const KernelSpec k1(1.0, 1.0, 1.0, 1);
  CHECK(matern_eval(k1, pt(0), pt(0)) == 1.0);
  CHECK(matern_eval(k1, pt(0), pt(1)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(matern_eval(k1, pt(0), pt(1)) == doctest::Approx(0.367879).epsilon(1e-6));

  const KernelSpec k2(2.0, 1.0, 1.0, 1);
  const double s3 = std::sqrt(3.0);
  CHECK(matern_eval(k2, pt(0), pt(1)) == doctest::Approx((1 + s3) * std::exp(-s3)).epsilon(1e-15));
  CHECK(matern_eval(k2, pt(0), pt(1)) == doctest::Approx(0.483358).epsilon(1e-6));

  CHECK_THROWS_AS(matern_eval(k2, Vector::Zero(2), pt(0)), ConfigError);
}

TEST_CASE("coincident points return the amplitude for every order") {
  for (double tau : {1.0, 1.3, 2.0, 2.7, 3.0, 4.0, 6.1}) {
    const KernelSpec k(tau, 0.7, 2.5, 1);
    CHECK(matern_eval(k, pt(0.3), pt(0.3)) == 2.5);
    CHECK(matern_radial_bessel(k, 0.0) == 2.5);
  }
}

TEST_CASE("closed forms agree with a quadrature oracle for the Bessel function") {
  for (double tau : {1.0, 2.0, 3.0}) {
    const KernelSpec k(tau, 1.0, 1.0, 1);
    for (double r : {1e-3, 0.1, 0.5, 1.0, 3.0, 8.0}) {
      CHECK(matern_radial(k, r) == doctest::Approx(matern_oracle(k.nu(), 1.0, 1.0, r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("general order matches the quadrature oracle") {
  for (double tau : {0.8, 1.3, 2.2, 2.7, 5.25}) {
    const KernelSpec k(tau, 0.6, 1.7, 1);
    REQUIRE_FALSE(k.is_half_integer());
    for (double r : {1e-4, 0.05, 0.3, 1.0, 2.5, 6.0}) {
      CHECK(matern_radial(k, r) == doctest::Approx(matern_oracle(k.nu(), 0.6, 1.7, r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("half-integer closed forms agree with the Bessel path") {
  for (double tau : {1.0, 2.0, 3.0, 4.0}) {
    const KernelSpec k(tau, 0.8, 1.3, 1);
    for (int i = 0; i <= 200; ++i) {
      const double ratio = std::pow(10.0, -6.0 + i * (std::log10(20.0) + 6.0) / 200.0);
      const double r = ratio * k.lengthscale();
      const double closed = matern_radial(k, r);
      const double bessel = matern_radial_bessel(k, r);
      INFO("tau=" << tau << " r/l=" << ratio);
      CHECK(std::abs(closed - bessel) <= 1e-9 * std::abs(closed));
    }
  }
}

TEST_CASE("symmetry and translation invariance") {
  Rng rng(11);
  for (double tau : {1.1, 1.6, 2.0, 3.4}) {
    const KernelSpec k(tau, 0.5, 1.0, 2);
    for (int trial = 0; trial < 200; ++trial) {
      Vector x(2), y(2), c(2);
      for (int j = 0; j < 2; ++j) {
        x[j] = rng.uniform();
        y[j] = rng.uniform();
        c[j] = 4.0 * rng.uniform() - 2.0;
      }
      CHECK(matern_eval(k, x, y) == matern_eval(k, y, x));
      CHECK(std::abs(matern_eval(k, x, y) - matern_eval(k, x + c, y + c)) <= 1e-12);
    }
  }
}

TEST_CASE("gram matrices are positive semidefinite") {
  Rng rng(5);
  for (double tau : {1.0, 1.5, 2.0, 2.9}) {
    const KernelSpec k(tau, 0.4, 1.0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(29));
      Matrix X(n, 1);
      for (int i = 0; i < n; ++i) X(i, 0) = rng.uniform();
      CHECK(min_eigenvalue(gram(k, X, 0.0).matrix) >= -1e-8);
    }
  }
}

TEST_CASE("kernel decays monotonically in distance") {
  for (double tau : {1.0, 1.25, 2.0, 3.0, 4.0, 4.6}) {
    const KernelSpec k(tau, 1.0, 1.0, 1);
    double prev = matern_radial(k, 0.0);
    for (int i = 1; i <= 2000; ++i) {
      const double v = matern_radial(k, i * 0.01);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("gram examples") {
  const KernelSpec k(1.0, 1.0, 1.0, 1);
  const Domain unit = Domain::unit_cube(1);

  const GramMatrix single = gram(k, Matrix::Constant(1, 1, 0.4), 0.0);
  CHECK(single.matrix.rows() == 1);
  CHECK(single.matrix(0, 0) == 1.0);
  CHECK_FALSE(single.warning.has_value());

  Matrix twin(2, 1);
  twin << 0.3, 0.3;
  const GramMatrix dup = gram(k, twin, 0.0);
  CHECK(dup.matrix == Matrix::Ones(2, 2));
  CHECK(dup.warning.has_value());
  CHECK_FALSE(gram(k, twin, 1e-6).warning.has_value());

  Matrix ends(2, 1);
  ends << 0.0, 1.0;
  const Matrix K = gram(k, ends, 0.0).matrix;
  CHECK(K(0, 0) == 1.0);
  CHECK(K(1, 1) == 1.0);
  CHECK(K(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(K(1, 0) == K(0, 1));

  const Matrix J = gram(k, ends, 0.25).matrix;
  CHECK(J(0, 0) == 1.25);
  CHECK(J(0, 1) == K(0, 1));

  const PointSet grid(Matrix::Constant(1, 1, 0.5), unit);
  CHECK(gram(k, grid, 0.0).matrix(0, 0) == 1.0);
}

TEST_CASE("gram is exactly symmetric") {
  Rng rng(2);
  const KernelSpec k(1.7, 0.3, 1.0, 3);
  Matrix X(25, 3);
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 3; ++j) X(i, j) = rng.uniform();
  const Matrix K = gram(k, X, 1e-10).matrix;
  CHECK((K.array() == K.transpose().array()).all());
}

TEST_CASE("cross_vector examples") {
  const KernelSpec k(1.0, 1.0, 1.0, 1);
  Matrix one(1, 1);
  one << 0.2;
  const Vector v1 = cross_vector(k, pt(0.2), one);
  CHECK(v1.size() == 1);
  CHECK(v1[0] == 1.0);

  Matrix ends(2, 1);
  ends << 0.0, 1.0;
  const Vector v = cross_vector(k, pt(0.5), ends);
  CHECK(v[0] == v[1]);
  CHECK(v[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));

  const Matrix C = cross_matrix(k, ends, ends);
  CHECK(C == gram(k, ends, 0.0).matrix);
}

TEST_CASE("min_eigenvalue examples") {
  CHECK(min_eigenvalue(Matrix::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix ones = Matrix::Ones(2, 2);
  CHECK(std::abs(min_eigenvalue(ones)) <= 1e-12);
  Matrix m(2, 2);
  m << 2, 1, 1, 2;
  CHECK(min_eigenvalue(m) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix bad(2, 2);
  bad << 1, 2, 3, 4;
  CHECK_THROWS_AS(min_eigenvalue(bad), std::logic_error);
}
