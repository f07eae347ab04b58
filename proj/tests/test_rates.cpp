#include <doctest.h>

#include "gprates/random.hpp"
#include "gprates/rates.hpp"

#include <cmath>

using namespace gprates;

namespace {

RateParams params(double tau_f, double tau_k, int d, double s, double q) {
  RateParams p;
  p.tau_f = tau_f;
  p.tau_k_minus = tau_k;
  p.tau_k_plus = tau_k;
  p.d = d;
  p.s = s;
  p.q = q;
  return p;
}

}  // namespace

TEST_CASE("interpolation exponents") {
  auto e = exponent_interpolation(params(2, 2, 1, 0, 2));
  CHECK(e.h_exp == doctest::Approx(2.0));
  CHECK(e.rho_exp == 0.0);

  e = exponent_interpolation(params(1, 2, 1, 0, 2));
  CHECK(e.h_exp == doctest::Approx(1.0));
  CHECK(e.rho_exp == doctest::Approx(1.0));

  e = exponent_interpolation(params(2, 2, 1, 0, kInfinity));
  CHECK(e.h_exp == doctest::Approx(1.5));
  CHECK(e.rho_exp == 0.0);

  CHECK(n_exponent(exponent_interpolation(params(2, 2, 2, 0, 2)), Scaling::nominal(2)) == doctest::Approx(-1.0));
  // rho growing like n^0.1 costs 0.1 per unit of rho exponent
  CHECK(n_exponent(exponent_interpolation(params(1, 2, 1, 0, 2)), Scaling{-1.0, 0.1}) == doctest::Approx(-0.9));
}

TEST_CASE("tau star and admissible s") {
  CHECK(tau_zero(2.5, 1, kInfinity) == doctest::Approx(2.0));
  CHECK(tau_star(2.0, 1, 2.0) == doctest::Approx(2.0));
  CHECK(tau_star(2.5, 1, kInfinity) == doctest::Approx(1.0));
  CHECK(tau_star(2.5, 1, 2.0) == doctest::Approx(2.0));
  CHECK(tau_star(3.0, 2, 4.0) == doctest::Approx(2.5 - 0.5));  // tau0 = 2.5 not integral
  CHECK(tau_star(3.0, 2, 1.0) == doctest::Approx(3.0 - 1.0));  // q < 2: ceil(3) - 1
  CHECK(tau_star(4.0, 4, 4.0) == doctest::Approx(3.0));        // tau0 = 3 integral with 2 < q < inf

  CHECK_NOTHROW(params(2, 2, 1, 2, 2).validate());
  CHECK_THROWS_AS(params(2, 2, 1, 2.1, 2).validate(), ConfigError);
  try {
    params(2.5, 2.5, 1, 1.5, kInfinity).validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("tau0") != std::string::npos);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(params(0.5, 2, 1, 0, 2).validate(), ConfigError);
  CHECK_THROWS_AS(params(2, 0.4, 1, 0, 2).validate(), ConfigError);
  RateParams p = params(2, 2, 1, 0, 2);
  p.tau_k_plus = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS(params(2, 2, 1, -0.1, 2).validate(), ConfigError);
  CHECK_THROWS_AS(params(2, 2, 1, 0, 0.5).validate(), ConfigError);
}

TEST_CASE("advisories") {
  CHECK(params(2, 2, 1, 0, 2).advisories().empty());
  CHECK(params(2.2, 2.6, 1, 0, 2).advisories().size() == 1);
  CHECK(params(2.2, 3.0, 1, 0, 2).advisories().empty());
  RateParams p = params(2, 2, 1, 0, 2);
  p.design = DesignRegime::arbitrary;
  CHECK(p.advisories().size() == 1);
}

TEST_CASE("gamma handling") {
  CHECK(gamma_of(1.0) == 2.0);
  CHECK(gamma_of(2.0) == 2.0);
  CHECK(gamma_of(4.0) == 4.0);
  CHECK(std::isinf(gamma_of(kInfinity)));
  RateParams p = params(2, 2, 1, 0, kInfinity);
  p.nugget = NuggetPolicy::fixed(0.1);
  p.noise_growth = 0.0;
  // 1/gamma = 0 at q = inf, so the closed-form rate is the max term alone
  CHECK(*exponent_misspec_gaussian(p).closed_form_n_exp == doctest::Approx(0.0));
}

TEST_CASE("gaussian regression closed form") {
  RateParams p = params(2, 2.5, 1, 0, 2);
  auto r = exponent_gaussian_regression(p);
  CHECK(r.closed_form);
  CHECK(r.n_exp == doctest::Approx(-0.4));

  p = params(2, 3, 2, 0, 2);
  r = exponent_gaussian_regression(p);
  CHECK(r.closed_form);
  CHECK(r.n_exp == doctest::Approx(-1.0 / 3.0));

  p = params(2, 2.5, 1, 1.0 * 2.0 / 5.0, 2);
  CHECK(exponent_gaussian_regression(p).n_exp == doctest::Approx(0.0));

  p = params(2.5, 3, 1, 0, 2);
  r = exponent_gaussian_regression(p);
  CHECK(r.closed_form);
  CHECK(r.n_exp == doctest::Approx(-2.5 / 6.0));
  // the three-term bound reproduces the closed form at the matched smoothness
  CHECK(r.terms.dominant(Scaling::nominal(1), std::nullopt) == doctest::Approx(-5.0 / 12.0));
}

TEST_CASE("gaussian regression falls back with a warning") {
  auto r = exponent_gaussian_regression(params(2, 2, 1, 0, 2));
  CHECK_FALSE(r.closed_form);
  REQUIRE(r.terms.warnings.size() == 1);
  CHECK(r.terms.warnings[0].find("tau_k") != std::string::npos);
  CHECK(r.n_exp == doctest::Approx(r.terms.dominant(Scaling::nominal(1), std::nullopt)));
  CHECK(r.terms.terms.size() == 3);

  r = exponent_gaussian_regression(params(2, 2.5, 1, 0, kInfinity));
  CHECK_FALSE(r.closed_form);
  CHECK(r.terms.warnings[0].find("q outside") != std::string::npos);
}

TEST_CASE("misspecified gaussian closed forms") {
  RateParams p = params(2, 2, 1, 0, 2);
  p.nugget = NuggetPolicy::fixed(0.1);
  p.noise_growth = 0.0;
  TermExponents t = exponent_misspec_gaussian(p);
  REQUIRE(t.closed_form_n_exp);
  CHECK(*t.closed_form_n_exp == doctest::Approx(-0.5));

  p.tau_f = 1.5;
  p.tau_k_minus = p.tau_k_plus = 1.5;
  CHECK(*exponent_misspec_gaussian(p).closed_form_n_exp == doctest::Approx(-0.5));

  // adaptive nugget with tau = tau_f gives the same rate
  p = params(2, 2, 1, 0, 2);
  p.nugget = NuggetPolicy::adaptive_h(1.5);
  p.noise_growth = 0.0;
  CHECK(*exponent_misspec_gaussian(p).closed_form_n_exp == doctest::Approx(-0.5));

  p.noise_growth = 0.5;
  CHECK(*exponent_misspec_gaussian(p).closed_form_n_exp == doctest::Approx(0.0));

  p.nugget = NuggetPolicy::zero();
  CHECK_THROWS_AS(exponent_misspec_gaussian(p), ConfigError);

  // misspecified kernel without an adaptive nugget: only the term list is available
  p = params(1.5, 2, 1, 0, 2);
  p.nugget = NuggetPolicy::fixed(0.1);
  p.noise_growth = 0.0;
  t = exponent_misspec_gaussian(p);
  CHECK_FALSE(t.closed_form_n_exp);
  CHECK(t.terms.size() == 4);
}

TEST_CASE("term list with adaptive nugget matches the closed form") {
  for (double tau_f : {1.0, 1.5, 2.0, 3.0}) {
    for (double tau : {1.0, 2.0, 3.0}) {
      for (double g : {0.0, 0.25, 0.5}) {
        RateParams p = params(tau_f, tau, 1, 0, 2);
        p.nugget = NuggetPolicy::adaptive_h(tau - 0.5);
        p.noise_growth = g;
        const TermExponents t = exponent_misspec_gaussian(p);
        REQUIRE(t.closed_form_n_exp);
        const Scaling sc = with_nugget(Scaling::nominal(1), p.nugget);
        // term-wise dominant can only be sharper than or equal to the closed form
        CHECK(t.dominant(sc, g) <= *t.closed_form_n_exp + 1e-12);
      }
    }
  }
}

TEST_CASE("misspecified interpolation") {
  RateParams p = params(2, 2, 1, 0, 2);
  p.noise_growth = 0.0;
  TermExponents t = exponent_misspec_interpolation(p);
  CHECK(*t.closed_form_n_exp == doctest::Approx(-0.5));
  CHECK(t.dominant(Scaling::nominal(1), 0.0) == doctest::Approx(-0.5));

  p.noise_growth = 0.5;
  CHECK(exponent_misspec_interpolation(p).dominant(Scaling::nominal(1), 0.5) == doctest::Approx(0.0));

  // no noise: reduces to the noise-free interpolation exponent
  for (double tau_f : {1.0, 1.5, 2.0, 3.0}) {
    for (double tau_k : {1.0, 2.0, 2.5}) {
      for (double q : {1.0, 2.0, kInfinity}) {
        RateParams r = params(tau_f, tau_k, 1, 0, q);
        const Scaling sc{-1.0, 0.2};
        const double free = n_exponent(exponent_interpolation(r), sc);
        CHECK(exponent_misspec_interpolation(r).dominant(sc, std::nullopt) == doctest::Approx(free));
      }
    }
  }
}

TEST_CASE("branch consistency") {
  for (double tau_k : {1.0, 1.5, 2.0}) {
    for (double extra : {0.0, 0.5, 1.0, 2.5}) {
      RateParams p = params(tau_k + extra, tau_k, 1, 0, 2);
      p.nugget = NuggetPolicy::fixed(0.1);
      CHECK(exponent_interpolation(p).rho_exp == 0.0);
      for (const BoundTerm& t : exponent_misspec_gaussian(p).terms) {
        CHECK(t.rho_exp == 0.0);
        CHECK(t.qx_exp == 0.0);
      }
      for (const BoundTerm& t : exponent_misspec_interpolation(p).terms) {
        if (!t.noise) CHECK(t.rho_exp == 0.0);
      }
      for (const BoundTerm& t : exponent_gaussian_regression(p).terms.terms) CHECK(t.rho_exp == 0.0);
    }
  }
  // at tau_f == tau_k+ the misspecified formulas evaluate to the well-specified ones
  RateParams p = params(2, 2, 1, 0, 2);
  const auto well = exponent_interpolation(p);
  CHECK(well.h_exp == doctest::Approx(std::min(p.tau_f, p.tau_k_minus)));
}

TEST_CASE("interpolation exponent monotonicity") {
  for (double q : {1.0, 2.0, kInfinity}) {
    double prev = -kInfinity;
    for (double tau_f = 1.0; tau_f <= 4.0; tau_f += 0.25) {
      const double h = exponent_interpolation(params(tau_f, 3.0, 1, 0, q)).h_exp;
      CHECK(h >= prev);
      prev = h;
    }
    prev = -kInfinity;
    for (double tau_k = 1.0; tau_k <= 4.0; tau_k += 0.25) {
      const double h = exponent_interpolation(params(3.0, tau_k, 1, 0, q)).h_exp;
      CHECK(h >= prev);
      prev = h;
    }
    prev = kInfinity;
    for (double s = 0.0; s <= 1.0; s += 0.25) {
      const double h = exponent_interpolation(params(3.0, 3.0, 1, s, q)).h_exp;
      CHECK(h <= prev);
      prev = h;
    }
  }
}

TEST_CASE("quadrature and optimisation exponents") {
  CHECK(exponent_bq(params(2, 2, 1, 0, 1), Scaling::nominal(1)) == doctest::Approx(-2.0));
  CHECK(exponent_bq(params(1, 2, 1, 0, 1), Scaling{-1.0, 0.5}) == doctest::Approx(-0.5));
  CHECK(exponent_bq_gaussian(params(2, 2.5, 1, 0, 1)) == doctest::Approx(-0.4));
  CHECK(exponent_bo(2, 3, 1) == doctest::Approx(-1.5));
  CHECK(exponent_bo(3, 1.5, 2) == doctest::Approx(-0.25));
}

TEST_CASE("nugget policies") {
  CHECK(NuggetPolicy::zero().sigma_n(0.1) == 0.0);
  CHECK(NuggetPolicy::fixed(0.3).lambda(0.1) == doctest::Approx(0.09));
  CHECK(NuggetPolicy::adaptive_h(1.5, 2.0).sigma_n(0.04) == doctest::Approx(2.0 * 0.008));
  CHECK(with_nugget(Scaling::nominal(2), NuggetPolicy::adaptive_h(1.0)).sigma_slope == doctest::Approx(-0.5));
  CHECK(with_nugget(Scaling::nominal(2), NuggetPolicy::fixed(1.0)).sigma_slope == 0.0);
}

TEST_CASE("fit_empirical_rate") {
  std::vector<std::pair<double, double>> exact, flat, noisy;
  Rng rng(17);
  for (double n : {16.0, 32.0, 64.0, 128.0, 256.0, 512.0}) {
    exact.emplace_back(n, 3.0 * std::pow(n, -2.0));
    flat.emplace_back(n, 0.25);
    noisy.emplace_back(n, (1.0 + 0.01 * rng.normal()) / n);
  }
  const EmpiricalRate e = fit_empirical_rate(exact, 1);
  CHECK(std::abs(e.slope + 2.0) < 1e-9);
  CHECK(e.points == 5);
  CHECK(std::abs(fit_empirical_rate(flat, 0).slope) < 1e-12);
  CHECK(fit_empirical_rate(noisy, 1).slope == doctest::Approx(-1.0).epsilon(0.05));

  auto bad = exact;
  bad[3].second = 0.0;
  CHECK_THROWS_AS(fit_empirical_rate(bad, 1), NumericalError);
  bad[3].second = -1e-3;
  CHECK_THROWS_AS(fit_empirical_rate(bad, 1), NumericalError);
  CHECK_THROWS_AS(fit_empirical_rate(exact, 4), ConfigError);
}
