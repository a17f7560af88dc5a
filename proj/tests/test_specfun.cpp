#include <doctest.h>

#include <cmath>
#include <random>

#include "fmb/bodies.hpp"
#include "fmb/specfun.hpp"
#include "oracles.hpp"

using namespace fmb;
using doctest::Approx;

namespace {

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("gamma at classical points") {
  CHECK(gamma_fn(1) == Approx(1).epsilon(1e-14));
  CHECK(digamma(1) == Approx(-0.5772156649015329).epsilon(1e-12));
  CHECK(gamma_fn(0.5) == Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(gamma_fn(2.5) == Approx(1.5 * 0.5 * std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("gamma and digamma against reference values") {
  struct Row { double x, g, psi; };
  // 20-digit reference evaluations
  const Row rows[] = {{0.3, 2.9915689876875907, -3.5025242222001331},
                      {2.5, 1.329340388179137, 0.70315664064524319},
                      {7.25, 1155.3810139199897, 1.910453526883736},
                      {-1.5, 2.3632718012073547, 0.70315664064524319}};
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(close_rel(gamma_fn(r.x), r.g, 1e-12));
    CHECK(close_rel(digamma(r.x), r.psi, 1e-12));
    CHECK(ln_gamma(r.x) == Approx(std::log(std::abs(r.g))).epsilon(1e-12));
  }
  CHECK(close_rel(std::exp(ln_gamma(170.5)), std::tgamma(170.5), 1e-11));
}

TEST_CASE("gamma poles throw") {
  CHECK_THROWS_AS(gamma_fn(0), PoleError);
  CHECK_THROWS_AS(gamma_fn(-3), PoleError);
  CHECK_THROWS_AS(digamma(-2), PoleError);
  CHECK_THROWS_AS(gamma_family(-1), PoleError);
}

TEST_CASE("gamma reflection and duplication on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U01(0.0, 1.0), U02(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double p = U01(rng);
    CHECK(std::abs(std::sin(kPi * p / 2) * gamma_fn(1 - p / 2) * gamma_fn(1 + p / 2) - kPi * p / 2) <= 1e-10);
    const double q = U02(rng);
    if (std::abs(q - 1) < 1e-6) continue;
    const double lhs = gamma_fn(1 - q) * std::sin(kPi * q / 2) * gamma_fn(q) * std::cos(kPi * q / 2);
    CHECK(std::abs(lhs - kPi / 2) <= 1e-10);
  }
}

TEST_CASE("bessel_j against reference values") {
  struct Row { double mu, t, j; };
  const Row rows[] = {{0, 0.5, 0.9384698072408129},    {1, 5, -0.32757913759146522},
                      {0.5, 12.5, -0.014967249458668383}, {2.5, 30, 0.14120285879928212},
                      {0, 11.9, 0.025049441699589645},   {1.5, 3, 0.47771821508709177}};
  for (const auto& r : rows) {
    CAPTURE(r.mu);
    CAPTURE(r.t);
    CHECK(std::abs(bessel_j(r.mu, r.t) - r.j) <= 1e-10);
  }
  // orders above 2 past t = 12
  CHECK(std::abs(bessel_j(7, 15) - 0.0344636554189592) <= 1e-10);
  CHECK(std::abs(bessel_j(10, 20) - 0.186482558023945) <= 1e-10);
  CHECK(std::abs(bessel_j(20, 40) - 0.127793933550849) <= 1e-10);
  // large argument: relative to the t^(-1/2) envelope
  const double env = std::sqrt(2 / (kPi * 200.0));
  CHECK(std::abs(bessel_j(3.5, 200) - 0.028954336997303466) <= 1e-8 * env);
  CHECK(std::abs(bessel_j(1, 1e4) - 0.0036474507555295803) <= 1e-8 * std::sqrt(2 / (kPi * 1e4)));
  CHECK(bessel_j(1, 0) == 0);
  CHECK(bessel_j(0, 0) == 1);
}

TEST_CASE("bessel_j is continuous where the evaluation method changes") {
  for (double mu : {0.0, 1.0, 2.5, 7.0}) {
    const double t0 = 12;
    CAPTURE(mu);
    CHECK(std::abs(bessel_j(mu, t0 * (1 - 1e-13)) - bessel_j(mu, t0 * (1 + 1e-13))) <= 1e-10);
  }
}

TEST_CASE("bessel_mellin_sq examples and domain") {
  CHECK(bessel_mellin_sq(1, -1) == Approx(4 / (3 * kPi)).epsilon(1e-12));
  CHECK(std::abs(bessel_mellin_sq(1, -1e-9) - bessel_mellin_sq(1, -2e-9)) < 1e-8);
  CHECK_THROWS_AS(bessel_mellin_sq(1, 1), DomainError);
  CHECK_THROWS_AS(bessel_mellin_sq(0.5, -1), DomainError);
  CHECK_THROWS_AS(bessel_mellin_sq(0, -0.1), DomainError);
}

TEST_CASE("bessel_mellin_sq matches quadrature") {
  for (double mu : {0.0, 0.5, 1.0, 2.0, 3.5})
    for (double nu : {-0.9, -0.5, 0.1, 0.5, 0.9}) {
      if (!(-nu / 2 < mu)) continue;
      CAPTURE(mu);
      CAPTURE(nu);
      CHECK(std::abs(bessel_mellin_sq(mu, nu) - oracle::bessel_sq_integral(mu, nu)) <= 1e-6);
    }
  // split mpmath quadrature, 18 digits working precision
  CHECK(bessel_mellin_sq(1.5, -2) == Approx(oracle::bessel_sq_integral(1.5, -2)).epsilon(1e-6));
  CHECK(bessel_mellin_sq(0, 0.5) == Approx(2.46938967025313).epsilon(1e-9));
  CHECK(bessel_mellin_sq(3.5, 0.5) == Approx(0.445565106682067).epsilon(1e-8));
}

TEST_CASE("dirichlet_sine examples and quadrature") {
  CHECK(dirichlet_sine(1, 1.5) == Approx(std::sqrt(kPi / 2)).epsilon(1e-12));
  CHECK(dirichlet_sine(2, 1.5) == Approx(std::sqrt(kPi) / 2).epsilon(1e-12));
  CHECK(dirichlet_sine(1, 2 - 1e-9) == Approx(1).epsilon(1e-6));
  CHECK_THROWS_AS(dirichlet_sine(1, 2), DomainError);
  CHECK_THROWS_AS(dirichlet_sine(1, 1), DomainError);
  CHECK_THROWS_AS(dirichlet_sine(0, 1.5), DomainError);
  for (double a : {0.5, 1.0, 2.0, 3.0, 5.0})
    for (double p : {1.1, 1.3, 1.5, 1.7, 1.9}) {
      CAPTURE(a);
      CAPTURE(p);
      CHECK(std::abs(dirichlet_sine(a, p) - oracle::sine_integral(a, p)) <= 1e-6);
    }
  // mpmath oscillatory quadrature
  CHECK(dirichlet_sine(2, 1.9) == Approx(0.565613498958399).epsilon(1e-8));
  CHECK(dirichlet_sine(0.5, 1.9) == Approx(1.9695806005045).epsilon(1e-8));
}

TEST_CASE("sine_sq_mellin matches quadrature") {
  // by parts: int sin^2(a r) r^(p-3) dr = a / (2 - p) int sin(2 a r) r^(p-2) dr
  for (double a : {0.7, 2.0})
    for (double p : {1.2, 1.5, 1.8}) {
      CAPTURE(a);
      CAPTURE(p);
      CHECK(sine_sq_mellin(a, p) == Approx(a / (2 - p) * oracle::sine_integral(2 * a, p)).epsilon(1e-9));
    }
  CHECK_THROWS_AS(sine_sq_mellin(1, 2), DomainError);
}

TEST_CASE("coefficient examples") {
  CHECK(*m_coeff(2, 2) == 1);
  CHECK(*m_coeff(3, 3) == 1);
  CHECK(kappa(2, 1) == Approx(0.2).epsilon(1e-14));
  CHECK(*lambda_coeff(2, 1) == Approx(1 / (2 * kPi)).epsilon(1e-12));
  CHECK(d_coeff(1.5) == Approx(0.7089815).epsilon(1e-6));
  const auto c = coefficients(2, 1.5, 1.0);
  REQUIRE(c.d_p);
  CHECK(*c.d_p == Approx(d_coeff(1.5)));
  CHECK(c.omega_q == Approx(kPi));
}

TEST_CASE("d_p is positive on (1, 2) and continuous at the removable points") {
  for (double p = 1.05; p < 2; p += 0.05) CHECK(d_coeff(p) > 0);
  CHECK(d_coeff(1 + 1e-7) == Approx(d_coeff(1 - 1e-7)).epsilon(1e-5));
  CHECK(d_coeff(3 + 1e-7) == Approx(d_coeff(3 - 1e-7)).epsilon(1e-5));
  CHECK_THROWS_AS(d_coeff(2), DomainError);
}

TEST_CASE("kappa and lambda approach their limit values") {
  for (int n : {1, 2, 3}) {
    CAPTURE(n);
    CHECK(kappa(n, 0) == Approx(std::exp(-harmonic(2 * n))).epsilon(1e-12));
    CHECK(*lambda_coeff(n, 1) == Approx(1 / (kPi * n)).epsilon(1e-12));
    for (double e : {1e-4, 1e-6, 1e-8}) {
      CHECK(std::abs(kappa(n, e) - kappa(n, 0)) <= 1e-9 + 2 * e);
      CHECK(std::abs(*lambda_coeff(n, 1 - e) - *lambda_coeff(n, 1)) <= 1e-9 + 2 * e);
    }
  }
}

TEST_CASE("binom_radial at p = 0 is e^{H_n}") {
  CHECK(binom_radial(2, 0) == Approx(std::exp(1.5)).epsilon(1e-12));
  CHECK(binom_radial(2, 1e-7) == Approx(std::exp(1.5)).epsilon(1e-6));
}

TEST_CASE("omega agrees with ball volumes") {
  for (int n : {1, 2, 3}) CHECK(std::abs(omega(n) - volume(make_ball(n))) <= 1e-12);
  CHECK(omega(2) == Approx(kPi));
}

TEST_CASE("sin2sin2_mellin: square F closed form and the p = 2 limit") {
  // 16/(c1 c2)^2 sin2sin2(p, c1/2, c2/2) is the p-th power of the unit square's
  // F_p radius; frozen from mpmath with the tail split by frequency.
  const double c1 = std::cos(0.3), c2 = std::sin(0.3);
  const double k = 16 / (c1 * c1 * c2 * c2);
  CHECK(std::pow(k * sin2sin2_mellin(0.5, c1 / 2, c2 / 2), 1 / 0.5) == Approx(2.7314772452044802).epsilon(1e-8));
  CHECK(k * sin2sin2_mellin(1, c1 / 2, c2 / 2) == Approx(2.9493864440174189).epsilon(1e-8));
  CHECK(std::pow(k * sin2sin2_mellin(1.5, c1 / 2, c2 / 2), 1 / 1.5) == Approx(3.1715778117306099).epsilon(1e-8));
  CHECK(sin2sin2_mellin(2 - 1e-7, 0.4, 0.2) == Approx(sin2sin2_mellin(2, 0.4, 0.2)).epsilon(1e-5));
  CHECK(sin2sin2_mellin(2 + 1e-7, 0.4, 0.2) == Approx(sin2sin2_mellin(2, 0.4, 0.2)).epsilon(1e-5));
}
