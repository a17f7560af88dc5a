#pragma once

#include <optional>

#include "fmb/types.hpp"

namespace fmb {

struct GammaFamily {
  double gamma;
  double ln_gamma;  // log|Gamma(x)|
  double digamma;
};

// Throws PoleError at non-positive integers.
GammaFamily gamma_family(double x);
double gamma_fn(double x);
double ln_gamma(double x);
double digamma(double x);

// Generalized binomial C(a, b) = Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)).
double binom(double a, double b);
double harmonic(int n);

// Volume of the unit ball in dimension q (q real, q > -2).
double omega(double q);

// sin(x)/x with the removable point handled.
double sinc(double x);

// cos(pi p / 2) / (1 - p), continuous at p = 1.
double cos_half_pi_over_one_minus(double p);

// cos(pi p / 2) / ((1 - p)(3 - p)), continuous at p = 1 and p = 3.
double cos_half_pi_over_13(double p);

// Gamma(1 - p) cos(pi p / 2), continuous at p = 1 (value pi/2).
double gamma_one_minus_cos(double p);

// J_mu(t) for mu >= 0, t >= 0.
double bessel_j(double mu, double t);

// int_0^inf J_mu(t)^2 t^(nu-1) dt; requires -1/2 < -nu/2 < mu.
double bessel_mellin_sq(double mu, double nu);

// int_0^inf x^(p-2) sin(a x) dx for 1 < p < 2.
double dirichlet_sine(double a, double p);

// int_0^inf sin^2(a r) r^(p-3) dr for 0 < p < 2.
double sine_sq_mellin(double a, double p);

// d_p for p in (0, 4) minus {2}; removable points 1 and 3 handled.
double d_coeff(double p);

// p int_0^inf sin^2(x1 r) sin^2(x2 r) r^(p-5) dr for x1, x2 > 0, 0 < p < 4.
// Stable near x2 -> 0 and at p = 2.
double sin2sin2_mellin(double p, double x1, double x2);

// Coefficient functions. std::nullopt marks "not applicable".
std::optional<double> m_coeff(int n, double p);
double kappa(int n, double p);
double kappa_s(int n, double p, double s);
std::optional<double> lambda_coeff(int n, double p);
double binom_radial(int n, double p);

struct CoeffBundle {
  int n = 0;
  double p = 0;
  std::optional<double> m_p;
  std::optional<double> kappa_p;
  std::optional<double> kappa_s_p;
  std::optional<double> lambda_p;
  std::optional<double> d_p;
  std::optional<double> binom_radial;
  double omega_q = 0;  // omega_n
  std::optional<double> alpha_q;
};

CoeffBundle coefficients(int n, double p, std::optional<double> s = std::nullopt);

}  // namespace fmb
