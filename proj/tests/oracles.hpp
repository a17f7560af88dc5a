#pragma once

// Reference values computed without the library's closed forms: plain panel
// quadrature on [0, T] and an asymptotic expansion of the tail.

#include <cmath>
#include <complex>

#include "fmb/quadrature.hpp"
#include "fmb/specfun.hpp"

namespace oracle {

using fmb::kPi;

// int_T^inf u^s e^{iu} du by repeated integration by parts, s < 0.
inline std::complex<double> power_exp_tail(double s, double T, int terms = 14) {
  const std::complex<double> I(0, 1);
  std::complex<double> sum = 0, ik = 1;
  double fall = 1;  // s (s-1) ... (s-k+1)
  for (int k = 0; k < terms; ++k) {
    sum += ik * fall * std::pow(T, s - k);
    ik *= I;
    fall *= s - k;
  }
  return I * std::exp(I * T) * sum;
}

// int_a^b f on equal panels of width <= h, Gauss-Kronrod per panel.
template <typename F>
double panels(const F& f, double a, double b, double h) {
  const int k = std::max(1, int(std::ceil((b - a) / h)));
  double s = 0;
  for (int i = 0; i < k; ++i) s += fmb::integrate_gk(f, a + (b - a) * i / k, a + (b - a) * (i + 1) / k, 1e-14, 1e-13).value;
  return s;
}

// int_0^inf x^(p-2) sin(a x) dx, 1 < p < 2.
inline double sine_integral(double a, double p) {
  const double s = p - 2, T = 200 * kPi;
  auto f = [&](double u) { return std::pow(u, s) * std::sin(u); };
  double head = fmb::integrate_ts(f, 0, kPi, 1e-14).value + panels(f, kPi, T, kPi / 2);
  const double tail = power_exp_tail(s, T).imag();
  return std::pow(a, 1 - p) * (head + tail);
}

// int_0^inf J_mu(t)^2 t^(nu-1) dt. The tail uses
// J_mu^2 ~ (1/(pi t)) [1 + c/(2 t^2) + sin(2t - mu pi) + (c/t) cos(2t - mu pi)], c = (4mu^2 - 1)/4.
inline double bessel_sq_integral(double mu, double nu) {
  const double T = 1000;
  auto f = [&](double t) {
    // leading series term below 1e-8 keeps t^(nu-1) from overflowing
    const double w = t < 1e-8 ? std::pow(t, mu + (nu - 1) / 2) / (std::pow(2.0, mu) * std::tgamma(mu + 1))
                              : fmb::bessel_j(mu, t) * std::pow(t, (nu - 1) / 2);
    return w * w;
  };
  const double head = fmb::integrate_ts(f, 0, 1, 1e-14).value + panels(f, 1, T, kPi / 4);
  const double c = (4 * mu * mu - 1) / 4;
  double tail = std::pow(T, nu - 1) / (1 - nu) + c / 2 * std::pow(T, nu - 3) / (3 - nu);
  // int_T^inf t^s e^{i(2t - mu pi)} dt = e^{-i mu pi} 2^{-s-1} int_{2T}^inf u^s e^{iu} du
  auto osc = [&](double s) {
    return std::exp(std::complex<double>(0, -mu * kPi)) * std::pow(2.0, -s - 1) * power_exp_tail(s, 2 * T);
  };
  tail += osc(nu - 2).imag() + c * osc(nu - 3).real();
  return head + tail / kPi;
}

}  // namespace oracle
