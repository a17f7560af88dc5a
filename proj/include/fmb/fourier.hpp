#pragma once

#include <complex>
#include <optional>

#include "fmb/bodies.hpp"

namespace fmb {

using Complex = std::complex<double>;

// Fourier transform of the indicator, convention e^{-i<x, xi>}.
Complex chi_hat(const Body& b, const Vec& xi);
// |chi_hat|^2, the transform of the covariogram.
double g_hat(const Body& b, const Vec& xi);

// Transform of the unit-ball indicator at radius |x| (real).
double ball_chi_hat(int n, double radius);

enum class MellinRoute { closed_form, split_quadrature, diverged };

// value = (p / Vol K) int_0^inf g_hat(r theta) r^(p-1) dr, i.e. rho_{F_p K}^p.
struct MellinResult {
  double value = 0;
  double err_est = 0;
  MellinRoute route = MellinRoute::split_quadrature;
  bool diverged() const { return route == MellinRoute::diverged; }
};

// Closed form when available for the body and direction.
std::optional<MellinResult> mellin_ghat_closed(const Body& b, const Vec& theta, double p);
// Numerical route: head quadrature plus doubling tail blocks with
// Richardson extrapolation on the block partial sums.
MellinResult mellin_ghat_split(const Body& b, const Vec& theta, double p, const QuadConfig& quad = {});
// Closed form when available, split quadrature otherwise.
MellinResult mellin_ghat(const Body& b, const Vec& theta, double p, const QuadConfig& quad = {});

struct FourierIndex {
  double value = 0;
  bool estimated = false;
};
FourierIndex fourier_index(const Body& b);

}  // namespace fmb
