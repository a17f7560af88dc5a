#pragma once

#include <functional>
#include <optional>

#include "fmb/types.hpp"

namespace fmb {

// Behaviour of rho^n next to an infinite marker phi0:
//   log:   rho^n ~ s0 + b log|phi - phi0|
//   power: rho^n ~ A |phi - phi0|^(-exponent), 0 < exponent < 1
struct Envelope {
  enum class Kind { log, power };
  Kind kind = Kind::log;
  double exponent = 0;
};

// Radial function sampled on a grid closed under negation. In 2-D the
// directions are (cos phi_j, sin phi_j) with phi_j = 2 pi j / N; in 3-D a
// symmetrized Fibonacci lattice.
struct StarSample {
  int n = 2;
  Mat directions;  // n x N
  Vec radii;       // +inf marks divergent directions
  Vec err_est;
  std::optional<Envelope> envelope;

  int size() const { return int(radii.size()); }
  bool has_markers() const;
};

Mat circle_grid(int count);
// count even; the second half is the negation of the first.
Mat fibonacci_sphere(int count);

// Same dimension and identical directions.
bool same_grid(const StarSample& a, const StarSample& b);
void require_same_grid(const StarSample& a, const StarSample& b);

// Radial function between grid points: periodic 4-point cubic in 2-D,
// local quadratic least squares on nearest nodes in 3-D.
double interpolate(const StarSample& M, const Vec& theta);
double interpolate_angle(const StarSample& M, double phi);

// Largest angular gap between neighbouring directions (radians).
double max_angular_gap(const StarSample& M);

// 2-D only: int_0^{2 pi} w(phi) h(phi, rho(phi)) dphi with rho interpolated
// and w = |cos(phi - phi0)|^q, or log|cos(phi - phi0)| when log_weight. The
// zeros of the cosine are integrated with a tanh-sinh rule.
double cosine_weighted_integral(const StarSample& M, double phi0, double q,
                                const std::function<double(double, double)>& h, bool log_weight = false);

// Equal-weight (3-D) or trapezoid (2-D) sphere integral of h(rho, direction)
// over finite entries.
double sphere_sum(const StarSample& M, const std::function<double(double, const Vec&)>& h);

double sphere_area(int n);

}  // namespace fmb
