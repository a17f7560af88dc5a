#pragma once

#include <optional>
#include <vector>

#include "fmb/bodies.hpp"
#include "fmb/star.hpp"

namespace fmb {

enum class Family { R, F, Z, GammaPolar, I };
enum class Route { direct, closed_form, z_route, i_route };

struct RadialValue {
  double value = 0;  // +inf for divergent F directions
  double err_est = 0;
};

// rho_{R_p K}(theta), p > -1.
RadialValue radial_R(const Body& b, double p, const Vec& theta, const QuadConfig& quad = {});
// Boxes (elementary symmetric polynomials) and ellipsoids; nullopt otherwise.
std::optional<double> radial_R_closed(const Body& b, double p, const Vec& theta);

// rho_{F_p K}(theta), p > 0.
RadialValue radial_F(const Body& b, double p, const Vec& theta, Route route = Route::direct,
                     const QuadConfig& quad = {});

// rho_{Z°_p K}(theta), p > -1.
RadialValue radial_Z(const Body& b, double p, const Vec& theta, const QuadConfig& quad = {});

// 2 int_0^w t^s Rg(t) dt = int |<theta, z>|^s g_K(z) dz, s > -1; with
// log_weight the integrand weight is log t instead.
RadialValue radon_moment(const Body& b, const Vec& theta, double s, bool log_weight = false,
                         const QuadConfig& quad = {});

// Even probability density on the line.
struct DensitySpec1D {
  enum class Kind { s_affine, tabulated };
  Kind kind = Kind::s_affine;
  double s = 1, rho = 1;
  std::vector<double> grid;    // t >= 0, increasing, grid[0] = 0
  std::vector<double> values;  // density at grid points, zero beyond

  static DensitySpec1D s_affine_density(double s, double rho);
  // Normalized so that the even extension integrates to 1.
  static DensitySpec1D tabulated_density(std::vector<double> grid, std::vector<double> values);
  double operator()(double t) const;
};

// rho_{Gamma°_q}(theta) of a star sample, of a density at +1, or of an
// exact body (via parallel sections).
double radial_gamma_polar(const StarSample& M, double q, const Vec& theta);
double radial_gamma_polar(const DensitySpec1D& g, double q);
double radial_gamma_polar(const Body& b, double q, const Vec& theta, const QuadConfig& quad = {});

// Vol_{n-1}(M ∩ theta^perp) from a sample in dimension 2 or 3.
double intersection_body_radial(const StarSample& M, const Vec& theta);

struct RadialEvaluator {
  Body body;
  Family family = Family::R;
  double p = 1;
  Route route = Route::direct;
  QuadConfig quad;

  RadialValue operator()(const Vec& theta) const;
};

}  // namespace fmb
