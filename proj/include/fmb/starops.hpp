#pragma once

#include <functional>

#include "fmb/meanbodies.hpp"
#include "fmb/star.hpp"

namespace fmb {

using RadialFunction = std::function<RadialValue(const Vec&)>;

// grid_size >= 8 and even; one evaluation per direction, in parallel.
StarSample sample_star(const RadialEvaluator& eval, int grid_size);
StarSample sample_star(const RadialFunction& f, int n, int grid_size);

// Multiply every radius by c.
StarSample scaled(const StarSample& M, double c);

struct VolumeResult {
  double value = 0;
  bool lower_bound = false;  // markers present without an envelope
};
VolumeResult star_volume(const StarSample& M);

double dual_quermass(const StarSample& M, double p);
double dual_mixed_volume(const StarSample& D, const StarSample& M, double p);

struct InclusionResult {
  bool included = true;
  double worst_margin = kInf;  // min over directions of rho_B - rho_A
  Vec worst_dir;
};
InclusionResult inclusion_check(const StarSample& A, const StarSample& B, double tol);

struct ConvexityResult {
  bool applicable = true;
  bool convex = true;
  bool proxy_convex = true;
  bool hull_convex = true;
  double min_curvature_proxy = kInf;  // rho^2 + 2 rho'^2 - rho rho''
  double argmin_angle = 0;
  double hull_gap = 0;  // largest distance from a sample point to the hull boundary
};
ConvexityResult convexity_check_2d(const StarSample& M);

// Lower bound for d_BM(R_p Q_n, B_2^n).
double bm_lower_cube(int n, double p);

}  // namespace fmb
