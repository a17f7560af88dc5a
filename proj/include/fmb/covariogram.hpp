#pragma once

#include <vector>

#include "fmb/bodies.hpp"

namespace fmb {

struct CovariogramValue {
  double value = 0;
  bool exact = true;
  double std_error = 0;  // Monte Carlo only
};

CovariogramValue covariogram(const Body& b, const Vec& x, const QuadConfig& quad = {});

// g of the unit ball in R^n at distance d (lens volume).
double ball_covariogram(int n, double d);

// Area of the intersection of two counterclockwise convex polygons.
double convex_intersection_area(const Mat& P, const Mat& Q);

// Values r in (0, rho_DK(theta)) where r -> g(r theta) may fail to be smooth.
std::vector<double> ray_breakpoints(const Body& b, const Vec& theta);

// A_{K,theta}(t) = Vol_{n-1}(K ∩ {<x,theta> = t}).
double parallel_section(const Body& b, const Vec& theta, double t);

// Support [lo, hi] of t -> A_{K,theta}(t) and the interior knots where it is
// not smooth (empty for ellipsoids).
struct SectionProfile {
  double lo = 0, hi = 0;
  std::vector<double> knots;
  bool polynomial = false;  // piecewise polynomial between knots
};
SectionProfile section_profile(const Body& b, const Vec& theta);

// (A * A(-.))(t) = Radon transform of g_K along theta at height t.
double radon_covariogram(const Body& b, const Vec& theta, double t, const QuadConfig& quad = {});

// Knots of t -> radon_covariogram in [0, width] (differences of section knots).
std::vector<double> radon_knots(const Body& b, const Vec& theta);

}  // namespace fmb
