#pragma once

#include <cstdint>
#include <vector>

#include "fmb/types.hpp"

namespace fmb {

enum class BodyKind { Box, Ellipsoid, Polygon, Simplex };

// Exact convex body. Boxes are origin-centered with the given half widths.
// Ellipsoids are linear * B + center. Polygon vertices are the columns of a
// 2 x m matrix in counterclockwise order; simplex vertices are the columns of
// an n x (n+1) matrix.
struct Body {
  BodyKind kind = BodyKind::Box;
  Vec half_widths;
  Mat linear;
  Vec center;
  Mat vertices;

  int dim() const;
};

struct AffineMap {
  Mat linear;
  Vec shift;

  static AffineMap identity(int n) { return {Mat::Identity(n, n), Vec::Zero(n)}; }
};

struct IsotropicData {
  AffineMap normalizing_map;
  double L_K = 0;
};

Body make_box(const Vec& half_widths);
Body make_cube(int n, double half_width = 0.5);
Body make_ellipsoid(const Mat& linear, const Vec& center);
Body make_ball(int n, double radius = 1.0);
Body make_polygon(const Mat& vertices);
Body make_simplex(const Mat& vertices);
Body make_regular_polygon(int m, double circumradius = 1.0);
// Random convex polygon from m sorted angles; deterministic in the seed.
Body make_random_polygon(int m, std::uint64_t seed);

// Throws ValidationError when degenerate or malformed.
void validate(const Body& b);

double volume(const Body& b);
Vec centroid(const Body& b);
// Translate so that the centroid is the origin.
Body centered(const Body& b);

double support(const Body& b, const Vec& dir);
bool contains(const Body& b, const Vec& x);
Body apply_affine(const AffineMap& map, const Body& b);

// h_K(theta) + h_K(-theta).
double width(const Body& b, const Vec& theta);
// Radial function of DK = K - K (longest chord of K parallel to theta).
double difference_body_radial(const Body& b, const Vec& theta);
// Radial function of the polar of DK, 1 / (h_K(theta) + h_K(-theta)).
double polar_difference_radial(const Body& b, const Vec& theta);

// Counterclockwise polygon (2 x m) for 2-D boxes, polygons and triangles.
Mat as_polygon(const Body& b);
bool is_planar_polytope(const Body& b);

// Axis-aligned bounding box as (lo, hi).
std::pair<Vec, Vec> bounding_box(const Body& b);

// int_K x x^T dx, exact for every variant.
Mat second_moment(const Body& b);

struct UniformSample {
  Mat points;  // n x count
  std::uint64_t proposals = 0;
};
UniformSample sample_uniform(const Body& b, int count, std::uint64_t seed);

IsotropicData isotropic_position(const Body& b, const QuadConfig& quad = {});

// Facets {normal, offset} of the convex hull of the columns of V (n <= 3),
// normals outward with offset > 0 when the origin is interior.
struct Halfspace {
  Vec normal;
  double offset;
};
std::vector<Halfspace> hull_facets(const Mat& V);

}  // namespace fmb
