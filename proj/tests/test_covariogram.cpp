#include <doctest.h>

#include <cmath>
#include <random>

#include "fmb/bodies.hpp"
#include "fmb/covariogram.hpp"
#include "fmb/meanbodies.hpp"
#include "fmb/quadrature.hpp"

using namespace fmb;
using doctest::Approx;

namespace {

Vec unit(double phi) { return Vec2(std::cos(phi), std::sin(phi)); }

Body pentagon() {
  Mat V(2, 5);
  V << 0, 2, 2.5, 1, -0.3, 0, 0, 1.2, 2, 1;
  return make_polygon(V);
}

}  // namespace

TEST_CASE("covariogram at reference points") {
  const Body Q = make_cube(2);
  const auto g0 = covariogram(Q, Vec2(0, 0));
  CHECK(g0.value == 1);
  CHECK(g0.exact);
  CHECK(covariogram(Q, Vec2(0.5, 0)).value == Approx(0.5).epsilon(1e-15));
  CHECK(covariogram(make_ball(2), Vec2(2, 0)).value == Approx(0).scale(1));
  CHECK(covariogram(make_ball(2), Vec2(0, 0)).value == Approx(kPi).epsilon(1e-14));
  CHECK(covariogram(make_ball(2), Vec2(3, 0)).value == 0);
}

TEST_CASE("polygon covariogram against polygon clipping") {
  // areas of P ∩ (P + x) computed with shapely
  const Body P = pentagon();
  struct Row { double x, y, area; };
  const Row rows[] = {{0.3, 0.1, 3.2259678477690286},
                      {-0.7, 0.4, 2.185454545454546},
                      {1.1, -0.9, 0.8925681818181818},
                      {0.0, 1.5, 0.396875},
                      {2.0, 0.3, 0.5309547244094488}};
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(covariogram(P, Vec2(r.x, r.y)).value == Approx(r.area).epsilon(1e-12));
    CHECK(covariogram(P, Vec2(-r.x, -r.y)).value == Approx(r.area).epsilon(1e-12));
  }
  CHECK(covariogram(P, Vec2(0, 0)).value == Approx(3.9).epsilon(1e-14));
}

TEST_CASE("product rule for the square") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.2, 1.2);
  for (int i = 0; i < 50; ++i) {
    const double a = U(rng), b = U(rng);
    const double expect = std::max(0.0, 1 - std::abs(a)) * std::max(0.0, 1 - std::abs(b));
    CHECK(covariogram(make_cube(2), Vec2(a, b)).value == Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("ellipse covariogram is the scaled disk lens") {
  Mat T(2, 2);
  T << 2, 0.5, 0, 0.7;
  const Body E = make_ellipsoid(T, Vec2(0.1, 0.2));
  const Vec x = Vec2(0.4, -0.3);
  const double d = T.inverse().operator*(x).norm();
  const double lens = 2 * std::acos(d / 2) - d / 2 * std::sqrt(4 - d * d);
  CHECK(covariogram(E, x).value == Approx(std::abs(T.determinant()) * lens).epsilon(1e-12));
}

TEST_CASE("ball lens volume in three dimensions") {
  for (double d : {0.0, 0.5, 1.3, 1.99}) {
    CAPTURE(d);
    CHECK(ball_covariogram(3, d) == Approx(kPi * (4 + d) * (2 - d) * (2 - d) / 12).epsilon(1e-12));
  }
  CHECK(ball_covariogram(3, 2.5) == 0);
}

TEST_CASE("simplex covariogram") {
  Mat S(2, 3);
  S << 0, 1, 0, 0, 0, 1;
  const Body T2 = make_simplex(S), P2 = make_polygon(S);
  for (const Vec& x : {Vec(Vec2(0.2, 0.1)), Vec(Vec2(-0.3, 0.5)), Vec(Vec2(0.9, -0.05))})
    CHECK(covariogram(T2, x).value == Approx(covariogram(P2, x).value).epsilon(1e-12));

  // conv(0, e1, e2, e3) shifted by t e1 overlaps in a copy scaled by 1 - t
  Mat S3 = Mat::Zero(3, 4);
  S3.rightCols(3) = Mat::Identity(3, 3);
  const Body T3 = make_simplex(S3);
  const auto g = covariogram(T3, Eigen::Vector3d(0.3, 0, 0));
  const double expect = std::pow(0.7, 3) / 6;
  if (g.exact) {
    CHECK(g.value == Approx(expect).epsilon(1e-12));
  } else {
    CHECK(g.std_error > 0);
    CHECK(std::abs(g.value - expect) <= 5 * g.std_error);
  }
}

TEST_CASE("covariogram is (1/n)-concave along rays") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> A(0, 2 * kPi), U(0, 1);
  const Body bodies[] = {pentagon(), make_cube(2), make_random_polygon(8, 4)};
  for (const auto& K : bodies)
    for (int i = 0; i < 40; ++i) {
      const Vec th = unit(A(rng));
      const double w = difference_body_radial(K, th);
      double r1 = U(rng) * w, r2 = U(rng) * w;
      if (r1 > r2) std::swap(r1, r2);
      auto h = [&](double r) { return std::sqrt(covariogram(K, Vec(r * th)).value); };
      CHECK(h((r1 + r2) / 2) >= (h(r1) + h(r2)) / 2 - 1e-9);
    }
}

TEST_CASE("integral of the covariogram is the squared volume") {
  const Body P = centered(pentagon());
  // tensor midpoint rule over the bounding box of DK
  const auto [lo, hi] = bounding_box(P);
  const Vec ext = hi - lo;
  const int N = 300;
  double sum = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const Vec2 x(-ext[0] + 2 * ext[0] * (i + 0.5) / N, -ext[1] + 2 * ext[1] * (j + 0.5) / N);
      sum += covariogram(P, x).value;
    }
  sum *= 4 * ext[0] * ext[1] / (N * N);
  CHECK(sum == Approx(3.9 * 3.9).epsilon(5e-3));
  // the Radon route: int |<theta, z>|^0 g(z) dz
  CHECK(radon_moment(P, unit(0.4), 0).value == Approx(3.9 * 3.9).epsilon(1e-9));
}

TEST_CASE("parallel sections") {
  CHECK(parallel_section(make_ball(2), Vec2(1, 0), 0) == Approx(2));
  CHECK(parallel_section(make_box(Vec2(1, 1)), Vec2(1, 0), 0.5) == Approx(2));
  CHECK(parallel_section(make_box(Vec2(1, 1)), Vec2(1, 0), 1.5) == 0);
  CHECK(parallel_section(make_cube(3), Eigen::Vector3d(1, 0, 0), 0.2) == Approx(1));

  // int A(t) dt = Vol(K) across variants and directions
  std::mt19937_64 rng(2);
  std::normal_distribution<double> N;
  const Body bodies[] = {make_cube(3), make_ball(3), make_box(Vec2(0.3, 1.1)), centered(pentagon())};
  for (const auto& K : bodies) {
    Vec th(K.dim());
    for (int k = 0; k < K.dim(); ++k) th[k] = N(rng);
    th.normalize();
    const auto prof = section_profile(K, th);
    std::vector<double> br{prof.lo, prof.hi};
    br.insert(br.end(), prof.knots.begin(), prof.knots.end());
    const auto I = integrate_gk_breaks([&](double t) { return parallel_section(K, th, t); }, br, 1e-13, 1e-12);
    CHECK(I.value == Approx(volume(K)).epsilon(1e-9));
  }
}

TEST_CASE("Radon transform of the covariogram") {
  // disk along e1 at 0: int_{-1}^{1} 4 (1 - s^2) ds
  CHECK(radon_covariogram(make_ball(2), Vec2(1, 0), 0) == Approx(16.0 / 3).epsilon(1e-10));
  CHECK(radon_covariogram(make_ball(2), Vec2(1, 0), 2.5) == 0);
  // unit square along e1: (A * A(-.))(t) = 1 - |t|
  CHECK(radon_covariogram(make_cube(2), Vec2(1, 0), 0.3) == Approx(0.7).epsilon(1e-12));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-2, 2);
  const Body P = centered(pentagon());
  const Vec th = unit(1.1);
  for (int i = 0; i < 10; ++i) {
    const double t = U(rng);
    CHECK(radon_covariogram(P, th, t) == Approx(radon_covariogram(P, th, -t)).epsilon(1e-10));
  }
}
