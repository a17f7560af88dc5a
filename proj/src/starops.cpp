#include "fmb/starops.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fmb/parallel.hpp"
#include "fmb/specfun.hpp"

namespace fmb {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew's monotone chain, counterclockwise.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Vec2& a, const Vec2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (a + t * d - p).norm();
}

}  // namespace

StarSample sample_star(const RadialFunction& f, int n, int grid_size) {
  if (grid_size < 8 || grid_size % 2) throw DomainError("sample_star: grid_size must be even and >= 8");
  StarSample M;
  M.n = n;
  if (n == 2)
    M.directions = circle_grid(grid_size);
  else if (n == 3)
    M.directions = fibonacci_sphere(grid_size);
  else
    throw UnsupportedError("sample_star: n = 2 or 3");
  const int N = int(M.directions.cols());
  M.radii.resize(N);
  M.err_est.resize(N);
  // evaluate one half; the grid is closed under negation and every family is even
  const int half = N / 2;
  parallel_for(half, [&](int i) {
    const auto v = f(M.directions.col(i));
    M.radii[i] = M.radii[i + half] = v.value;
    M.err_est[i] = M.err_est[i + half] = v.err_est;
  });
  return M;
}

StarSample sample_star(const RadialEvaluator& eval, int grid_size) {
  return sample_star([&](const Vec& th) { return eval(th); }, eval.body.dim(), grid_size);
}

StarSample scaled(const StarSample& M, double c) {
  StarSample out = M;
  out.radii *= c;
  out.err_est *= std::abs(c);
  return out;
}

VolumeResult star_volume(const StarSample& M) {
  const int n = M.n, N = M.size();
  VolumeResult out;
  double sum = 0;
  for (int i = 0; i < N; ++i)
    if (std::isfinite(M.radii[i])) sum += std::pow(M.radii[i], n);
  const double w = sphere_area(n) / N;
  if (!M.has_markers()) {
    out.value = sum * w / n;
    return out;
  }
  if (n != 2 || !M.envelope) {
    out.value = sum * w / n;
    out.lower_bound = true;
    return out;
  }
  // Corrected trapezoid rule around each marker, from the neighbours at 1 and 2 steps.
  const double h = w;
  auto f = [&](int i) { return std::pow(M.radii[((i % N) + N) % N], n); };
  double corr = 0;
  for (int j = 0; j < N; ++j) {
    if (std::isfinite(M.radii[j])) continue;
    const double a1 = 0.5 * (f(j - 1) + f(j + 1));
    const double a2 = 0.5 * (f(j - 2) + f(j + 2));
    if (!std::isfinite(a1) || !std::isfinite(a2)) {
      out.lower_bound = true;
      continue;
    }
    if (M.envelope->kind == Envelope::Kind::log) {
      const double b = (a2 - a1) / std::log(2.0);
      const double s0 = a1 - b * std::log(h);
      corr += h * s0 + b * h * std::log(h / (2 * kPi));
    } else {
      const double alpha = M.envelope->exponent;
      const double A = a1 * std::pow(h, alpha);
      corr += -2 * A * std::riemann_zeta(alpha) * std::pow(h, 1 - alpha);
    }
  }
  out.value = (sum * h + corr) / n;
  return out;
}

double dual_quermass(const StarSample& M, double p) {
  return sphere_sum(M, [&](double r, const Vec&) { return std::pow(r, p); }) / M.n;
}

double dual_mixed_volume(const StarSample& D, const StarSample& M, double p) {
  require_same_grid(D, M);
  const int N = D.size(), n = D.n;
  double s = 0;
  for (int i = 0; i < N; ++i) s += std::pow(D.radii[i], p) * std::pow(M.radii[i], n - p);
  return s * sphere_area(n) / N / n;
}

InclusionResult inclusion_check(const StarSample& A, const StarSample& B, double tol) {
  require_same_grid(A, B);
  InclusionResult out;
  out.worst_dir = A.directions.col(0);
  for (int i = 0; i < A.size(); ++i) {
    const double a = A.radii[i], b = B.radii[i];
    double m;
    if (std::isinf(a) && std::isinf(b))
      m = kInf;
    else
      m = b - a;
    if (m < out.worst_margin) {
      out.worst_margin = m;
      out.worst_dir = A.directions.col(i);
    }
    if (m < -tol) out.included = false;
  }
  return out;
}

ConvexityResult convexity_check_2d(const StarSample& M) {
  if (M.n != 2) throw DomainError("convexity_check_2d: 2-D samples only");
  const int N = M.size();
  if (N < 256) throw ResolutionError("convexity_check_2d: grid below 256");
  ConvexityResult out;
  if (M.has_markers()) {
    out.applicable = false;
    return out;
  }
  const double h = 2 * kPi / N;
  auto r = [&](int i) { return M.radii[((i % N) + N) % N]; };
  auto proxy = [&](int j, int s) {
    const double hs = s * h;
    const double d1 = (r(j + s) - r(j - s)) / (2 * hs);
    const double d2 = (r(j + s) - 2 * r(j) + r(j - s)) / (hs * hs);
    return r(j) * r(j) + 2 * d1 * d1 - r(j) * d2;
  };
  for (int j = 0; j < N; ++j) {
    const double k1 = proxy(j, 1), k2 = proxy(j, 2);
    const double value = (4 * k1 - k2) / 3;
    const double err = std::abs(k1 - k2);
    if (value < out.min_curvature_proxy) {
      out.min_curvature_proxy = value;
      out.argmin_angle = 2 * kPi * j / N;
    }
    if (value < -10 * err - 1e-12 * r(j) * r(j)) out.proxy_convex = false;
  }
  std::vector<Vec2> pts(N);
  double scale = 0;
  for (int j = 0; j < N; ++j) {
    pts[j] = M.radii[j] * Vec2(M.directions(0, j), M.directions(1, j));
    scale = std::max(scale, M.radii[j]);
  }
  const auto hull = convex_hull(pts);
  for (const auto& p : pts) {
    double d = kInf;
    for (std::size_t e = 0; e < hull.size() && d > 0; ++e)
      d = std::min(d, segment_distance(p, hull[e], hull[(e + 1) % hull.size()]));
    out.hull_gap = std::max(out.hull_gap, d);
  }
  out.hull_convex = out.hull_gap <= 1e-10 * scale;
  out.convex = out.proxy_convex && out.hull_convex;
  return out;
}

double bm_lower_cube(int n, double p) {
  if (!(p > -1)) throw DomainError("bm_lower_cube: requires p > -1");
  if (p == 0) return std::sqrt(double(n)) * std::exp(1 - harmonic(n));
  return std::sqrt(double(n)) * std::pow((p + 1) / binom(n + p, p), 1 / p);
}

}  // namespace fmb
