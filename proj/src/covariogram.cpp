#include "fmb/covariogram.hpp"

#include <algorithm>
#include <cmath>

#include "fmb/quadrature.hpp"
#include "fmb/specfun.hpp"

namespace fmb {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Vec2>& P) {
  double s = 0;
  for (std::size_t i = 0; i < P.size(); ++i) s += cross2(P[i], P[(i + 1) % P.size()]);
  return 0.5 * s;
}

// Outward unit normals and offsets of a CCW polygon.
void polygon_halfspaces(const Mat& V, std::vector<Vec2>& normals, std::vector<double>& offsets) {
  const int m = int(V.cols());
  normals.resize(m);
  offsets.resize(m);
  for (int i = 0; i < m; ++i) {
    const Vec2 a = V.col(i), b = V.col((i + 1) % m);
    const Vec2 e = b - a;
    normals[i] = Vec2(e.y(), -e.x()) / e.norm();
    offsets[i] = normals[i].dot(a);
  }
}

void sort_unique(std::vector<double>& v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  v.swap(out);
}

// Density of <theta, X> for X uniform in the box, times the volume.
double box_section(const Vec& a, const Vec& theta, double t) {
  const int n = int(a.size());
  const double scale = a.cwiseProduct(theta.cwiseAbs()).maxCoeff();
  double factor = 1;
  std::vector<double> c;
  for (int i = 0; i < n; ++i) {
    const double ci = a[i] * std::abs(theta[i]);
    if (ci <= 1e-9 * scale)
      factor *= 2 * a[i];
    else
      c.push_back(ci);
  }
  const int m = int(c.size());
  double prod = 1;
  for (double ci : c) prod *= 2 * ci;
  // A = Vol(box along active axes) / |prod theta| * density; combine:
  // density of sum U_i, U_i ~ U[-c_i, c_i]:
  //   f(t) = sum_eps (prod eps) (t + sum eps_i c_i)_+^(m-1) / ((m-1)! prod 2c_i)
  double sum = 0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    double shift = 0;
    int sign = 1;
    for (int i = 0; i < m; ++i) {
      if (mask & (1 << i)) {
        shift -= c[i];
        sign = -sign;
      } else {
        shift += c[i];
      }
    }
    const double x = t + shift;
    if (x > 0) sum += sign * (m == 1 ? 1.0 : std::pow(x, m - 1));
  }
  double fact = 1;
  for (int k = 2; k < m; ++k) fact *= k;
  const double density = sum / (fact * prod);
  double vol_active = 1;
  for (int i = 0; i < n; ++i)
    if (a[i] * std::abs(theta[i]) > 1e-9 * scale) vol_active *= 2 * a[i];
  return std::max(0.0, factor * vol_active * density);
}

}  // namespace

double convex_intersection_area(const Mat& P, const Mat& Q) {
  std::vector<Vec2> poly;
  for (int i = 0; i < P.cols(); ++i) poly.emplace_back(P.col(i));
  const int m = int(Q.cols());
  for (int e = 0; e < m && !poly.empty(); ++e) {
    const Vec2 a = Q.col(e), b = Q.col((e + 1) % m);
    const Vec2 d = b - a;
    std::vector<Vec2> out;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2& p = poly[i];
      const Vec2& q = poly[(i + 1) % k];
      const double sp = cross2(d, p - a);
      const double sq = cross2(d, q - a);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) {
        const double s = sp / (sp - sq);
        out.push_back(p + s * (q - p));
      }
    }
    poly.swap(out);
  }
  if (poly.size() < 3) return 0;
  return std::max(0.0, signed_area(poly));
}

double ball_covariogram(int n, double d) {
  d = std::abs(d);
  if (d >= 2) return 0;
  const double h = d / 2;
  switch (n) {
    case 1: return 2 - d;
    case 2: return 2 * (std::acos(h) - h * std::sqrt(1 - h * h));
    case 3: return 2 * kPi * ((1 - h) - (1 - h * h * h) / 3);
    default: break;
  }
  const double e = 0.5 * (n - 1);
  const auto r = integrate_ts3(
      [&](double t, double, double right) { return std::pow(right * (1 + t), e); }, h, 1.0, 1e-14);
  return 2 * omega(n - 1) * r.value;
}

CovariogramValue covariogram(const Body& b, const Vec& x, const QuadConfig& quad) {
  const int n = b.dim();
  switch (b.kind) {
    case BodyKind::Box: {
      double g = 1;
      for (int i = 0; i < n; ++i) g *= std::max(0.0, 2 * b.half_widths[i] - std::abs(x[i]));
      return {g, true, 0};
    }
    case BodyKind::Ellipsoid: {
      const Vec y = b.linear.partialPivLu().solve(x);
      return {std::abs(b.linear.determinant()) * ball_covariogram(n, y.norm()), true, 0};
    }
    case BodyKind::Polygon:
    case BodyKind::Simplex:
      if (n == 2) {
        const Mat P = as_polygon(b);
        const Mat Px = P.colwise() + x;
        return {convex_intersection_area(P, Px), true, 0};
      }
      if (n == 1) {
        const double len = std::abs(b.vertices(0, 1) - b.vertices(0, 0));
        return {std::max(0.0, len - std::abs(x[0])), true, 0};
      }
      break;
  }
  // Monte Carlo fallback: g(x) = V * P(X - x in K).
  const double V = volume(b);
  const auto s = sample_uniform(b, quad.mc_samples, quad.seed);
  int hits = 0;
  for (int j = 0; j < s.points.cols(); ++j)
    if (contains(b, s.points.col(j) - x)) ++hits;
  const double N = double(s.points.cols());
  const double p = hits / N;
  return {V * p, false, V * std::sqrt(p * (1 - p) / N)};
}

std::vector<double> ray_breakpoints(const Body& b, const Vec& theta) {
  std::vector<double> out;
  if (!(b.dim() == 2 && b.kind != BodyKind::Ellipsoid)) return out;
  const Mat V = as_polygon(b);
  std::vector<Vec2> nu;
  std::vector<double> h;
  polygon_halfspaces(V, nu, h);
  const double rmax = difference_body_radial(b, theta);
  const Vec2 th(theta[0], theta[1]);
  for (int i = 0; i < V.cols(); ++i) {
    const Vec2 v = V.col(i);
    for (std::size_t e = 0; e < nu.size(); ++e) {
      const double c = nu[e].dot(th);
      if (std::abs(c) < 1e-15) continue;
      for (double r : {(h[e] - nu[e].dot(v)) / c, (nu[e].dot(v) - h[e]) / c})
        if (r > 1e-12 * rmax && r < rmax * (1 - 1e-12)) out.push_back(r);
    }
  }
  sort_unique(out, 1e-13 * rmax);
  return out;
}

SectionProfile section_profile(const Body& b, const Vec& theta) {
  SectionProfile p;
  p.hi = support(b, theta);
  p.lo = -support(b, -theta);
  const int n = b.dim();
  if (b.kind == BodyKind::Ellipsoid) return p;
  p.polynomial = true;
  if (n == 2 || b.kind == BodyKind::Simplex) {
    const Mat V = n == 2 ? as_polygon(b) : b.vertices;
    for (int i = 0; i < V.cols(); ++i) p.knots.push_back(V.col(i).dot(theta));
  } else {
    const Vec c = b.half_widths.cwiseProduct(theta.cwiseAbs());
    for (int mask = 0; mask < (1 << n); ++mask) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += (mask & (1 << i)) ? -c[i] : c[i];
      p.knots.push_back(s);
    }
  }
  const double w = p.hi - p.lo;
  std::vector<double> inner;
  for (double k : p.knots)
    if (k > p.lo + 1e-13 * w && k < p.hi - 1e-13 * w) inner.push_back(k);
  sort_unique(inner, 1e-13 * w);
  p.knots = inner;
  return p;
}

double parallel_section(const Body& b, const Vec& theta, double t) {
  const int n = b.dim();
  const double hi = support(b, theta), lo = -support(b, -theta);
  if (t <= lo || t >= hi) return 0;
  switch (b.kind) {
    case BodyKind::Ellipsoid: {
      const Vec v = b.linear.transpose() * theta;
      const double s = v.norm();
      const double u = (t - b.center.dot(theta)) / s;
      if (std::abs(u) >= 1) return 0;
      return std::abs(b.linear.determinant()) / s * omega(n - 1) * std::pow(1 - u * u, 0.5 * (n - 1));
    }
    case BodyKind::Box:
      if (n != 2) return box_section(b.half_widths, theta, t);
      [[fallthrough]];
    case BodyKind::Polygon:
    case BodyKind::Simplex: {
      if (n == 1) return 1;
      if (n == 2) {
        const Mat V = as_polygon(b);
        std::vector<Vec2> nu;
        std::vector<double> h;
        polygon_halfspaces(V, nu, h);
        const Vec2 th(theta[0], theta[1]);
        const Vec2 tau(-th.y(), th.x());
        double smin = -kInf, smax = kInf;
        for (std::size_t e = 0; e < nu.size(); ++e) {
          const double c = nu[e].dot(tau);
          const double rhs = h[e] - t * nu[e].dot(th);
          if (c > 1e-15)
            smax = std::min(smax, rhs / c);
          else if (c < -1e-15)
            smin = std::max(smin, rhs / c);
          else if (rhs < 0)
            return 0;
        }
        return std::max(0.0, smax - smin);
      }
      // simplex, n >= 3: V * n * [a_0..a_n] (a - t)_+^(n-1)
      std::vector<double> a(n + 1);
      for (int i = 0; i <= n; ++i) a[i] = b.vertices.col(i).dot(theta);
      const double w = hi - lo;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j < i; ++j)
          if (std::abs(a[i] - a[j]) < 1e-7 * w) a[i] += 1e-7 * w * (i + 1);
      double s = 0;
      for (int i = 0; i <= n; ++i) {
        double den = 1;
        for (int j = 0; j <= n; ++j)
          if (j != i) den *= a[i] - a[j];
        const double x = a[i] - t;
        if (x > 0) s += std::pow(x, n - 1) / den;
      }
      return std::max(0.0, volume(b) * n * s);
    }
  }
  return 0;
}

double radon_covariogram(const Body& b, const Vec& theta, double t, const QuadConfig& quad) {
  t = std::abs(t);
  const auto prof = section_profile(b, theta);
  const double a = prof.lo + t, c = prof.hi;
  if (a >= c) return 0;
  auto f = [&](double s) { return parallel_section(b, theta, s) * parallel_section(b, theta, s - t); };
  std::vector<double> br{a, c};
  for (double k : prof.knots) {
    if (k > a && k < c) br.push_back(k);
    if (k + t > a && k + t < c) br.push_back(k + t);
  }
  if (prof.polynomial) return integrate_gk_breaks(f, br, quad.abs_tol, quad.rel_tol).value;
  std::sort(br.begin(), br.end());
  double sum = 0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i)
    sum += integrate_ts(f, br[i], br[i + 1], 1e-14).value;
  return sum;
}

std::vector<double> radon_knots(const Body& b, const Vec& theta) {
  const auto prof = section_profile(b, theta);
  std::vector<double> k = prof.knots;
  k.push_back(prof.lo);
  k.push_back(prof.hi);
  const double w = prof.hi - prof.lo;
  std::vector<double> out;
  for (double x : k)
    for (double y : k) {
      const double d = x - y;
      if (d > 1e-13 * w && d < w * (1 - 1e-13)) out.push_back(d);
    }
  sort_unique(out, 1e-13 * w);
  return out;
}

}  // namespace fmb
