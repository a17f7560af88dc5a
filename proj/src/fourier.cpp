#include "fmb/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fmb/quadrature.hpp"
#include "fmb/specfun.hpp"

namespace fmb {

namespace {

constexpr Complex kI(0.0, 1.0);

Complex polygon_chi_hat(const Mat& V, const Vec2& xi) {
  const int m = int(V.cols());
  const double r2 = xi.squaredNorm();
  double R = 0;
  for (int i = 0; i < m; ++i) R = std::max(R, Vec2(V.col(i)).norm());
  if (r2 * R * R < 0.25) {
    // sum_k (-i)^k / k! int <x, xi>^k over a fan of triangles (0, a, c):
    // int_T f^k = 2 Area k! / (k+2)! h_k(alpha, gamma)
    Complex sum = 0;
    for (int e = 0; e < m; ++e) {
      const Vec2 a = V.col(e), c = V.col((e + 1) % m);
      const double area = 0.5 * (a.x() * c.y() - a.y() * c.x());
      const double al = a.dot(xi), ga = c.dot(xi);
      Complex ik = 1;  // (-i)^k
      double hk_prev_al = 1;  // alpha^k
      double hk = 1;          // h_k(alpha, gamma)
      double coef = 1;        // 2 k! / (k+2)! -> 2 / ((k+1)(k+2)) / k! * k!
      double kfact = 1;
      for (int k = 0; k < 30; ++k) {
        if (k > 0) {
          hk_prev_al *= al;
          hk = hk * ga + hk_prev_al;
          ik *= -kI;
          kfact *= k;
        }
        coef = 2.0 / ((k + 1.0) * (k + 2.0)) / kfact;
        const Complex term = ik * (area * coef * hk);
        sum += term;
        if (k > 4 && std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
    }
    return sum;
  }
  Complex sum = 0;
  for (int e = 0; e < m; ++e) {
    const Vec2 a = V.col(e), c = V.col((e + 1) % m);
    const Vec2 d = c - a;
    const Vec2 nl(d.y(), -d.x());  // outward normal times edge length
    const Vec2 mid = 0.5 * (a + c);
    sum += nl.dot(xi) * std::exp(-kI * mid.dot(xi)) * sinc(0.5 * d.dot(xi));
  }
  return kI * sum / r2;
}

// n! V [z_0..z_n] g with g(z) = i^n e^{-iz}.
Complex simplex_chi_hat(const Mat& V, double vol, const Vec& xi) {
  const int n = int(V.rows());
  std::vector<double> z(n + 1);
  for (int j = 0; j <= n; ++j) z[j] = V.col(j).dot(xi);
  const double zmin = *std::min_element(z.begin(), z.end());
  const double zmax = *std::max_element(z.begin(), z.end());
  double nfact = 1;
  for (int k = 2; k <= n; ++k) nfact *= k;
  Complex in = 1;
  for (int k = 0; k < n; ++k) in *= kI;
  if (zmax - zmin <= 8) {
    // [z]g = sum_{m>=n} g^(m)(c)/m! h_{m-n}(z - c), g^(m)(c) = i^n (-i)^m e^{-ic}
    const double c = 0.5 * (zmin + zmax);
    std::vector<double> d(n + 1);
    for (int j = 0; j <= n; ++j) d[j] = z[j] - c;
    // h_k over all variables via DP on variables
    const int K = 80;
    std::vector<double> h(K + 1, 0.0);
    h[0] = 1;
    for (int j = 0; j <= n; ++j)
      for (int k = 1; k <= K; ++k) h[k] += d[j] * h[k - 1];
    Complex sum = 0;
    Complex mi = 1;  // (-i)^m
    for (int k = 0; k < n; ++k) mi *= -kI;
    double mfact = nfact;
    for (int k = 0; k <= K; ++k) {
      const int mm = n + k;
      if (k > 0) {
        mfact *= mm;
        mi *= -kI;
      }
      const Complex term = mi * (h[k] / mfact);
      sum += term;
      if (k > 10 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return nfact * vol * in * std::exp(-kI * c) * sum;
  }
  std::vector<Complex> t(n + 1);
  for (int j = 0; j <= n; ++j) t[j] = in * std::exp(-kI * z[j]);
  for (int level = 1; level <= n; ++level)
    for (int j = n; j >= level; --j) t[j] = (t[j] - t[j - 1]) / (z[j] - z[j - level]);
  return nfact * vol * t[n];
}

}  // namespace

double ball_chi_hat(int n, double radius) {
  if (radius < 1e-6) {
    // leading terms of the series
    return omega(n) * (1 - radius * radius / (2.0 * (n + 2)));
  }
  return std::pow(2 * kPi / radius, 0.5 * n) * bessel_j(0.5 * n, radius);
}

Complex chi_hat(const Body& b, const Vec& xi) {
  const int n = b.dim();
  switch (b.kind) {
    case BodyKind::Box: {
      double v = 1;
      for (int i = 0; i < n; ++i) v *= 2 * b.half_widths[i] * sinc(b.half_widths[i] * xi[i]);
      return v;
    }
    case BodyKind::Ellipsoid: {
      const double det = std::abs(b.linear.determinant());
      const double r = (b.linear.transpose() * xi).norm();
      return det * std::exp(-kI * b.center.dot(xi)) * ball_chi_hat(n, r);
    }
    case BodyKind::Polygon: return polygon_chi_hat(b.vertices, Vec2(xi[0], xi[1]));
    case BodyKind::Simplex:
      if (n == 2) return polygon_chi_hat(as_polygon(b), Vec2(xi[0], xi[1]));
      if (n == 1) {
        const double a = std::min(b.vertices(0, 0), b.vertices(0, 1));
        const double c = std::max(b.vertices(0, 0), b.vertices(0, 1));
        return (c - a) * std::exp(-kI * (0.5 * (a + c) * xi[0])) * sinc(0.5 * (c - a) * xi[0]);
      }
      return simplex_chi_hat(b.vertices, volume(b), xi);
  }
  return 0;
}

double g_hat(const Body& b, const Vec& xi) { return std::norm(chi_hat(b, xi)); }

std::optional<MellinResult> mellin_ghat_closed(const Body& b, const Vec& theta, double p) {
  if (!(p > 0)) throw DomainError("mellin_ghat: requires p > 0");
  const int n = b.dim();
  const MellinResult div{kInf, 0, MellinRoute::diverged};
  if (b.kind == BodyKind::Ellipsoid) {
    if (p >= n + 1) return div;
    const double ball = p / omega(n) * std::pow(2 * kPi, n) * bessel_mellin_sq(0.5 * n, p - n);
    const double det = std::abs(b.linear.determinant());
    const double s = (b.linear.transpose() * theta).norm();
    return MellinResult{det * std::pow(s, -p) * ball, 0, MellinRoute::closed_form};
  }
  if (b.kind == BodyKind::Box && n <= 2) {
    const Vec& a = b.half_widths;
    const double V = volume(b);
    if (n == 1) {
      if (p >= 2) return div;
      return MellinResult{p / V * 4 * sine_sq_mellin(a[0], p), 0, MellinRoute::closed_form};
    }
    const double t1 = std::abs(theta[0]), t2 = std::abs(theta[1]);
    if (t1 == 0 || t2 == 0) {
      if (p >= 2) return div;
      const int i = t1 == 0 ? 1 : 0;
      const int j = 1 - i;
      const double v = p / V * 4 * a[j] * a[j] * 4 * sine_sq_mellin(a[i], p);
      return MellinResult{v, 0, MellinRoute::closed_form};
    }
    if (p >= 4) return div;
    const double v = 16 / (V * t1 * t1 * t2 * t2) * sin2sin2_mellin(p, a[0] * t1, a[1] * t2);
    return MellinResult{v, 0, MellinRoute::closed_form};
  }
  return std::nullopt;
}

MellinResult mellin_ghat_split(const Body& b, const Vec& theta, double p, const QuadConfig& quad) {
  if (!(p > 0)) throw DomainError("mellin_ghat: requires p > 0");
  const double V = volume(b);
  const double w = width(b, theta);
  const double half = kPi / w;  // half period of the fastest oscillation
  auto f = [&](double r) { return g_hat(b, Vec(r * theta)) * std::pow(r, p - 1); };

  // head: int_0^half (g - V^2) r^(p-1) + V^2 half^p / p
  const double V2 = V * V;
  auto head_f = [&](double r) { return (g_hat(b, Vec(r * theta)) - V2) * std::pow(r, p - 1); };
  double S = integrate_gk(head_f, 0.0, half, 1e-14 * V2, 1e-13).value + V2 * std::pow(half, p) / p;

  const double R0 = half * std::max(4.0, std::ceil(quad.mellin_r0_scale / kPi));
  const auto tail = integrate_tail(f, half, R0, half, p, quad.mellin_tol, quad.max_doublings);
  if (tail.diverged) return {kInf, 0, MellinRoute::diverged};
  MellinResult out{S + tail.value, tail.error, MellinRoute::split_quadrature};
  out.value *= p / V;
  out.err_est *= p / V;
  return out;
}

MellinResult mellin_ghat(const Body& b, const Vec& theta, double p, const QuadConfig& quad) {
  if (auto c = mellin_ghat_closed(b, theta, p)) return *c;
  return mellin_ghat_split(b, theta, p, quad);
}

FourierIndex fourier_index(const Body& b) {
  const int n = b.dim();
  if (b.kind == BodyKind::Box) return {2.0, false};
  if (b.kind == BodyKind::Ellipsoid) return {double(n + 1), false};
  // Estimate: decay slope of windowed maxima of g_hat along sampled rays.
  std::vector<Vec> dirs;
  if (n == 2) {
    const Mat P = as_polygon(b);
    for (int i = 0; i < P.cols(); ++i) {
      const Vec2 d = Vec2(P.col((i + 1) % P.cols())) - Vec2(P.col(i));
      dirs.push_back(Vec(Vec2(d.y(), -d.x()).normalized()));
    }
    for (int k = 0; k < 32; ++k) dirs.push_back(Vec(Vec2(std::cos(kPi * k / 32), std::sin(kPi * k / 32))));
  } else {
    for (int i = 0; i < n; ++i) dirs.push_back(Vec::Unit(n, i));
  }
  double best = kInf;
  for (const auto& th : dirs) {
    const double w = width(b, th);
    std::vector<double> lx, ly;
    for (double r0 = 20 / w; r0 < 2e4 / w; r0 *= 2) {
      double mx = 0;
      for (int k = 0; k < 400; ++k) mx = std::max(mx, g_hat(b, Vec((r0 + r0 * k / 400.0) * th)));
      if (mx > 0) {
        lx.push_back(std::log(r0));
        ly.push_back(std::log(mx));
      }
    }
    const int m = int(lx.size());
    if (m < 3) continue;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    best = std::min(best, -slope);
  }
  return {std::max(2.0, best), true};
}

}  // namespace fmb
