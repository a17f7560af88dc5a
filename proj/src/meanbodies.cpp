#include "fmb/meanbodies.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>

#include "fmb/covariogram.hpp"
#include "fmb/fourier.hpp"
#include "fmb/quadrature.hpp"
#include "fmb/specfun.hpp"

namespace fmb {

namespace {

constexpr double kTsTol = 1e-12;

std::vector<double> panel_edges(double lo, double hi, std::vector<double> inner) {
  inner.push_back(lo);
  inner.push_back(hi);
  std::sort(inner.begin(), inner.end());
  std::vector<double> out;
  for (double x : inner)
    if (x >= lo && x <= hi && (out.empty() || x - out.back() > 1e-14 * (hi - lo))) out.push_back(x);
  if (out.back() < hi) out.back() = hi;
  return out;
}

Vec perp(const Vec& th) {
  Vec u(2);
  u << -th[1], th[0];
  return u;
}

// Orthonormal pair spanning theta^perp in R^3.
std::pair<Vec, Vec> perp_frame(const Vec& th) {
  Vec e1 = std::abs(th[0]) < 0.9 ? Vec::Unit(3, 0) : Vec::Unit(3, 1);
  e1 = (e1 - e1.dot(th) * th).normalized();
  Vec e2(3);
  e2 << th[1] * e1[2] - th[2] * e1[1], th[2] * e1[0] - th[0] * e1[2], th[0] * e1[1] - th[1] * e1[0];
  return {e1, e2};
}

// Barycentric interpolant on 8 Chebyshev points of the second kind.
class ChebyshevPanel {
 public:
  template <typename F>
  ChebyshevPanel(const F& f, double a, double b) : a_(a), b_(b) {
    for (int k = 0; k < kNodes; ++k) {
      x_[k] = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * k / (kNodes - 1));
      y_[k] = f(x_[k]);
    }
  }
  double operator()(double t) const {
    double num = 0, den = 0;
    for (int k = 0; k < kNodes; ++k) {
      const double d = t - x_[k];
      if (std::abs(d) < 1e-15 * (b_ - a_)) return y_[k];  // 1/d would overflow
      const double w = (k % 2 ? -1.0 : 1.0) * (k == 0 || k == kNodes - 1 ? 0.5 : 1.0) / d;
      num += w * y_[k];
      den += w;
    }
    return num / den;
  }

 private:
  static constexpr int kNodes = 8;
  double a_, b_;
  double x_[kNodes], y_[kNodes];
};

}  // namespace

std::optional<double> radial_R_closed(const Body& b, double p, const Vec& theta) {
  if (!(p > -1)) throw DomainError("radial_R: requires p > -1");
  const Vec th = theta.normalized();
  const int n = b.dim();
  if (b.kind == BodyKind::Ellipsoid) {
    const double scale = 1 / b.linear.partialPivLu().solve(th).norm();
    if (p == 0) return scale * 2 * std::exp(0.5 * (digamma(0.5) - digamma(0.5 * n + 1)));
    const double cp = std::pow(2.0, p + 1) * omega(n + p) / ((p + 1) * omega(n) * omega(p + 1));
    return scale * std::pow(cp, 1 / p);
  }
  if (b.kind != BodyKind::Box) return std::nullopt;
  // g(r theta) / V = prod (1 - r t_i)
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = std::abs(th[i]) / (2 * b.half_widths[i]);
  const double rd = 1 / *std::max_element(t.begin(), t.end());
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k >= 1; --k) e[k] += t[i] * e[k - 1];
  if (p == 0) {
    double L = std::log(rd);
    for (int k = 1; k <= n; ++k) L += (k % 2 ? -1 : 1) * e[k] * std::pow(rd, k) / k;
    return std::exp(L);
  }
  double S = 0;
  for (int k = 0; k <= n; ++k) S += (k % 2 ? -1 : 1) * e[k] * p / (p + k) * std::pow(rd, p + k);
  return std::pow(S, 1 / p);
}

RadialValue radial_R(const Body& b, double p, const Vec& theta, const QuadConfig& quad) {
  if (!(p > -1)) throw DomainError("radial_R: requires p > -1");
  const Vec th = theta.normalized();
  const double V = volume(b);
  const double rd = difference_body_radial(b, th);
  const auto edges = panel_edges(0, rd, ray_breakpoints(b, th));
  auto u = [&](double r) { return covariogram(b, Vec(r * th), quad).value / V; };
  if (p >= 1) {
    double S = 0, err = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const auto r = integrate_ts([&](double r) { return u(r) * std::pow(r, p - 1); }, edges[i], edges[i + 1], kTsTol);
      S += r.value;
      err += r.error;
    }
    const double rho = std::pow(p * S, 1 / p);
    return {rho, rho * err / S};
  }
  // int (u - 1) r^(p-1). Below delta, (u - 1)/r = a + b r from two samples;
  // evaluating u - 1 there directly only returns rounding noise.
  const double delta = 1e-4 * edges[1];
  const double v1 = (u(delta) - 1) / delta, v2 = (u(2 * delta) - 1) / (2 * delta);
  const double bb = (v2 - v1) / delta, aa = v1 - bb * delta;
  double S = p == 0 ? aa * delta + bb * delta * delta / 2
                    : aa * std::pow(delta, p + 1) / (p + 1) + bb * std::pow(delta, p + 2) / (p + 2);
  double err = 0;
  auto lower = edges;
  lower[0] = delta;
  for (std::size_t i = 0; i + 1 < lower.size(); ++i) {
    const auto r = integrate_ts([&](double r) { return (u(r) - 1) * std::pow(r, p - 1); }, lower[i], lower[i + 1],
                                kTsTol);
    S += r.value;
    err += r.error;
  }
  if (p == 0) {
    const double rho = rd * std::exp(S);
    return {rho, rho * err};
  }
  S = std::pow(rd, p) + p * S;
  const double rho = std::pow(S, 1 / p);
  return {rho, rho * err / std::abs(S)};
}

RadialValue radon_moment(const Body& b, const Vec& theta, double s, bool log_weight, const QuadConfig& quad) {
  if (!log_weight && !(s > -1)) throw DomainError("radon_moment: requires s > -1");
  const Vec th = theta.normalized();
  const double w = width(b, th);
  const auto edges = panel_edges(0, w, radon_knots(b, th));
  const bool polynomial = section_profile(b, th).polynomial && b.dim() <= 4;
  double S = 0, err = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    std::function<double(double)> rg = [&](double t) { return radon_covariogram(b, th, t, quad); };
    std::optional<ChebyshevPanel> cheb;
    if (polynomial) {
      // degree 2n - 1 <= 7 between knots, so the interpolant is exact
      cheb.emplace(rg, a, edges[i + 1]);
      rg = [&](double t) { return (*cheb)(t); };
    }
    const auto r = integrate_ts3(
        [&](double t, double da, double) {
          const double x = a == 0 ? da : t;
          const double wgt = log_weight ? std::log(x) : std::pow(x, s);
          return wgt * rg(t);
        },
        a, edges[i + 1], kTsTol);
    S += r.value;
    err += r.error;
  }
  return {2 * S, 2 * err};
}

RadialValue radial_Z(const Body& b, double p, const Vec& theta, const QuadConfig& quad) {
  if (!(p > -1)) throw DomainError("radial_Z: requires p > -1");
  const double V2 = std::pow(volume(b), 2);
  if (p == 0) {
    const auto m = radon_moment(b, theta, 0, true, quad);
    const double rho = std::exp(-m.value / V2);
    return {rho, rho * m.err_est / V2};
  }
  const auto m = radon_moment(b, theta, p, false, quad);
  const double rho = std::pow(m.value / V2, -1 / p);
  return {rho, rho * m.err_est / (std::abs(p) * m.value)};
}

RadialValue radial_F(const Body& b, double p, const Vec& theta, Route route, const QuadConfig& quad) {
  if (!(p > 0)) throw DomainError("radial_F: requires p > 0");
  const Vec th = theta.normalized();
  const int n = b.dim();
  auto from_power = [&](double v, double e) -> RadialValue {
    const double rho = std::pow(v, 1 / p);
    return {rho, rho * e / (p * v)};
  };
  switch (route) {
    case Route::direct: {
      const auto m = mellin_ghat(b, th, p, quad);
      if (m.diverged()) return {kInf, 0};
      return from_power(m.value, m.err_est);
    }
    case Route::closed_form: {
      const auto m = mellin_ghat_closed(b, th, p);
      if (!m) throw UnsupportedError("radial_F: no closed form for this body");
      if (m->diverged()) return {kInf, 0};
      return from_power(m->value, 0);
    }
    case Route::z_route: {
      if (!(p < 1)) throw DomainError("radial_F: z_route requires 0 < p < 1");
      const auto m = radon_moment(b, th, -p, false, quad);
      const double c = gamma_fn(p + 1) * std::cos(kPi * p / 2) / volume(b);
      return from_power(c * m.value, c * m.err_est);
    }
    case Route::i_route: {
      if (p != 1) throw DomainError("radial_F: i_route requires p = 1");
      if (n == 1) return {kPi, 0};
      if (n == 2) {
        const auto r = radial_R(b, 1, perp(th), quad);
        return {2 * kPi * r.value, 2 * kPi * r.err_est};
      }
      if (n == 3) {
        // pi * (1/2) int over the great circle of rho_{R_2 K}^2, integrand even
        const auto [e1, e2] = perp_frame(th);
        const int m = 128;
        double s = 0, e = 0;
        for (int k = 0; k < m / 2; ++k) {
          const double a = kPi * k / (m / 2);
          const auto r = radial_R(b, 2, Vec(std::cos(a) * e1 + std::sin(a) * e2), quad);
          s += r.value * r.value;
          e += 2 * r.value * r.err_est;
        }
        const double h = 2 * kPi / m;
        return {kPi * s * h, kPi * e * h};
      }
      throw UnsupportedError("radial_F: i_route for n <= 3 only");
    }
  }
  return {kNaN, 0};
}

DensitySpec1D DensitySpec1D::s_affine_density(double s, double rho) {
  if (!(s > 0 && rho > 0)) throw DomainError("s_affine density: requires s > 0 and rho > 0");
  DensitySpec1D d;
  d.kind = Kind::s_affine;
  d.s = s;
  d.rho = rho;
  return d;
}

DensitySpec1D DensitySpec1D::tabulated_density(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() != values.size() || grid.size() < 2 || grid[0] != 0)
    throw ValidationError("tabulated density: grid must start at 0 and match values");
  double mass = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i + 1] > grid[i])) throw ValidationError("tabulated density: grid must increase");
    mass += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
  }
  mass *= 2;
  for (double& v : values) {
    if (v < 0) throw ValidationError("tabulated density: negative value");
    v /= mass;
  }
  DensitySpec1D d;
  d.kind = Kind::tabulated;
  d.grid = std::move(grid);
  d.values = std::move(values);
  return d;
}

double DensitySpec1D::operator()(double t) const {
  t = std::abs(t);
  if (kind == Kind::s_affine) {
    const double x = 1 - rho * t;
    return x <= 0 ? 0.0 : (1 + s) / (2 * s) * rho * std::pow(x, 1 / s);
  }
  if (t >= grid.back()) return 0;
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const std::size_t i = std::size_t(it - grid.begin()) - 1;
  const double f = (t - grid[i]) / (grid[i + 1] - grid[i]);
  return values[i] + f * (values[i + 1] - values[i]);
}

double radial_gamma_polar(const DensitySpec1D& g, double q) {
  if (!(q > -1)) throw DomainError("radial_gamma_polar: requires q > -1");
  auto weight = [&](double t) { return q == 0 ? std::log(t) : std::pow(t, q); };
  double m = 0;
  if (g.kind == DensitySpec1D::Kind::s_affine) {
    const double c = (1 + g.s) / (2 * g.s) * g.rho;
    m = integrate_ts3([&](double, double da, double db) { return weight(da) * c * std::pow(g.rho * db, 1 / g.s); },
                      0, 1 / g.rho, 1e-14)
            .value;
  } else {
    for (std::size_t i = 0; i + 1 < g.grid.size(); ++i) {
      const double a = g.grid[i];
      m += integrate_ts3([&](double t, double da, double) { return weight(a == 0 ? da : t) * g(t); }, a,
                         g.grid[i + 1], 1e-14)
               .value;
    }
  }
  m *= 2;
  return q == 0 ? std::exp(-m) : std::pow(m, -1 / q);
}

double radial_gamma_polar(const StarSample& M, double q, const Vec& theta) {
  if (!(q > -1)) throw DomainError("radial_gamma_polar: requires q > -1");
  if (M.has_markers()) throw DomainError("radial_gamma_polar: sample has infinite radii");
  const int n = M.n;
  const Vec th = theta.normalized();
  const double V = sphere_sum(M, [&](double r, const Vec&) { return std::pow(r, n); }) / n;
  if (n == 2) {
    const double phi0 = std::atan2(th[1], th[0]);
    if (q == 0) {
      const double a = cosine_weighted_integral(
          M, phi0, 0, [](double, double r) { return 0.5 * r * r * (std::log(r) - 0.5); });
      const double b = cosine_weighted_integral(M, phi0, 0, [](double, double r) { return 0.5 * r * r; }, true);
      return std::exp(-(a + b) / V);
    }
    const double I = cosine_weighted_integral(M, phi0, q, [&](double, double r) { return std::pow(r, q + 2); });
    return std::pow(I / (q + 2) / V, -1 / q);
  }
  if (q == 0) {
    const double s = sphere_sum(M, [&](double r, const Vec& u) {
      const double c = std::abs(u.dot(th));
      return std::pow(r, n) / n * (std::log(r) - 1.0 / n + std::log(std::max(c, 1e-300)));
    });
    return std::exp(-s / V);
  }
  const double I =
      sphere_sum(M, [&](double r, const Vec& u) { return std::pow(std::abs(u.dot(th)), q) * std::pow(r, q + n); });
  return std::pow(I / (q + n) / V, -1 / q);
}

double radial_gamma_polar(const Body& b, double q, const Vec& theta, const QuadConfig&) {
  if (!(q > -1)) throw DomainError("radial_gamma_polar: requires q > -1");
  const Vec th = theta.normalized();
  const auto prof = section_profile(b, th);
  auto knots = prof.knots;
  knots.push_back(0);
  const auto edges = panel_edges(prof.lo, prof.hi, knots);
  double m = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], c = edges[i + 1];
    m += integrate_ts3(
             [&](double t, double da, double db) {
               const double x = a == 0 ? da : (c == 0 ? db : std::abs(t));
               const double w = q == 0 ? std::log(x) : std::pow(x, q);
               return w * parallel_section(b, th, t);
             },
             a, c, kTsTol)
             .value;
  }
  m /= volume(b);
  return q == 0 ? std::exp(-m) : std::pow(m, -1 / q);
}

double intersection_body_radial(const StarSample& M, const Vec& theta) {
  if (M.has_markers()) throw DomainError("intersection_body_radial: sample has infinite radii");
  if (max_angular_gap(M) > 5 * kPi / 180) throw ResolutionError("intersection_body_radial: angular gap above 5 degrees");
  const Vec th = theta.normalized();
  if (M.n == 2) {
    const Vec u = perp(th);
    return interpolate(M, u) + interpolate(M, Vec(-u));
  }
  if (M.n != 3) throw UnsupportedError("intersection_body_radial: n = 2 or 3");
  const auto [e1, e2] = perp_frame(th);
  const int m = 256;
  double s = 0;
  for (int k = 0; k < m; ++k) {
    const double a = 2 * kPi * k / m;
    const double r = interpolate(M, Vec(std::cos(a) * e1 + std::sin(a) * e2));
    s += r * r;
  }
  return 0.5 * s * 2 * kPi / m;
}

RadialValue RadialEvaluator::operator()(const Vec& theta) const {
  switch (family) {
    case Family::R:
      if (route == Route::closed_form) {
        const auto v = radial_R_closed(body, p, theta);
        if (!v) throw UnsupportedError("radial_R: no closed form for this body");
        return {*v, 0};
      }
      return radial_R(body, p, theta, quad);
    case Family::F: return radial_F(body, p, theta, route, quad);
    case Family::Z: return radial_Z(body, p, theta, quad);
    case Family::GammaPolar: return {radial_gamma_polar(body, p, theta, quad), 0};
    case Family::I: return {parallel_section(body, theta.normalized(), 0), 0};
  }
  return {kNaN, 0};
}

}  // namespace fmb
