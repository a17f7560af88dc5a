#pragma once

// Adaptive Gauss-Kronrod and tanh-sinh rules, templated on the integrand.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "fmb/types.hpp"

namespace fmb {

struct QuadResult {
  double value = 0;
  double error = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (non-negative half).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace detail

// Globally adaptive G7K15 on [a, b].
template <typename F>
QuadResult integrate_gk(const F& f, double a, double b, double abs_tol = 1e-12,
                        double rel_tol = 1e-11, int max_segments = 4000) {
  if (a == b) return {};
  std::priority_queue<detail::Segment> heap;
  auto s = detail::gk15(f, a, b);
  double total = s.value;
  double err = s.error;
  heap.push(s);
  int count = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_segments) {
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    const auto l = detail::gk15(f, worst.a, mid);
    const auto r = detail::gk15(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  // Re-sum to limit drift from incremental updates.
  double v = 0, e = 0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  return {v, e};
}

// G7K15 over consecutive breakpoints (sorted, duplicates ignored).
template <typename F>
QuadResult integrate_gk_breaks(const F& f, std::vector<double> breaks, double abs_tol = 1e-12,
                               double rel_tol = 1e-11) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  QuadResult out;
  const int pieces = int(breaks.size()) - 1;
  for (int i = 0; i < pieces; ++i) {
    const auto r = integrate_gk(f, breaks[i], breaks[i + 1], abs_tol / std::max(1, pieces), rel_tol);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

// Tanh-sinh on [a, b]. The integrand receives (x, x - a, b - x) with the
// endpoint distances computed without cancellation, so singularities at
// either end can be evaluated from the distance argument.
template <typename G>
QuadResult integrate_ts3(const G& g, double a, double b, double tol = 1e-13, int max_level = 10) {
  if (a == b) return {};
  const double L = b - a;
  constexpr double kTmax = 6.5;
  auto node_sum = [&](double t) {
    const double u = 0.5 * kPi * std::sinh(t);
    const double e = std::exp(-2 * std::abs(u));
    const double delta = e / (1 + e);  // fraction from the nearer end
    if (delta * L <= 0) return 0.0;
    const double w = 0.5 * kPi * std::cosh(t) * 4 * e / ((1 + e) * (1 + e)) * 0.5;
    const double near = L * delta;
    const double far = L - near;
    double val;
    if (t < 0)
      val = g(a + near, near, far);
    else
      val = g(b - near, far, near);
    return w * L * val;
  };
  double h = 0.5;
  double sum = node_sum(0.0);
  for (double t = h; t <= kTmax; t += h) sum += node_sum(t) + node_sum(-t);
  double prev = sum * h;
  QuadResult res{prev, kInf};
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double add = 0;
    for (double t = h; t <= kTmax; t += 2 * h) add += node_sum(t) + node_sum(-t);
    sum += add;
    const double cur = sum * h;
    res.error = std::abs(cur - prev);
    res.value = cur;
    if (level >= 3 && res.error <= tol * std::max(1.0, std::abs(cur))) break;
    prev = cur;
  }
  return res;
}

template <typename F>
QuadResult integrate_ts(const F& f, double a, double b, double tol = 1e-13, int max_level = 10) {
  return integrate_ts3([&](double x, double, double) { return f(x); }, a, b, tol, max_level);
}

struct TailResult {
  double value = 0;
  double error = 0;
  bool diverged = false;
};

// int_start^inf f for slowly decaying, possibly oscillating f. Panels of
// width `panel` up to r0, then blocks [R, 2R) whose sums are assumed to
// behave like R^(offset - d) (1 + c_1/R + c_2/R^2 + ...) for an integer d
// estimated from consecutive blocks. Partial sums are Richardson
// extrapolated; divergence is reported when the block sums stop shrinking.
// Oscillating integrands need r0 and start to sit on a common period grid.
template <typename F>
TailResult integrate_tail(const F& f, double start, double r0, double panel, double offset, double tol,
                          int max_doublings = 16) {
  auto panels = [&](double a, double c) {
    const int k = std::max(1, int(std::ceil((c - a) / panel - 1e-9)));
    const double h = (c - a) / k;
    double s = 0;
    for (int i = 0; i < k; ++i) s += detail::gk15(f, a + i * h, a + (i + 1) * h).value;
    return s;
  };
  std::vector<double> partial{panels(start, r0)};
  std::vector<double> blocks, extrap;
  TailResult out{partial[0], kInf, false};
  double R = r0;
  int flat = 0;
  for (int j = 0; j < max_doublings; ++j) {
    const double B = panels(R, 2 * R);
    R *= 2;
    blocks.push_back(B);
    partial.push_back(partial.back() + B);
    if (blocks.size() < 3) continue;
    const double prev = blocks[blocks.size() - 2];
    const double ratio = B / prev;
    if (prev != 0 && ratio > 0.97) {
      if (++flat >= 4) return {kInf, 0, true};
    } else {
      flat = 0;
    }
    if (B == 0) {
      out = {partial.back(), 0, false};
      break;
    }
    if (!(ratio > 0)) {
      out = {partial.back(), std::abs(B), false};
      continue;
    }
    const double d = std::max(1.0, std::round(offset - std::log2(ratio)));
    if (d <= offset) continue;
    const int K = std::min<int>(4, int(partial.size()) - 1);
    std::vector<double> E(partial.end() - (K + 1), partial.end());
    for (int k = 0; k < K; ++k) {
      const double q = std::pow(2.0, offset - d - k);
      for (int i = 0; i + 1 < int(E.size()); ++i) E[i] = (E[i + 1] - q * E[i]) / (1 - q);
      E.pop_back();
    }
    extrap.push_back(E[0]);
    if (extrap.size() >= 2) {
      const double err = std::abs(extrap.back() - extrap[extrap.size() - 2]);
      out = {extrap.back(), err, false};
      if (err <= tol * std::max(1.0, std::abs(extrap.back()))) break;
    }
  }
  return out;
}

// Gauss-Legendre nodes and weights on [-1, 1].
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0);
  w.assign(n, 0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
}

}  // namespace fmb
