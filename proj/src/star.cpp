#include "fmb/star.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fmb/quadrature.hpp"
#include "fmb/specfun.hpp"

namespace fmb {

namespace {

double wrap(double phi) {
  phi = std::fmod(phi, 2 * kPi);
  return phi < 0 ? phi + 2 * kPi : phi;
}

}  // namespace

bool StarSample::has_markers() const {
  for (int i = 0; i < size(); ++i)
    if (std::isinf(radii[i])) return true;
  return false;
}

Mat circle_grid(int count) {
  Mat D(2, count);
  for (int j = 0; j < count; ++j) {
    const double phi = 2 * kPi * j / count;
    D(0, j) = std::cos(phi);
    D(1, j) = std::sin(phi);
    if (4 * j % count == 0) D.col(j) = D.col(j).array().round();  // exact axis directions
  }
  // exact values on the axes and diagonals keep negation symmetry bitwise
  for (int j = 0; j < count / 2; ++j) D.col(j + count / 2) = -D.col(j);
  return D;
}

Mat fibonacci_sphere(int count) {
  const int half = count / 2;
  Mat D(3, 2 * half);
  const double golden = kPi * (3 - std::sqrt(5.0));
  for (int i = 0; i < half; ++i) {
    const double z = 1 - (2 * i + 1) / double(2 * half);
    const double r = std::sqrt(1 - z * z);
    const double phi = golden * i;
    D.col(i) << r * std::cos(phi), r * std::sin(phi), z;
    D.col(i + half) = -D.col(i);
  }
  return D;
}

bool same_grid(const StarSample& a, const StarSample& b) {
  return a.n == b.n && a.directions.cols() == b.directions.cols() && a.directions == b.directions;
}

void require_same_grid(const StarSample& a, const StarSample& b) {
  if (!same_grid(a, b)) throw GridMismatchError("star samples do not share a direction grid");
}

double interpolate_angle(const StarSample& M, double phi) {
  const int N = M.size();
  const double x = wrap(phi) / (2 * kPi) * N;
  int j = int(std::floor(x));
  double t = x - j;
  if (t < 1e-12) return M.radii[j % N];
  if (t > 1 - 1e-12) return M.radii[(j + 1) % N];
  auto r = [&](int k) { return M.radii[((k % N) + N) % N]; };
  const double y0 = r(j - 1), y1 = r(j), y2 = r(j + 1), y3 = r(j + 2);
  // Lagrange cubic through j-1 .. j+2
  return y0 * (-t * (t - 1) * (t - 2) / 6) + y1 * ((t + 1) * (t - 1) * (t - 2) / 2) +
         y2 * (-(t + 1) * t * (t - 2) / 2) + y3 * ((t + 1) * t * (t - 1) / 6);
}

double interpolate(const StarSample& M, const Vec& theta) {
  if (M.n == 2) return interpolate_angle(M, std::atan2(theta[1], theta[0]));
  const int N = M.size();
  const Vec u = theta.normalized();
  std::vector<std::pair<double, int>> near;
  near.reserve(N);
  for (int i = 0; i < N; ++i) near.emplace_back(-M.directions.col(i).dot(u), i);
  const int k = std::min(N, 12);
  std::partial_sort(near.begin(), near.begin() + k, near.end());
  if (near[0].first < -1 + 1e-14) return M.radii[near[0].second];
  // tangent frame at u
  Vec e1 = (std::abs(u[0]) < 0.9 ? Vec::Unit(3, 0) : Vec::Unit(3, 1));
  e1 = (e1 - e1.dot(u) * u).normalized();
  Vec e2(3);
  e2 << u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2], u[0] * e1[1] - u[1] * e1[0];
  Mat A(k, 6);
  Vec y(k);
  for (int i = 0; i < k; ++i) {
    const Vec d = M.directions.col(near[i].second);
    const double a = d.dot(e1), b = d.dot(e2);
    A.row(i) << 1, a, b, a * a, a * b, b * b;
    y[i] = M.radii[near[i].second];
  }
  const Vec c = A.colPivHouseholderQr().solve(y);
  return c[0];
}

double max_angular_gap(const StarSample& M) {
  const int N = M.size();
  if (M.n == 2) return 2 * kPi / N;
  double worst = 0;
  for (int i = 0; i < N; ++i) {
    double best = -1;
    for (int j = 0; j < N; ++j)
      if (j != i) best = std::max(best, M.directions.col(i).dot(M.directions.col(j)));
    worst = std::max(worst, std::acos(std::min(1.0, best)));
  }
  return worst;
}

double cosine_weighted_integral(const StarSample& M, double phi0, double q,
                                const std::function<double(double, double)>& h, bool log_weight) {
  if (M.n != 2) throw DomainError("cosine_weighted_integral: 2-D samples only");
  const int N = M.size();
  const double step = 2 * kPi / N;
  std::vector<double> cuts;
  for (int j = 0; j <= N; ++j) cuts.push_back(j * step);
  const double s1 = wrap(phi0 + kPi / 2), s2 = wrap(phi0 + 3 * kPi / 2);
  for (double s : {s1, s2}) cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double phi, double weight) { return weight * h(phi, interpolate_angle(M, phi)); };
  auto dist_to_zero = [&](double phi) {
    double d = kInf;
    for (double s : {s1, s2}) {
      double e = std::abs(phi - s);
      e = std::min(e, 2 * kPi - e);
      d = std::min(d, e);
    }
    return d;
  };
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b - a < 1e-15) continue;
    const bool left_sing = dist_to_zero(a) < 1e-13;
    const bool right_sing = dist_to_zero(b) < 1e-13;
    auto weight = [&](double c) { return log_weight ? std::log(c) : std::pow(c, q); };
    if ((left_sing || right_sing) && (log_weight || q != std::floor(q))) {
      total += integrate_ts3(
                   [&](double x, double da, double db) { return f(x, weight(std::sin(left_sing ? da : db))); }, a,
                   b, 1e-12)
                   .value;
    } else {
      total += detail::gk15([&](double x) { return f(x, weight(std::abs(std::cos(x - phi0)))); }, a, b).value;
    }
  }
  return total;
}

double sphere_area(int n) { return n * omega(n); }

double sphere_sum(const StarSample& M, const std::function<double(double, const Vec&)>& h) {
  const int N = M.size();
  double s = 0;
  for (int i = 0; i < N; ++i)
    if (std::isfinite(M.radii[i])) s += h(M.radii[i], M.directions.col(i));
  return s * sphere_area(M.n) / N;
}

}  // namespace fmb
