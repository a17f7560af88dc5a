#include "fmb/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fmb/specfun.hpp"

namespace fmb {

int Body::dim() const {
  switch (kind) {
    case BodyKind::Box: return int(half_widths.size());
    case BodyKind::Ellipsoid: return int(linear.rows());
    case BodyKind::Polygon: return 2;
    case BodyKind::Simplex: return int(vertices.rows());
  }
  return 0;
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double polygon_area(const Mat& V) {
  double s = 0;
  const int m = int(V.cols());
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    s += V(0, i) * V(1, j) - V(0, j) * V(1, i);
  }
  return 0.5 * s;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

Body make_box(const Vec& half_widths) {
  Body b;
  b.kind = BodyKind::Box;
  b.half_widths = half_widths;
  validate(b);
  return b;
}

Body make_cube(int n, double half_width) { return make_box(Vec::Constant(n, half_width)); }

Body make_ellipsoid(const Mat& linear, const Vec& center) {
  Body b;
  b.kind = BodyKind::Ellipsoid;
  b.linear = linear;
  b.center = center;
  validate(b);
  return b;
}

Body make_ball(int n, double radius) { return make_ellipsoid(radius * Mat::Identity(n, n), Vec::Zero(n)); }

Body make_polygon(const Mat& vertices) {
  Body b;
  b.kind = BodyKind::Polygon;
  b.vertices = vertices;
  validate(b);
  return b;
}

Body make_simplex(const Mat& vertices) {
  Body b;
  b.kind = BodyKind::Simplex;
  b.vertices = vertices;
  validate(b);
  return b;
}

Body make_regular_polygon(int m, double circumradius) {
  Mat V(2, m);
  for (int i = 0; i < m; ++i) {
    const double a = 2 * kPi * i / m;
    V(0, i) = circumradius * std::cos(a);
    V(1, i) = circumradius * std::sin(a);
  }
  return make_polygon(V);
}

Body make_random_polygon(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  // Jittered angles on a circle keep the polygon strictly convex.
  Mat V(2, m);
  const double offset = U(rng) * 2 * kPi;
  for (int i = 0; i < m; ++i) {
    const double a = offset + 2 * kPi * (i + 0.15 + 0.7 * U(rng)) / m;
    const double r = 0.8 + 0.4 * U(rng);
    V(0, i) = r * std::cos(a);
    V(1, i) = r * std::sin(a);
  }
  // Drop reflex vertices (rare) by taking the hull.
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return V(0, i) < V(0, j) || (V(0, i) == V(0, j) && V(1, i) < V(1, j));
  });
  std::vector<Vec2> hull;
  auto build = [&](auto begin, auto end) {
    const std::size_t base = hull.size();
    for (auto it = begin; it != end; ++it) {
      Vec2 p(V(0, *it), V(1, *it));
      while (hull.size() >= base + 2 &&
             cross2(hull[hull.size() - 1] - hull[hull.size() - 2], p - hull[hull.size() - 2]) <= 0)
        hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
  };
  build(idx.begin(), idx.end());
  build(idx.rbegin(), idx.rend());
  Mat H(2, hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) H.col(i) = hull[i];
  return centered(make_polygon(H));
}

void validate(const Body& b) {
  switch (b.kind) {
    case BodyKind::Box:
      if (b.half_widths.size() < 1) throw ValidationError("box: empty half_widths");
      for (int i = 0; i < b.half_widths.size(); ++i)
        if (!(b.half_widths[i] > 0) || !std::isfinite(b.half_widths[i]))
          throw ValidationError("box: half widths must be positive and finite");
      return;
    case BodyKind::Ellipsoid: {
      const int n = int(b.linear.rows());
      if (n < 1 || b.linear.cols() != n) throw ValidationError("ellipsoid: matrix must be square");
      if (b.center.size() != n) throw ValidationError("ellipsoid: center dimension mismatch");
      if (!b.linear.allFinite() || !b.center.allFinite())
        throw ValidationError("ellipsoid: non-finite entries");
      const double det = b.linear.determinant();
      const double scale = std::pow(b.linear.norm(), n);
      if (!(det > 1e-14 * scale)) throw ValidationError("ellipsoid: matrix must have positive determinant");
      return;
    }
    case BodyKind::Polygon: {
      const Mat& V = b.vertices;
      if (V.rows() != 2) throw ValidationError("polygon: vertices must be 2-D");
      const int m = int(V.cols());
      if (m < 3) throw ValidationError("polygon: need at least 3 vertices");
      if (!V.allFinite()) throw ValidationError("polygon: non-finite vertex");
      const Vec2 c = V.rowwise().mean();
      double scale = 0;
      for (int i = 0; i < m; ++i) scale = std::max(scale, (Vec2(V.col(i)) - c).norm());
      const double slack = 1e-12 * scale * scale;
      for (int i = 0; i < m; ++i) {
        const Vec2 a = V.col(i), bb = V.col((i + 1) % m), cc = V.col((i + 2) % m);
        if (!(cross2(bb - a, cc - bb) > slack))
          throw ValidationError("polygon: vertices must be strictly convex and counterclockwise");
      }
      // total turning must be one revolution
      double turn = 0;
      for (int i = 0; i < m; ++i) {
        const Vec2 e1 = Vec2(V.col((i + 1) % m)) - Vec2(V.col(i));
        const Vec2 e2 = Vec2(V.col((i + 2) % m)) - Vec2(V.col((i + 1) % m));
        turn += std::atan2(cross2(e1, e2), e1.dot(e2));
      }
      if (std::abs(turn - 2 * kPi) > 1e-6) throw ValidationError("polygon: self-intersecting boundary");
      return;
    }
    case BodyKind::Simplex: {
      const Mat& V = b.vertices;
      const int n = int(V.rows());
      if (n < 1 || V.cols() != n + 1) throw ValidationError("simplex: need n+1 vertices in dimension n");
      if (!V.allFinite()) throw ValidationError("simplex: non-finite vertex");
      Mat E(n, n);
      for (int i = 0; i < n; ++i) E.col(i) = V.col(i + 1) - V.col(0);
      const double scale = std::pow(std::max(E.norm(), 1e-300), n);
      if (!(std::abs(E.determinant()) > 1e-14 * scale))
        throw ValidationError("simplex: vertices are affinely dependent");
      return;
    }
  }
}

double volume(const Body& b) {
  switch (b.kind) {
    case BodyKind::Box: return (2 * b.half_widths.array()).prod();
    case BodyKind::Ellipsoid: return std::abs(b.linear.determinant()) * omega(b.dim());
    case BodyKind::Polygon: return polygon_area(b.vertices);
    case BodyKind::Simplex: {
      const int n = b.dim();
      Mat E(n, n);
      for (int i = 0; i < n; ++i) E.col(i) = b.vertices.col(i + 1) - b.vertices.col(0);
      return std::abs(E.determinant()) / factorial(n);
    }
  }
  return 0;
}

Vec centroid(const Body& b) {
  switch (b.kind) {
    case BodyKind::Box: return Vec::Zero(b.dim());
    case BodyKind::Ellipsoid: return b.center;
    case BodyKind::Simplex: return b.vertices.rowwise().mean();
    case BodyKind::Polygon: {
      const Mat& V = b.vertices;
      const int m = int(V.cols());
      Vec2 c = Vec2::Zero();
      double a2 = 0;
      for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        const double cr = V(0, i) * V(1, j) - V(0, j) * V(1, i);
        a2 += cr;
        c += cr * (Vec2(V.col(i)) + Vec2(V.col(j)));
      }
      return c / (3 * a2);
    }
  }
  return {};
}

Body centered(const Body& b) {
  Body out = b;
  const Vec c = centroid(b);
  switch (b.kind) {
    case BodyKind::Box: break;
    case BodyKind::Ellipsoid: out.center.setZero(); break;
    case BodyKind::Polygon:
    case BodyKind::Simplex: out.vertices = b.vertices.colwise() - c; break;
  }
  return out;
}

double support(const Body& b, const Vec& dir) {
  switch (b.kind) {
    case BodyKind::Box: return (b.half_widths.array() * dir.array().abs()).sum();
    case BodyKind::Ellipsoid: return (b.linear.transpose() * dir).norm() + b.center.dot(dir);
    case BodyKind::Polygon:
    case BodyKind::Simplex: return (b.vertices.transpose() * dir).maxCoeff();
  }
  return 0;
}

bool contains(const Body& b, const Vec& x) {
  switch (b.kind) {
    case BodyKind::Box: return (x.array().abs() <= b.half_widths.array()).all();
    case BodyKind::Ellipsoid: return b.linear.partialPivLu().solve(x - b.center).squaredNorm() <= 1;
    case BodyKind::Polygon: {
      const Mat& V = b.vertices;
      const int m = int(V.cols());
      const Vec2 p(x[0], x[1]);
      for (int i = 0; i < m; ++i) {
        const Vec2 a = V.col(i), c = V.col((i + 1) % m);
        if (cross2(c - a, p - a) < 0) return false;
      }
      return true;
    }
    case BodyKind::Simplex: {
      const int n = b.dim();
      Mat E(n, n);
      for (int i = 0; i < n; ++i) E.col(i) = b.vertices.col(i + 1) - b.vertices.col(0);
      const Vec lam = E.partialPivLu().solve(x - b.vertices.col(0));
      return (lam.array() >= 0).all() && lam.sum() <= 1;
    }
  }
  return false;
}

Mat as_polygon(const Body& b) {
  if (b.dim() != 2) throw UnsupportedError("as_polygon: body is not planar");
  switch (b.kind) {
    case BodyKind::Box: {
      const double a = b.half_widths[0], c = b.half_widths[1];
      Mat V(2, 4);
      V << -a, a, a, -a, -c, -c, c, c;
      return V;
    }
    case BodyKind::Polygon: return b.vertices;
    case BodyKind::Simplex: {
      Mat V = b.vertices;
      const Vec2 e1 = Vec2(V.col(1)) - Vec2(V.col(0)), e2 = Vec2(V.col(2)) - Vec2(V.col(0));
      if (cross2(e1, e2) < 0) V.col(1).swap(V.col(2));
      return V;
    }
    case BodyKind::Ellipsoid: break;
  }
  throw UnsupportedError("as_polygon: ellipsoid has no polygon form");
}

bool is_planar_polytope(const Body& b) { return b.dim() == 2 && b.kind != BodyKind::Ellipsoid; }

Body apply_affine(const AffineMap& map, const Body& b) {
  const int n = b.dim();
  if (map.linear.rows() != n || map.linear.cols() != n || map.shift.size() != n)
    throw ValidationError("apply_affine: dimension mismatch");
  const double det = map.linear.determinant();
  if (!(std::abs(det) > 0)) throw ValidationError("apply_affine: map is singular");
  switch (b.kind) {
    case BodyKind::Ellipsoid: {
      Mat T = map.linear * b.linear;
      if (T.determinant() < 0) T.col(0) = -T.col(0);  // same ellipsoid, positive orientation
      return make_ellipsoid(T, map.linear * b.center + map.shift);
    }
    case BodyKind::Simplex: return make_simplex((map.linear * b.vertices).colwise() + map.shift);
    case BodyKind::Polygon: {
      Mat V = (map.linear * b.vertices).colwise() + map.shift;
      if (det < 0) V = V.rowwise().reverse().eval();
      return make_polygon(V);
    }
    case BodyKind::Box: {
      const Mat off = map.linear - Mat(map.linear.diagonal().asDiagonal());
      if (off.cwiseAbs().maxCoeff() == 0 && map.shift.cwiseAbs().maxCoeff() == 0)
        return make_box((map.linear.diagonal().cwiseAbs().array() * b.half_widths.array()).matrix());
      if (n == 1) {
        Mat V(1, 2);
        V << -b.half_widths[0], b.half_widths[0];
        return make_simplex((map.linear * V).colwise() + map.shift);
      }
      if (n == 2) {
        Mat V = (map.linear * as_polygon(b)).colwise() + map.shift;
        if (det < 0) V = V.rowwise().reverse().eval();
        return make_polygon(V);
      }
      throw UnsupportedError("apply_affine: non-axis image of a box in n >= 3 is not representable");
    }
  }
  return b;
}

double width(const Body& b, const Vec& theta) { return support(b, theta) + support(b, -theta); }

double polar_difference_radial(const Body& b, const Vec& theta) { return 1 / width(b, theta); }

std::vector<Halfspace> hull_facets(const Mat& V) {
  const int n = int(V.rows());
  const int m = int(V.cols());
  std::vector<Halfspace> out;
  const Vec c = V.rowwise().mean();
  double scale = 0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, (V.col(i) - c).norm());
  const double eps = 1e-10 * scale;
  if (n == 1) {
    out.push_back({Vec::Constant(1, 1.0), V.maxCoeff()});
    out.push_back({Vec::Constant(1, -1.0), -V.minCoeff()});
    return out;
  }
  auto consider = [&](const Vec& normal_in) {
    Vec nrm = normal_in;
    const double len = nrm.norm();
    if (len < 1e-14 * std::pow(scale, n - 1)) return;
    nrm /= len;
    const Vec proj = V.transpose() * nrm;
    double mx = proj.maxCoeff(), mn = proj.minCoeff();
    for (int pass = 0; pass < 2; ++pass) {
      // plane is a facet if it supports the point set
      const Vec nn = pass == 0 ? nrm : Vec(-nrm);
      const double off = pass == 0 ? mx : -mn;
      int on = 0;
      for (int i = 0; i < m; ++i)
        if (std::abs(V.col(i).dot(nn) - off) <= eps) ++on;
      if (on < n) continue;
      bool dup = false;
      for (const auto& h : out)
        if ((h.normal - nn).norm() < 1e-9) dup = true;
      if (!dup) out.push_back({nn, off});
    }
  };
  if (n == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        const Vec d = V.col(j) - V.col(i);
        Vec nrm(2);
        nrm << d[1], -d[0];
        consider(nrm);
      }
  } else if (n == 3) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          const Eigen::Vector3d a = V.col(j) - V.col(i), bb = V.col(k) - V.col(i);
          consider(Vec(a.cross(bb)));
        }
  } else {
    throw UnsupportedError("hull_facets: dimension > 3");
  }
  return out;
}

double difference_body_radial(const Body& b, const Vec& theta) {
  switch (b.kind) {
    case BodyKind::Box: {
      double r = kInf;
      for (int i = 0; i < b.dim(); ++i)
        if (theta[i] != 0) r = std::min(r, 2 * b.half_widths[i] / std::abs(theta[i]));
      return r;
    }
    case BodyKind::Ellipsoid:
      return 2 / b.linear.partialPivLu().solve(theta).norm();
    case BodyKind::Polygon:
    case BodyKind::Simplex: {
      const Mat& V = b.vertices;
      const int m = int(V.cols());
      Mat D(V.rows(), m * (m - 1));
      int k = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (i != j) D.col(k++) = V.col(i) - V.col(j);
      double r = kInf;
      for (const auto& h : hull_facets(D)) {
        const double c = h.normal.dot(theta);
        if (c > 0) r = std::min(r, h.offset / c);
      }
      return r;
    }
  }
  return 0;
}

std::pair<Vec, Vec> bounding_box(const Body& b) {
  const int n = b.dim();
  Vec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    hi[i] = support(b, e);
    lo[i] = -support(b, -e);
  }
  return {lo, hi};
}

Mat second_moment(const Body& b) {
  const int n = b.dim();
  switch (b.kind) {
    case BodyKind::Box: {
      const double V = volume(b);
      return V * Mat((b.half_widths.array().square() / 3).matrix().asDiagonal());
    }
    case BodyKind::Ellipsoid: {
      const double V = volume(b);
      // int_E xx^T = V (T T^T / (n+2) + c c^T)
      return V * (b.linear * b.linear.transpose() / (n + 2) + b.center * b.center.transpose());
    }
    case BodyKind::Simplex: {
      // int_S xx^T = V / ((n+1)(n+2)) (sum v v^T + s s^T)
      const Vec s = b.vertices.rowwise().sum();
      const Mat M = b.vertices * b.vertices.transpose() + s * s.transpose();
      return volume(b) / ((n + 1.0) * (n + 2.0)) * M;
    }
    case BodyKind::Polygon: {
      const Mat& V = b.vertices;
      const int m = int(V.cols());
      Mat M = Mat::Zero(2, 2);
      // fan from the origin with signed areas
      for (int i = 0; i < m; ++i) {
        const Vec2 a = V.col(i), c = V.col((i + 1) % m);
        const double area = 0.5 * cross2(a, c);
        const Vec2 s = a + c;
        M += area / 12.0 * (a * a.transpose() + c * c.transpose() + s * s.transpose());
      }
      return M;
    }
  }
  return {};
}

UniformSample sample_uniform(const Body& b, int count, std::uint64_t seed) {
  if (count < 1) throw ValidationError("sample_uniform: count must be >= 1");
  const int n = b.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  UniformSample out;
  out.points.resize(n, count);
  if (b.kind == BodyKind::Box) {
    for (int j = 0; j < count; ++j)
      for (int i = 0; i < n; ++i) out.points(i, j) = b.half_widths[i] * U(rng);
    out.proposals = std::uint64_t(count);
    return out;
  }
  if (b.kind == BodyKind::Ellipsoid) {
    Vec u(n);
    for (int j = 0; j < count;) {
      for (int i = 0; i < n; ++i) u[i] = U(rng);
      ++out.proposals;
      if (u.squaredNorm() <= 1) out.points.col(j++) = b.linear * u + b.center;
    }
    return out;
  }
  const auto [lo, hi] = bounding_box(b);
  Vec x(n);
  for (int j = 0; j < count;) {
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * 0.5 * (U(rng) + 1);
    ++out.proposals;
    if (contains(b, x)) out.points.col(j++) = x;
  }
  return out;
}

IsotropicData isotropic_position(const Body& b, const QuadConfig&) {
  const int n = b.dim();
  const double V = volume(b);
  const Vec c = centroid(b);
  const Mat M = second_moment(b) - V * c * c.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  const Vec ev = es.eigenvalues();
  if (!(ev.minCoeff() > 1e-12 * ev.maxCoeff())) throw DomainError("isotropic_position: covariance is near singular");
  const Mat inv_sqrt = es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  // A = s M^{-1/2} with |det A| V = 1
  const double det_inv_sqrt = 1 / std::sqrt(ev.prod());
  const double s = std::pow(1 / (V * det_inv_sqrt), 1.0 / n);
  IsotropicData out;
  out.normalizing_map.linear = s * inv_sqrt;
  out.normalizing_map.shift = -out.normalizing_map.linear * c;
  out.L_K = s / std::sqrt(V);
  return out;
}

}  // namespace fmb
