#include "fmb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "fmb/covariogram.hpp"
#include "fmb/fourier.hpp"
#include "fmb/parallel.hpp"
#include "fmb/quadrature.hpp"
#include "fmb/specfun.hpp"
#include "fmb/starops.hpp"

namespace fmb {

namespace {

// A sphere integral with the quadrature error carried from the radii and a
// discretization estimate from the half grid.
struct Estimate {
  double value = 0;
  double quad_err = 0;
  double disc_err = 0;
  double total_err() const { return quad_err + disc_err; }
};

StarSample every_other(const StarSample& M) {
  StarSample h;
  h.n = M.n;
  h.envelope = M.envelope;
  const int N = M.size() / 2;
  h.directions.resize(M.n, N);
  h.radii.resize(N);
  h.err_est.resize(N);
  for (int j = 0; j < N; ++j) {
    h.directions.col(j) = M.directions.col(2 * j);
    h.radii[j] = M.radii[2 * j];
    h.err_est[j] = M.err_est[2 * j];
  }
  return h;
}

Estimate sphere_integral(const StarSample& M, const std::function<double(double)>& h) {
  Estimate e;
  auto f = [&](double r, const Vec&) { return h(r); };
  e.value = sphere_sum(M, f);
  if (M.n == 2) e.disc_err = std::abs(e.value - sphere_sum(every_other(M), f));
  double q = 0;
  for (int i = 0; i < M.size(); ++i)
    if (std::isfinite(M.radii[i])) q += std::abs(h(M.radii[i] + M.err_est[i]) - h(M.radii[i]));
  e.quad_err = q * sphere_area(M.n) / M.size();
  return e;
}

Estimate volume_estimate(const StarSample& M) {
  const int n = M.n;
  Estimate e = sphere_integral(M, [n](double r) { return std::pow(r, n) / n; });
  e.value = star_volume(M).value;
  if (M.n == 2) e.disc_err = std::abs(e.value - star_volume(every_other(M)).value);
  return e;
}

double max_err(const StarSample& M) {
  double e = 0;
  for (int i = 0; i < M.size(); ++i) e = std::max(e, M.err_est[i]);
  return e;
}

StarSample sample(const Body& b, Family fam, double p, int grid, const QuadConfig& quad,
                  Route route = Route::direct) {
  return sample_star(RadialEvaluator{b, fam, p, route, quad}, grid);
}

StarSample sample_fn(const std::function<double(const Vec&)>& f, int grid) {
  return sample_star([&](const Vec& th) { return RadialValue{f(th), 0}; }, 2, grid);
}

// Envelope for F_p samples whose markers sit on box axes at p = 2.
void attach_envelope(StarSample& M, const Body& b, double p) {
  if (!M.has_markers()) return;
  const auto idx = fourier_index(b);
  if (std::abs(p - idx.value) < 1e-12) M.envelope = Envelope{Envelope::Kind::log, 0};
}

bool is_ellipsoid(const Body& b) { return b.kind == BodyKind::Ellipsoid; }

bool is_ball(const Body& b) {
  if (!is_ellipsoid(b)) return false;
  const Mat G = b.linear.transpose() * b.linear;
  const double c = G.trace() / G.rows();
  return (G - c * Mat::Identity(G.rows(), G.cols())).norm() < 1e-12 * c;
}

bool is_triangle(const Body& b) {
  return b.dim() == 2 && (b.kind == BodyKind::Simplex || (b.kind == BodyKind::Polygon && b.vertices.cols() == 3));
}

CheckReport report(std::string id, const NamedBody* k, std::map<std::string, double> params, double lhs,
                   double rhs, Relation rel, double tol, double err, std::uint64_t seed) {
  CheckReport r;
  r.check_id = std::move(id);
  r.body_id = k ? k->id : "";
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = rel;
  r.tolerance = tol;
  r.propagated_error = err;
  r.seed = seed;
  finalize(r);
  return r;
}

// A ⊆ B pointwise: min(rho_B - rho_A) >= -tol.
CheckReport inclusion(std::string id, const NamedBody& k, std::map<std::string, double> params,
                      const StarSample& A, const StarSample& B, std::uint64_t seed) {
  const double err = max_err(A) + max_err(B);
  const double tol = inequality_tolerance(err);
  const auto res = inclusion_check(A, B, tol);
  params["worst_angle"] = std::atan2(res.worst_dir[1], res.worst_dir[0]);
  return report(std::move(id), &k, std::move(params), res.worst_margin, 0, Relation::ge, tol, err, seed);
}

// Strictness: the worst margin must clear the noise floor.
CheckReport strict(std::string id, const NamedBody& k, std::map<std::string, double> params,
                   const StarSample& A, const StarSample& B, std::uint64_t seed) {
  const double err = max_err(A) + max_err(B);
  const auto res = inclusion_check(A, B, 0);
  return report(std::move(id), &k, std::move(params), res.worst_margin, inequality_tolerance(err), Relation::ge, 0,
                0, seed);
}

double ball_rp_ratio(int n, double p) {
  // Vol(R_p B) / Vol(B)
  return std::pow(*radial_R_closed(make_ball(n), p, Vec::Unit(n, 0)), n);
}

double dual_mixed_constant(int n, double p) {
  return std::pow(2.0, p + 1) * omega(n + p) / ((p + 1) * omega(n) * omega(p + 1));
}

// Density of sum_i v_i U_i with U_i uniform on [-1/2, 1/2]: the section
// function of the unit cube along v (box spline).
double cube_section(const Vec& v, double s) {
  std::vector<double> a;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-14) a.push_back(std::abs(v[i]) / 2);
  const int m = int(a.size());
  double prod = 1;
  for (double x : a) prod *= 2 * x;
  double sum = 0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    double shift = s, sign = 1;
    for (int i = 0; i < m; ++i) {
      const bool plus = mask >> i & 1;
      shift += plus ? a[i] : -a[i];
      if (!plus) sign = -sign;
    }
    if (shift > 0) sum += sign * std::pow(shift, m - 1);
  }
  return sum / (prod * std::tgamma(m));
}

}  // namespace

void finalize(CheckReport& r) {
  if (r.skipped) {
    r.margin = 0;
    r.pass = true;
    return;
  }
  switch (r.relation) {
    case Relation::eq: r.margin = r.tolerance - std::abs(r.lhs - r.rhs); break;
    case Relation::le: r.margin = r.rhs - r.lhs + r.tolerance; break;
    case Relation::ge: r.margin = r.lhs - r.rhs + r.tolerance; break;
  }
  r.pass = r.margin >= 0 && r.tolerance >= r.propagated_error;
}

double inequality_tolerance(double propagated_error) { return std::max(1e-9, 3 * propagated_error); }

NamedBody reference_body(const std::string& id, std::uint64_t seed) {
  if (id == "square") return {id, make_cube(2, 0.5)};
  if (id == "disk") return {id, make_ball(2)};
  if (id == "triangle") {
    Mat V(2, 3);
    V << 0, 1, 0, 0, 0, 1;
    return {id, centered(make_polygon(V))};
  }
  if (id == "pentagon") return {id, centered(make_random_polygon(5, seed))};
  if (id == "ellipse") return {id, make_ellipsoid(Vec2(3, 1.0 / 3).asDiagonal().toDenseMatrix(), Vec::Zero(2))};
  if (id == "ellipse_2") return {id, make_ellipsoid(Vec2(2, 0.5).asDiagonal().toDenseMatrix(), Vec::Zero(2))};
  throw DomainError("reference_body: unknown id " + id);
}

std::vector<CheckReport> check_volume_identities(const NamedBody& k, const CheckOptions& opt) {
  const Body& b = k.body;
  const int n = b.dim();
  if (n != 2) throw UnsupportedError("check_volume_identities: 2-D bodies");
  const int grid = std::max(opt.grid, 4096);
  std::vector<CheckReport> out;
  const double V = volume(b);
  {
    const auto M = sample(b, Family::R, n, grid, opt.quad);
    const auto e = volume_estimate(M);
    out.push_back(report("volumes.R_n", &k, {{"p", double(n)}}, e.value, V, Relation::eq, 1e-6 * V, e.quad_err,
                         opt.seed));
  }
  {
    auto M = sample(b, Family::F, n, grid, opt.quad);
    attach_envelope(M, b, n);
    const auto e = volume_estimate(M);
    const double target = std::pow(2 * kPi, n);
    auto r = report("volumes.F_n", &k, {{"p", double(n)}}, e.value, target, Relation::eq, 1e-2 * target, e.quad_err,
                    opt.seed);
    if (M.has_markers()) r.note = M.envelope ? "divergent directions, envelope correction" : "lower bound only";
    out.push_back(r);
  }
  return out;
}

std::vector<CheckReport> check_chains(const NamedBody& k, const std::vector<double>& p_list,
                                      const std::vector<double>& f_list, const CheckOptions& opt) {
  const Body& b = k.body;
  const int n = b.dim();
  if (n != 2) throw UnsupportedError("check_chains: 2-D bodies");
  const int grid = opt.grid;
  const double V = volume(b);
  const auto seed = opt.seed;
  std::vector<CheckReport> out;

  std::vector<StarSample> R, Z;
  for (double p : p_list) {
    R.push_back(sample(b, Family::R, p, grid, opt.quad));
    Z.push_back(sample(b, Family::Z, p, grid, opt.quad));
  }
  const auto DK = sample_fn([&](const Vec& th) { return difference_body_radial(b, th); }, grid);
  const auto DKo = sample_fn([&](const Vec& th) { return polar_difference_radial(b, th); }, grid);
  // n V Pi°K; in the plane the projection onto theta^perp has length width(theta^perp)
  const auto Pio = sample_fn(
      [&](const Vec& th) {
        Vec u(2);
        u << -th[1], th[0];
        return n * V / width(b, u);
      },
      grid);

  const std::size_t m = p_list.size();
  for (std::size_t i = 0; i + 1 < m; ++i)
    out.push_back(
        inclusion("chains.radial_growing", k, {{"p", p_list[i]}, {"q", p_list[i + 1]}}, R[i], R[i + 1], seed));
  if (m) out.push_back(inclusion("chains.radial_growing", k, {{"p", p_list.back()}, {"q", kInf}}, R[m - 1], DK, seed));

  std::vector<StarSample> C;
  for (std::size_t i = 0; i < m; ++i) C.push_back(scaled(R[i], binom_radial(n, p_list[i])));
  if (m) {
    out.push_back(
        inclusion("chains.radial_set_inclusion", k, {{"p", p_list.back()}, {"q", kInf}}, DK, C[m - 1], seed));
    for (std::size_t i = m - 1; i > 0; --i)
      out.push_back(inclusion("chains.radial_set_inclusion", k, {{"p", p_list[i - 1]}, {"q", p_list[i]}}, C[i],
                              C[i - 1], seed));
    out.push_back(inclusion("chains.radial_set_inclusion", k, {{"p", -1}, {"q", p_list.front()}}, C[0], Pio, seed));
  }
  if (is_triangle(b)) {
    const auto c1 = scaled(sample(b, Family::R, 1, grid, opt.quad), binom_radial(n, 1));
    const auto c2 = scaled(sample(b, Family::R, 2, grid, opt.quad), binom_radial(n, 2));
    double worst = 0;
    for (int i = 0; i < c1.size(); ++i) worst = std::max(worst, std::abs(c1.radii[i] - c2.radii[i]) / c2.radii[i]);
    out.push_back(report("chains.simplex_equality", &k, {{"p", 1}, {"q", 2}}, worst, 0, Relation::eq, 1e-4,
                         (max_err(c1) + max_err(c2)) / c2.radii.minCoeff(), seed));
  }

  if (m) out.push_back(inclusion("chains.z_growing", k, {{"p", kInf}, {"q", p_list.back()}}, DKo, Z[m - 1], seed));
  for (std::size_t i = m - 1; m && i > 0; --i)
    out.push_back(
        inclusion("chains.z_growing", k, {{"p", p_list[i]}, {"q", p_list[i - 1]}}, Z[i], Z[i - 1], seed));

  std::vector<StarSample> KZ;
  for (std::size_t i = 0; i < m; ++i) KZ.push_back(scaled(Z[i], kappa(n, p_list[i])));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::map<std::string, double> pq{{"p", p_list[i]}, {"q", p_list[i + 1]}};
    out.push_back(inclusion("chains.z_opposite", k, pq, KZ[i], KZ[i + 1], seed));
    out.push_back(strict("chains.z_opposite_strict", k, pq, KZ[i], KZ[i + 1], seed));
  }
  if (m) {
    const std::map<std::string, double> pq{{"p", p_list.back()}, {"q", kInf}};
    out.push_back(inclusion("chains.z_opposite", k, pq, KZ[m - 1], DKo, seed));
    out.push_back(strict("chains.z_opposite_strict", k, pq, KZ[m - 1], DKo, seed));
  }

  std::vector<StarSample> F;
  for (double p : f_list) F.push_back(sample(b, Family::F, p, grid, opt.quad));
  for (std::size_t i = 0; i + 1 < f_list.size(); ++i) {
    const double p = f_list[i], q = f_list[i + 1];
    if (!(q < n)) continue;
    out.push_back(inclusion("chains.f_monotone", k, {{"p", p}, {"q", q}}, F[i],
                            scaled(F[i + 1], std::pow(V, 1 / p - 1 / q)), seed));
  }
  for (std::size_t i = 0; i + 1 < f_list.size(); ++i) {
    const double p = f_list[i], q = f_list[i + 1];
    if (!(q <= 1)) continue;
    const auto A = scaled(F[i + 1], *lambda_coeff(n, q) * std::pow(V, -1 / q));
    const auto B = scaled(F[i], *lambda_coeff(n, p) * std::pow(V, -1 / p));
    out.push_back(inclusion("chains.f_lambda", k, {{"p", p}, {"q", q}}, A, B, seed));
    out.push_back(strict("chains.f_lambda_strict", k, {{"p", p}, {"q", q}}, A, B, seed));
  }
  return out;
}

std::vector<CheckReport> check_isoperimetric(const NamedBody& k, double p, const CheckOptions& opt) {
  const Body& b = k.body;
  const int n = b.dim();
  if (n != 2) throw UnsupportedError("check_isoperimetric: 2-D bodies");
  const int grid = opt.grid;
  const double V = volume(b);
  const double wn = omega(n);
  const Body ball = make_ball(n);
  const Vec e1 = Vec::Unit(n, 0);
  const bool affine_eq = is_ellipsoid(b);
  const bool ball_eq = is_ball(b);
  const auto seed = opt.seed;
  std::vector<CheckReport> out;
  const std::map<std::string, double> pp{{"p", p}};

  // Near-equality at 0.5% when the body is an equality case, else an inequality.
  auto emit = [&](const std::string& id, double lhs, double rhs, Relation rel, const Estimate& e, bool equality,
                  bool exploratory = false) {
    CheckReport r = equality ? report(id, &k, pp, lhs, rhs, Relation::eq, 5e-3 * std::abs(rhs), e.quad_err, seed)
                             : report(id, &k, pp, lhs, rhs, rel, inequality_tolerance(e.total_err()), e.total_err(),
                                      seed);
    r.exploratory = exploratory;
    out.push_back(r);
  };
  auto skip = [&](const std::string& id, const std::string& why) {
    CheckReport r;
    r.check_id = id;
    r.body_id = k.id;
    r.params = pp;
    r.seed = seed;
    r.skipped = true;
    r.note = why;
    finalize(r);
    out.push_back(r);
  };

  if (!(p > -1)) throw DomainError("check_isoperimetric: requires p > -1");

  // Volume ratio of R_p
  StarSample Rp;
  if (p != n) {
    Rp = sample(b, Family::R, p, grid, opt.quad);
    const auto e = volume_estimate(Rp);
    const double s = 1 / V;
    emit("isoperimetric.radial", e.value * s, ball_rp_ratio(n, p), p < n ? Relation::le : Relation::ge,
         {e.value * s, e.quad_err * s, e.disc_err * s}, affine_eq);
  } else {
    skip("isoperimetric.radial", "p = n is the volume identity");
  }

  // Polar Blaschke-Santalo type bound
  {
    const bool proven = p > 0 || (p < 0 && std::abs(n / -p - std::round(n / -p)) < 1e-12);
    if (p == 0 && !proven) {
      skip("isoperimetric.polar_bs", "p = 0 handled as a limit");
    } else {
      const auto Z = sample(b, Family::Z, p, grid, opt.quad);
      const auto e = volume_estimate(Z);
      const double zb = radial_Z(ball, p, e1, opt.quad).value;
      const double rhs = wn * wn * std::pow(zb, n);
      emit("isoperimetric.polar_bs", V * e.value, rhs, Relation::le, {V * e.value, V * e.quad_err, V * e.disc_err},
           affine_eq, !proven);
    }
  }

  // Affine bound for F_p with n/p integral
  const bool f_affine = p > 0 && p <= 1 && std::abs(n / p - std::round(n / p)) < 1e-9;
  const bool dual_f = p > 0 && p < std::min(fourier_index(b).value, double(n));
  StarSample Fp;
  if (f_affine || dual_f || p == 1) Fp = sample(b, Family::F, p, grid, opt.quad);
  const double fb = p > 0 ? radial_F(ball, p, e1, Route::direct, opt.quad).value : 0;
  const double vol_fb = p > 0 ? wn * std::pow(fb, n) : 0;
  if (f_affine) {
    const auto e = volume_estimate(Fp);
    const double s = std::pow(V, (p - n) / p);
    emit("isoperimetric.f_affine", s * e.value, std::pow(wn, (p - n) / p) * vol_fb, Relation::le,
         {s * e.value, s * e.quad_err, s * e.disc_err}, affine_eq);
  }
  if (dual_f) {
    const auto e = sphere_integral(Fp, [p](double r) { return std::pow(r, p); });
    const double W = e.value / n;
    const double lhs = std::pow(V, (p - n) / p) * std::pow(W, n / p);
    const double rel = (n / p) * e.total_err() / e.value;
    emit("isoperimetric.dual_fourier", lhs, vol_fb, Relation::le, {lhs, lhs * (n / p) * e.quad_err / e.value, lhs * rel},
         ball_eq);
  } else if (p > 0) {
    skip("isoperimetric.dual_fourier", "p outside (0, min(p(K), n))");
  }
  if (p == 1) {
    // I M = F_1 K / pi with M = R_{n-1} K
    const auto M = sample(b, Family::R, n - 1, grid, opt.quad);
    const auto ei = volume_estimate(Fp);
    const auto em = volume_estimate(M);
    const double scale = std::pow(kPi, -n);
    const double lhs = ei.value * scale / std::pow(em.value, n - 1);
    const double rel_q = ei.quad_err / ei.value + (n - 1) * em.quad_err / em.value;
    const double rel_d = ei.disc_err / ei.value + (n - 1) * em.disc_err / em.value;
    const double rhs = std::pow(omega(n - 1), n) / std::pow(wn, n - 2);
    // every origin-symmetric M is an equality case in the plane
    emit("isoperimetric.busemann", lhs, rhs, Relation::le, {lhs, lhs * rel_q, lhs * rel_d}, affine_eq || n == 2);
  }

  // Dual mixed volume against M = B
  if (p != 0 && p != n) {
    if (Rp.size() == 0) Rp = sample(b, Family::R, p, grid, opt.quad);
    const auto e = sphere_integral(Rp, [p](double r) { return std::pow(r, p); });
    // rho_B = 1, Vol(B) = omega_n
    const double Vt = e.value / n;
    const double denom = std::pow(wn, (n - p) / n) * std::pow(V, p / n);
    const double lhs = Vt / denom;
    const bool upper = p > 0 && p < n;
    emit("isoperimetric.dual_mixed", lhs, dual_mixed_constant(n, p), upper ? Relation::le : Relation::ge,
         {lhs, e.quad_err / n / denom, e.disc_err / n / denom}, ball_eq);
  }
  return out;
}

CheckReport check_parseval_sphere(const NamedBody& k, double p, const CheckOptions& opt) {
  const Body& b = k.body;
  const int n = b.dim();
  if (!(p > 0 && p < n)) throw DomainError("check_parseval_sphere: requires 0 < p < n");
  const int grid = std::max(opt.grid, 512);
  const auto F = sample(b, Family::F, p, grid, opt.quad);
  if (F.has_markers()) {
    CheckReport r;
    r.check_id = "parseval.sphere";
    r.body_id = k.id;
    r.params = {{"p", p}};
    r.seed = opt.seed;
    r.skipped = true;
    r.note = "divergent F radii";
    finalize(r);
    return r;
  }
  const auto R = sample(b, Family::R, n - p, grid, opt.quad);
  const auto lhs = sphere_integral(F, [p](double r) { return std::pow(r, p); });
  const auto rint = sphere_integral(R, [n, p](double r) { return std::pow(r, n - p); });
  const double c = std::pow(2 * kPi, p) * std::pow(2.0, p / 2) * p / (n - p) * gamma_fn(p / 2) /
                   gamma_fn((n - p) / 2) * std::pow(kPi, (n - p) / 2) / std::pow(2 * kPi, p / 2);
  return report("parseval.sphere", &k, {{"p", p}}, lhs.value, c * rint.value, Relation::eq,
                5e-3 * std::abs(c * rint.value), lhs.quad_err + c * rint.quad_err, opt.seed);
}

CheckReport check_cosine_bridge(const NamedBody& k, double p, const CheckOptions& opt) {
  const Body& b = k.body;
  const int n = b.dim();
  if (n != 2) throw UnsupportedError("check_cosine_bridge: 2-D bodies");
  if (!(p > n - 1)) throw DomainError("check_cosine_bridge: requires p > n - 1");
  CheckReport r;
  r.check_id = "cosine_bridge";
  r.body_id = k.id;
  r.params = {{"p", p}};
  r.seed = opt.seed;
  const double off = p - n;
  const double V = volume(b);
  const auto R = sample(b, Family::R, p, std::max(opt.grid, 512), opt.quad);
  if (off == 0) {
    // |<u,x>|^0 = 1 and Z°_0 enters with exponent 0: the identity is Vol(R_n K) = Vol(K)
    const auto e = sphere_integral(R, [p](double r) { return std::pow(r, p); });
    r = report("cosine_bridge", &k, {{"p", p}}, e.value / p, V, Relation::eq, 1e-2 * V, e.quad_err / p, opt.seed);
    r.note = "p = n reduces to the volume identity";
    return r;
  }
  if (off > 0 && off == std::floor(off) && std::fmod(off, 2.0) == 0) {
    r.skipped = true;
    r.note = "p - n even and positive";
    finalize(r);
    return r;
  }
  double worst = 0, lhs_w = 0, rhs_w = 0, err_w = 0;
  for (int j = 0; j < 8; ++j) {
    const double phi = kPi * (j + 0.37) / 8;
    Vec x(2);
    x << std::cos(phi), std::sin(phi);
    const double lhs =
        cosine_weighted_integral(R, phi, off, [p](double, double rho) { return std::pow(rho, p); }) / p;
    const auto z = radial_Z(b, off, x, opt.quad);
    const double rhs = V * std::pow(z.value, n - p);
    const double rel = std::abs(lhs - rhs) / rhs;
    if (rel >= worst) {
      worst = rel;
      lhs_w = lhs;
      rhs_w = rhs;
      err_w = std::abs(n - p) * z.err_est / z.value * rhs + max_err(R) * p / R.radii.minCoeff() * lhs;
    }
  }
  return report("cosine_bridge", &k, {{"p", p}}, lhs_w, rhs_w, Relation::eq, 1e-2 * rhs_w, err_w, opt.seed);
}

double square_curvature_limit(double p) { return (4 - p) * (3 - p) * (2 - p) * (1 - p) / (2 * p); }

double square_curvature_scaled(double p, double theta) {
  // r(t) proportional to rho_{F_p Q_2}^p along (cos t, sin t)
  const double dp = d_coeff(p);
  auto r = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return sin2sin2_mellin(p, c, s) / (2 * dp * c * c * s * s);
  };
  const double h = 1e-3 * theta;
  auto d1 = [&](double hh) { return (r(theta + hh) - r(theta - hh)) / (2 * hh); };
  auto d2 = [&](double hh) { return (r(theta + hh) - 2 * r(theta) + r(theta - hh)) / (hh * hh); };
  const double r1 = (4 * d1(h / 2) - d1(h)) / 3;
  const double r2 = (4 * d2(h / 2) - d2(h)) / 3;
  const double r0 = r(theta);
  const double E = r0 * r0 + (1 / p + 1 / (p * p)) * r1 * r1 - r0 * r2 / p;
  return std::pow(theta, p) * E;
}

std::vector<CheckReport> check_square_nonconvexity(double p, const CheckOptions& opt) {
  std::vector<CheckReport> out;
  const NamedBody sq = reference_body("square");
  const std::map<std::string, double> pp{{"p", p}};
  const auto M = sample(sq.body, Family::F, p, std::max(opt.grid, 4096), opt.quad, Route::closed_form);
  const auto cv = convexity_check_2d(M);
  std::map<std::string, double> cparams = pp;
  cparams["min_curvature_proxy"] = cv.min_curvature_proxy;
  cparams["hull_gap"] = cv.hull_gap;
  // distance of the minimiser to the nearest axis
  const double q = std::fmod(cv.argmin_angle, kPi / 2);
  cparams["argmin_axis_distance"] = std::min(q, kPi / 2 - q);
  if (p > 1 && p < 2) {
    const double L = square_curvature_limit(p);
    const double t4 = square_curvature_scaled(p, 1e-4), t3 = square_curvature_scaled(p, 1e-3),
                 t2 = square_curvature_scaled(p, 1e-2);
    auto r = report("nonconvexity.limit", &sq, {{"p", p}, {"theta", 1e-4}, {"limit", L}}, t4, L, Relation::eq,
                    0.05 * std::abs(L), 0, opt.seed);
    out.push_back(r);
    // |error| shrinks as theta decreases: both step ratios at most 1
    const double ratio = std::max(std::abs(t4 - L) / std::abs(t3 - L), std::abs(t3 - L) / std::abs(t2 - L));
    out.push_back(report("nonconvexity.approach", &sq, {{"p", p}, {"at_1e-2", t2}, {"at_1e-3", t3}, {"at_1e-4", t4}},
                         ratio, 1, Relation::le, 0, 0, opt.seed));
    out.push_back(report("nonconvexity.curvature_sign", &sq, cparams, cv.min_curvature_proxy, 0, Relation::le, 0, 0,
                         opt.seed));
    out.push_back(report("nonconvexity.convexity_check", &sq, cparams, cv.convex ? 1 : 0, 0, Relation::eq, 0, 0,
                         opt.seed));
  } else {
    out.push_back(
        report("nonconvexity.control", &sq, cparams, cv.convex ? 1 : 0, 1, Relation::eq, 0, 0, opt.seed));
  }
  return out;
}

CheckReport check_berwald_equality_1d(const DensitySpec1D& g, const std::vector<double>& p_list,
                                      const CheckOptions& opt) {
  double lo = kInf, hi = -kInf, sum = 0;
  std::map<std::string, double> params{{"s", g.s}};
  if (g.kind == DensitySpec1D::Kind::s_affine) params["rho"] = g.rho;
  for (double p : p_list) {
    if (!(p > -1)) throw DomainError("check_berwald_equality_1d: requires p > -1");
    const double v = kappa_s(1, p, g.s) * radial_gamma_polar(g, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  const double spread = (hi - lo) / (sum / p_list.size());
  params["min"] = lo;
  params["max"] = hi;
  return report("berwald1d.constant", nullptr, params, spread, 1e-4, Relation::le, 0, 0, opt.seed);
}

std::vector<CheckReport> check_misc(const CheckOptions& opt) {
  std::vector<CheckReport> out;
  const auto seed = opt.seed;
  // (a) F_1 of [-1, 1]: quadrature route against the section route
  {
    const Body seg = make_box(Vec::Constant(1, 1.0));
    const Vec e = Vec::Unit(1, 0);
    const auto m = mellin_ghat_split(seg, e, 1, opt.quad);
    const double via_section = radial_F(seg, 1, e, Route::i_route, opt.quad).value;
    out.push_back(report("misc.f1_interval", nullptr, {{"route_section", via_section}}, m.value, kPi, Relation::eq,
                         1e-6 * kPi, m.err_est, seed));
  }
  // (b) iota(s) = int g(u) 1[0 <= u s <= 1] du with g the covariogram of [-1/2, 1/2]
  {
    const Body seg = make_box(Vec::Constant(1, 0.5));
    auto g = [&](double u) { return covariogram(seg, Vec::Constant(1, u), opt.quad).value; };
    auto iota = [&](double s) {
      if (s == 0) return integrate_gk_breaks(g, {-1.0, 0.0, 1.0}).value;
      const double hi = std::min(1.0, 1 / s);
      return integrate_gk_breaks(g, {0.0, hi}).value;
    };
    const double i0 = iota(0), ih = iota(0.5), i1 = iota(1);
    const double gm = std::sqrt(i0 * i1);
    out.push_back(report("misc.iota_half", nullptr, {{"s", 0.5}}, ih, 0.5, Relation::eq, 1e-12, 0, seed));
    out.push_back(report("misc.iota_geometric_mean", nullptr, {{"iota_0", i0}, {"iota_1", i1}}, gm, 1 / std::sqrt(2.0),
                         Relation::eq, 1e-12, 0, seed));
    auto r = report("misc.iota_not_log_concave", nullptr, {}, ih, gm, Relation::le, 0, 0, seed);
    out.push_back(r);
  }
  // (c) section of K x (-K) along (theta, theta)/sqrt 2 against the Radon transform of g_K, K = Q_2
  {
    const NamedBody sq = reference_body("square");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.05, kPi / 2 - 0.05), unit(0.02, 0.98);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
      const double phi = ang(rng);
      Vec th(2);
      th << std::cos(phi), std::sin(phi);
      const double r = unit(rng) * width(sq.body, th);
      Vec xi(4);
      xi << th / std::sqrt(2.0), th / std::sqrt(2.0);  // -K = K for the cube
      const double lhs = cube_section(xi, r / std::sqrt(2.0));
      const double rhs = std::sqrt(2.0) * radon_covariogram(sq.body, th, r, opt.quad);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(rhs, 1e-300));
    }
    out.push_back(report("misc.parallel_convolution", &sq, {{"samples", 10}}, worst, 0, Relation::eq, 1e-9, 0, seed));
  }
  // (d) isotropic cubes: F_p radii stay within a bounded ratio
  for (int n : {2, 3}) {
    const NamedBody cube{n == 2 ? "square" : "cube3", make_cube(n, 0.5)};
    for (double p : {0.5, 1.0}) {
      const int count = n == 2 ? 128 : 64;
      const auto M = sample(cube.body, Family::F, p, count, opt.quad);
      const double ratio = M.radii.maxCoeff() / M.radii.minCoeff();
      out.push_back(report("misc.isotropic_ratio", &cube, {{"p", p}, {"n", double(n)}}, ratio, 3, Relation::le, 0, 0,
                           seed));
    }
  }
  return out;
}

namespace {

using Job = std::function<std::vector<CheckReport>()>;

std::vector<NamedBody> bodies_for(const SuiteConfig& cfg, std::initializer_list<const char*> ids) {
  if (cfg.body) return {*cfg.body};
  std::vector<NamedBody> out;
  for (const char* id : ids) out.push_back(reference_body(id, cfg.options.seed));
  return out;
}

std::vector<double> p_values(const SuiteConfig& cfg, std::vector<double> defaults) {
  if (cfg.p) return {*cfg.p};
  return defaults;
}

void add_jobs(const std::string& suite, const SuiteConfig& cfg, std::vector<Job>& jobs) {
  const auto& opt = cfg.options;
  if (suite == "volumes") {
    for (const auto& k : bodies_for(cfg, {"square", "disk", "ellipse_2"}))
      jobs.push_back([k, opt] { return check_volume_identities(k, opt); });
  } else if (suite == "chains") {
    const std::vector<double> p_list{-0.5, 0, 0.5, 1, 2, 5}, f_list{0.25, 0.5, 0.75, 1};
    for (const auto& k : bodies_for(cfg, {"square", "disk", "triangle", "pentagon"}))
      jobs.push_back([k, opt, p_list, f_list] { return check_chains(k, p_list, f_list, opt); });
  } else if (suite == "isoperimetric") {
    for (const auto& k : bodies_for(cfg, {"square", "pentagon", "ellipse", "disk"}))
      for (double p : p_values(cfg, {-0.5, 0.5, 2.0 / 3, 1, 1.5, 3}))
        jobs.push_back([k, p, opt] { return check_isoperimetric(k, p, opt); });
  } else if (suite == "parseval") {
    if (cfg.body) {
      for (double p : p_values(cfg, {0.5, 1})) jobs.push_back([k = *cfg.body, p, opt] {
        return std::vector<CheckReport>{check_parseval_sphere(k, p, opt)};
      });
    } else {
      const auto sq = reference_body("square"), disk = reference_body("disk");
      for (double p : p_values(cfg, {0.5, 1}))
        jobs.push_back([sq, p, opt] { return std::vector<CheckReport>{check_parseval_sphere(sq, p, opt)}; });
      jobs.push_back([disk, opt] { return std::vector<CheckReport>{check_parseval_sphere(disk, 1, opt)}; });
    }
  } else if (suite == "cosine_bridge") {
    if (cfg.body) {
      for (double p : p_values(cfg, {1.5, 2})) jobs.push_back([k = *cfg.body, p, opt] {
        return std::vector<CheckReport>{check_cosine_bridge(k, p, opt)};
      });
    } else {
      const auto sq = reference_body("square"), disk = reference_body("disk");
      for (double p : p_values(cfg, {1.5, 2}))
        jobs.push_back([sq, p, opt] { return std::vector<CheckReport>{check_cosine_bridge(sq, p, opt)}; });
      jobs.push_back([disk, opt] { return std::vector<CheckReport>{check_cosine_bridge(disk, 2.5, opt)}; });
    }
  } else if (suite == "nonconvexity") {
    for (double p : p_values(cfg, {1.1, 1.5, 1.9, 0.5, 0.9, 1.0}))
      jobs.push_back([p, opt] { return check_square_nonconvexity(p, opt); });
  } else if (suite == "berwald1d") {
    const std::vector<double> p_list{-0.5, 0, 1, 2, 5};
    for (auto [s, rho] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}})
      jobs.push_back([=] {
        return std::vector<CheckReport>{
            check_berwald_equality_1d(DensitySpec1D::s_affine_density(s, rho), p_list, opt)};
      });
    jobs.push_back([p_list, opt] {
      std::vector<double> t, v;
      for (int i = 0; i <= 800; ++i) {
        t.push_back(0.01 * i);
        v.push_back(std::exp(-0.5 * t.back() * t.back()));
      }
      auto r = check_berwald_equality_1d(DensitySpec1D::tabulated_density(t, v), p_list, opt);
      r.check_id = "berwald1d.negative_control";
      r.params["gaussian"] = 1;
      r.relation = Relation::ge;
      r.rhs = 1e-2;
      finalize(r);
      return std::vector<CheckReport>{r};
    });
  } else if (suite == "misc") {
    jobs.push_back([opt] { return check_misc(opt); });
  } else {
    throw DomainError("unknown suite: " + suite);
  }
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
  std::vector<Job> jobs;
  if (cfg.suite == "all")
    for (const auto& s : suite_names()) add_jobs(s, cfg, jobs);
  else
    add_jobs(cfg.suite, cfg, jobs);
  std::vector<std::vector<CheckReport>> results(jobs.size());
  parallel_for(int(jobs.size()), [&](int i) { results[i] = jobs[i](); });
  std::vector<CheckReport> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
  return out;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.exploratory || r.pass; });
}

}  // namespace fmb
