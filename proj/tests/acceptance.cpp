// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: fmb_acceptance <path to the fmb executable>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fmb/io.hpp"
#include "fmb/meanbodies.hpp"
#include "fmb/specfun.hpp"
#include "fmb/starops.hpp"
#include "fmb/verify.hpp"
#include "oracles.hpp"

using namespace fmb;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Vec unit(double phi) { return Vec2(std::cos(phi), std::sin(phi)); }

double omega_ref(double q) { return std::pow(kPi, q / 2) / std::tgamma(1 + q / 2); }

// Suite outcome: non-exploratory reports must pass; lists the first failures.
Outcome suite_outcome(const std::vector<CheckReport>& reports) {
  Outcome o{true, ""};
  int failed = 0;
  for (const auto& r : reports) {
    if (r.exploratory || r.pass) continue;
    o.pass = false;
    if (failed++ < 3) o.detail += " " + r.check_id + "[" + r.body_id + "]";
  }
  o.detail = std::to_string(reports.size()) + " reports, " + std::to_string(failed) + " failed" + o.detail;
  return o;
}

std::vector<CheckReport> suite(const std::string& name) {
  SuiteConfig cfg;
  cfg.suite = name;
  return run_suite(cfg);
}

Outcome cube_values() {
  double worst = 0;
  for (int n : {2, 3})
    for (double p : {0.5, 1.0, 2.0}) {
      const Body Q = make_cube(n);
      Vec e1 = Vec::Zero(n);
      e1[0] = 1;
      const Vec d = Vec::Constant(n, 1 / std::sqrt(double(n)));
      const double axis = std::pow(1 / (p + 1), 1 / p);
      const double diag = std::sqrt(double(n)) * std::pow(std::tgamma(n + p + 1) / (std::tgamma(n + 1) * std::tgamma(p + 1)), -1 / p);
      worst = std::max({worst, std::abs(radial_R(Q, p, e1).value - axis), std::abs(radial_R(Q, p, d).value - diag)});
    }
  return {worst <= 1e-8, "max error " + fmt("%.2e", worst)};
}

Outcome ball_values() {
  const int n = 2;
  double wr = 0, wf = 0;
  for (double p : {-0.5, 0.0, 1.0, 2.0, 5.0}) {
    const double expect =
        p == 0 ? 2 * std::exp((digamma(0.5) - digamma(n / 2.0 + 1)) / 2)
               : std::pow(std::pow(2.0, p + 1) * omega_ref(n + p) / ((p + 1) * omega_ref(n) * omega_ref(p + 1)), 1 / p);
    for (int j = 0; j < 4; ++j) wr = std::max(wr, std::abs(radial_R(make_ball(n), p, unit(0.4 + j)).value - expect));
  }
  for (double p : {0.5, 1.0, 2.0, 2.9}) {
    const double expect = std::pow(std::pow(2 * kPi, p) * omega_ref(2 * n - p) * std::pow(omega_ref(n - p), 2) /
                                       (omega_ref(n) * omega_ref(p) * omega_ref(2 * (n - p))),
                                   1 / p);
    for (int j = 0; j < 4; ++j) wf = std::max(wf, std::abs(radial_F(make_ball(n), p, unit(0.4 + j)).value - expect));
  }
  return {wr <= 1e-8 && wf <= 1e-6, "R max error " + fmt("%.2e", wr) + ", F max error " + fmt("%.2e", wf)};
}

Outcome volumes() {
  const auto sq = check_volume_identities(reference_body("square"));
  double vr = kNaN, vf = kNaN;
  for (const auto& r : sq) {
    if (r.check_id == "volumes.R_n") vr = r.lhs;
    if (r.check_id == "volumes.F_n") vf = r.lhs;
  }
  const auto F2 = sample_star(RadialEvaluator{make_ball(2), Family::F, 2, Route::direct, {}}, 256);
  const double vd = star_volume(F2).value;
  const double target = 4 * kPi * kPi;
  const bool ok = std::abs(vr - 1) <= 1e-6 && std::abs(vf - target) <= 1e-2 * target &&
                  std::abs(vd - target) <= 1e-4 * target;
  return {ok, "Vol R2Q2 = " + fmt("%.9f", vr) + ", Vol F2Q2 / (2pi)^2 = " + fmt("%.5f", vf / target) +
                  ", Vol F2B / (2pi)^2 = " + fmt("%.7f", vd / target)};
}

Outcome f1_two_routes() {
  const Body Q = make_cube(2);
  const auto R1 = sample_star(RadialEvaluator{Q, Family::R, 1, Route::direct, {}}, 720);
  double worst = 0;
  for (int j = 0; j < 64; ++j) {
    const Vec th = unit(2 * kPi * (j + 0.5) / 64);
    const double direct = radial_F(Q, 1, th).value;
    worst = std::max(worst, std::abs(direct - kPi * intersection_body_radial(R1, th)) / direct);
  }
  return {worst <= 1e-3, "max relative gap " + fmt("%.2e", worst)};
}

Outcome listed(const std::vector<CheckReport>& reports) {
  Outcome o = suite_outcome(reports);
  for (const auto& r : reports)
    o.detail += "; " + r.body_id + " p=" + fmt("%g", r.params.at("p")) + " rel " +
                fmt("%.2e", std::abs(r.lhs - r.rhs) / std::abs(r.rhs));
  return o;
}

Outcome parseval() {
  const auto sq = reference_body("square"), disk = reference_body("disk");
  return listed({check_parseval_sphere(sq, 0.5), check_parseval_sphere(sq, 1), check_parseval_sphere(disk, 1)});
}

Outcome cosine_bridge() {
  return listed({check_cosine_bridge(reference_body("square"), 1.5), check_cosine_bridge(reference_body("disk"), 2.5)});
}

Outcome chains() {
  const auto reports = suite("chains");
  Outcome o = suite_outcome(reports);
  int simplex = 0;
  for (const auto& r : reports)
    if (r.check_id == "chains.simplex_equality" && r.body_id == "triangle" && r.tolerance <= 1e-4) ++simplex;
  if (!simplex) o.pass = false;
  o.detail += ", " + std::to_string(simplex) + " simplex equality checks";
  return o;
}

Outcome isoperimetric() {
  const auto reports = suite("isoperimetric");
  Outcome o = suite_outcome(reports);
  // near-equality reports: ellipse for affine-invariant bounds, disk for the dual ones
  int equality = 0;
  for (const auto& r : reports)
    if (r.relation == Relation::eq && !r.skipped) ++equality;
  o.detail += ", " + std::to_string(equality) + " equality cases at 0.5%";
  return o;
}

Outcome nonconvexity() {
  const auto reports = suite("nonconvexity");
  Outcome o = suite_outcome(reports);
  for (const auto& r : reports)
    if (r.check_id == "nonconvexity.limit")
      o.detail += "; p=" + fmt("%g", r.params.at("p")) + " scaled/limit " + fmt("%.4f", r.lhs / r.rhs);
  return o;
}

Outcome special_functions() {
  double ws = 0, wb = 0, wg = 0;
  for (double a : {0.5, 1.0, 2.0, 3.0, 5.0})
    for (double p : {1.1, 1.3, 1.5, 1.7, 1.9})
      ws = std::max(ws, std::abs(oracle::sine_integral(a, p) - dirichlet_sine(a, p)));
  for (double mu : {0.0, 0.5, 1.0, 2.0, 3.5})
    for (double nu : {0.1, 0.3, 0.5, 0.7, 0.9})
      wb = std::max(wb, std::abs(oracle::bessel_sq_integral(mu, nu) - bessel_mellin_sq(mu, nu)));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 2.0);
  for (int i = 0; i < 50;) {
    const double p = U(rng);
    if (std::abs(p - 1) < 1e-3) continue;
    ++i;
    const double ident = gamma_fn(1 - p) * std::sin(kPi * p / 2) * gamma_fn(p) * std::cos(kPi * p / 2);
    const double dup = std::sin(kPi * p / 4) * gamma_fn(1 - p / 4) * gamma_fn(1 + p / 4);
    wg = std::max({wg, std::abs(ident - kPi / 2), std::abs(dup - kPi * p / 4)});
  }
  return {ws <= 1e-6 && wb <= 1e-6 && wg <= 1e-10,
          "sine " + fmt("%.2e", ws) + ", Bessel " + fmt("%.2e", wb) + ", Gamma " + fmt("%.2e", wg)};
}

Outcome berwald() {
  const auto reports = suite("berwald1d");
  Outcome o = suite_outcome(reports);
  for (const auto& r : reports) o.detail += "; " + r.check_id + " " + fmt("%.2e", r.lhs);
  return o;
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const auto dir = std::filesystem::temp_directory_path() / "fmb_acceptance";
  std::filesystem::create_directories(dir);
  std::string out[2];
  for (int i = 0; i < 2; ++i) {
    const auto path = dir / ("report_" + std::to_string(i) + ".json");
    const std::string cmd = "\"" + cli + "\" verify --suite all --seed 42 --out \"" + path.string() + "\" 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !std::filesystem::exists(path)) return {false, "CLI run failed"};
    out[i] = read_text(path.string());
  }
  std::filesystem::remove_all(dir);
  return {!out[0].empty() && out[0] == out[1], std::to_string(out[0].size()) + " bytes, identical: " + (out[0] == out[1] ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {1, "cube radial values", 1, cube_values},
      {2, "ball closed forms", 5, ball_values},
      {3, "volume identities", 30, volumes},
      {4, "F_1 two-route identity", 30, f1_two_routes},
      {5, "sphere Parseval identity", 60, parseval},
      {6, "cosine bridge", 60, cosine_bridge},
      {7, "inclusion chains", 120, chains},
      {8, "isoperimetric suite", 120, isoperimetric},
      {9, "square F_p nonconvexity", 10, nonconvexity},
      {10, "special-function oracles", 10, special_functions},
      {11, "Berwald 1-D equality", 5, berwald},
      {12, "determinism", 0, [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %-26s %7.2fs%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                in_time ? "" : " (over budget)", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
