#include <doctest.h>

#include <cmath>

#include "fmb/io.hpp"
#include "fmb/verify.hpp"

using namespace fmb;
using doctest::Approx;

namespace {

CheckReport make(double lhs, double rhs, Relation rel, double tol, double err = 0) {
  CheckReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = rel;
  r.tolerance = tol;
  r.propagated_error = err;
  finalize(r);
  return r;
}

bool every(const std::vector<CheckReport>& v, bool (*pred)(const CheckReport&)) {
  for (const auto& r : v)
    if (!pred(r)) return false;
  return true;
}

}  // namespace

TEST_CASE("report margins") {
  auto r = make(1.0, 1.05, Relation::eq, 0.1);
  CHECK(r.margin == Approx(0.05));
  CHECK(r.pass);
  CHECK_FALSE(make(1.0, 1.2, Relation::eq, 0.1).pass);
  CHECK(make(1.0, 2.0, Relation::le, 0).margin == Approx(1));
  CHECK_FALSE(make(2.0, 1.0, Relation::le, 0.5).pass);
  CHECK(make(2.0, 1.0, Relation::ge, 0).pass);
  CHECK(make(1.0, 1.0 + 1e-12, Relation::ge, 1e-9).pass);
  // a tolerance below the quadrature error cannot pass
  CHECK_FALSE(make(1.0, 1.0, Relation::eq, 1e-8, 1e-6).pass);
  CheckReport s;
  s.skipped = true;
  s.lhs = 5;
  finalize(s);
  CHECK(s.pass);
  CHECK(inequality_tolerance(0) == 1e-9);
  CHECK(inequality_tolerance(1e-6) == Approx(3e-6));
}

TEST_CASE("exploratory failures do not fail a run") {
  auto a = make(2, 1, Relation::le, 0);
  a.exploratory = true;
  CHECK(all_pass({a, make(1, 2, Relation::le, 0)}));
  CHECK_FALSE(all_pass({make(2, 1, Relation::le, 0)}));
}

TEST_CASE("reference bodies") {
  for (const char* id : {"square", "disk", "triangle", "pentagon", "ellipse", "ellipse_2"}) {
    const auto k = reference_body(id);
    CHECK(k.id == id);
    CHECK(centroid(k.body).norm() < 1e-14);
  }
  CHECK(volume(reference_body("square").body) == Approx(1));
  CHECK(reference_body("pentagon", 1).body.vertices == reference_body("pentagon", 1).body.vertices);
  CHECK_THROWS_AS(reference_body("hexagon"), DomainError);
}

TEST_CASE("square curvature limit") {
  CHECK(square_curvature_limit(1.5) == Approx(2.5 * 1.5 * 0.5 * -0.5 / 3));
  for (double p : {1.1, 1.5}) {
    CAPTURE(p);
    const double L = square_curvature_limit(p);
    CHECK(L < 0);
    CHECK(std::abs(square_curvature_scaled(p, 1e-4) - L) <= 0.05 * std::abs(L));
  }
}

TEST_CASE("misc and Berwald suites pass") {
  SuiteConfig cfg;
  cfg.suite = "misc";
  const auto misc = run_suite(cfg);
  CHECK(misc.size() >= 6);
  CHECK(all_pass(misc));
  cfg.suite = "berwald1d";
  const auto b = run_suite(cfg);
  CHECK(all_pass(b));
  bool control = false;
  for (const auto& r : b)
    if (r.check_id == "berwald1d.negative_control") {
      control = true;
      CHECK(r.lhs > 1e-2);
    }
  CHECK(control);
}

TEST_CASE("Berwald constant for s-affine densities") {
  const auto r = check_berwald_equality_1d(DensitySpec1D::s_affine_density(2, 0.5), {-0.5, 0, 0.5, 1, 2});
  CHECK(r.pass);
  CHECK(r.lhs <= 1e-4);
}

TEST_CASE("disk checks") {
  const auto disk = reference_body("disk");
  CHECK(every(check_volume_identities(disk), [](const CheckReport& r) { return r.pass; }));
  const auto par = check_parseval_sphere(disk, 1);
  CHECK(par.pass);
  CHECK(par.lhs == Approx(par.rhs).epsilon(5e-3));
  CHECK(check_cosine_bridge(disk, 2.5).pass);
}

TEST_CASE("suites are deterministic and sorted") {
  SuiteConfig cfg;
  cfg.suite = "misc";
  const auto a = reports_to_json(run_suite(cfg), 42).dump();
  const auto b = reports_to_json(run_suite(cfg), 42).dump();
  CHECK(a == b);
  const auto r = run_suite(cfg);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i - 1].check_id <= r[i].check_id);
  cfg.suite = "nope";
  CHECK_THROWS_AS(run_suite(cfg), DomainError);
}

TEST_CASE("suite restricted to one body and order") {
  SuiteConfig cfg;
  cfg.suite = "parseval";
  cfg.body = reference_body("disk");
  cfg.p = 1.0;
  const auto r = run_suite(cfg);
  REQUIRE(r.size() == 1);
  CHECK(r[0].body_id == "disk");
  CHECK(r[0].params.at("p") == 1.0);
}
