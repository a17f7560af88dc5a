#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmb/bodies.hpp"
#include "fmb/meanbodies.hpp"

namespace fmb {

enum class Relation { eq, le, ge };

// One numeric comparison. margin is the signed slack: pass iff margin >= 0
// (and the tolerance covers the propagated quadrature error).
struct CheckReport {
  std::string check_id;
  std::string body_id;
  std::map<std::string, double> params;
  double lhs = 0;
  double rhs = 0;
  Relation relation = Relation::eq;
  double tolerance = 0;  // absolute
  double margin = 0;
  bool pass = false;
  std::uint64_t seed = 0;
  double runtime_ms = 0;
  double propagated_error = 0;
  bool exploratory = false;
  bool skipped = false;
  std::string note;
};

// Fills margin and pass from lhs, rhs, relation, tolerance and propagated_error.
void finalize(CheckReport& r);

// An inequality tolerance that never lets quadrature noise decide.
double inequality_tolerance(double propagated_error);

struct NamedBody {
  std::string id;
  Body body;
};

// Q_2, disk, triangle, random pentagon (seeded), ellipses diag(2,1/2) and diag(3,1/3).
NamedBody reference_body(const std::string& id, std::uint64_t seed = 42);

struct CheckOptions {
  int grid = 256;  // 2-D direction count
  std::uint64_t seed = 42;
  QuadConfig quad;
};

std::vector<CheckReport> check_volume_identities(const NamedBody& k, const CheckOptions& opt = {});
std::vector<CheckReport> check_chains(const NamedBody& k, const std::vector<double>& p_list,
                                      const std::vector<double>& f_list, const CheckOptions& opt = {});
std::vector<CheckReport> check_isoperimetric(const NamedBody& k, double p, const CheckOptions& opt = {});
CheckReport check_parseval_sphere(const NamedBody& k, double p, const CheckOptions& opt = {});
CheckReport check_cosine_bridge(const NamedBody& k, double p, const CheckOptions& opt = {});
std::vector<CheckReport> check_square_nonconvexity(double p, const CheckOptions& opt = {});
CheckReport check_berwald_equality_1d(const DensitySpec1D& g, const std::vector<double>& p_list,
                                      const CheckOptions& opt = {});
std::vector<CheckReport> check_misc(const CheckOptions& opt = {});

// Curvature expression of the square's F_p boundary near the axis:
// theta^p (r^2 + (1/p + 1/p^2) r'^2 - r r'' / p) with r = rho^p.
double square_curvature_scaled(double p, double theta);
// (4-p)(3-p)(2-p)(1-p) / (2p)
double square_curvature_limit(double p);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"volumes",       "chains",      "isoperimetric", "parseval",
                                              "cosine_bridge", "nonconvexity", "berwald1d",    "misc"};
  return names;
}

struct SuiteConfig {
  std::string suite = "all";
  std::optional<NamedBody> body;  // replaces the reference set in body-dependent suites
  std::optional<double> p;        // restricts p-indexed suites to one order
  CheckOptions options;
};

// Reports in check_id order; throws DomainError for an unknown suite.
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace fmb
