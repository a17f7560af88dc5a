// fmb: sample mean bodies, run verification suites, write figure data, print schemas.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fmb/io.hpp"
#include "fmb/starops.hpp"
#include "fmb/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string body_path;
  std::string family = "R";
  double p = 1;
  int grid = 360;
  std::string route = "direct";
  std::string out_path;
  std::string suite = "all";
  std::optional<double> suite_p;
  std::uint64_t seed = 42;
  std::string kind;
  std::string out_dir = ".";
};

std::optional<fmb::Family> parse_family(const std::string& s) {
  if (s == "R") return fmb::Family::R;
  if (s == "F") return fmb::Family::F;
  if (s == "Z") return fmb::Family::Z;
  if (s == "Gamma") return fmb::Family::GammaPolar;
  if (s == "I") return fmb::Family::I;
  return std::nullopt;
}

std::optional<fmb::Route> parse_route(const std::string& s) {
  if (s == "direct") return fmb::Route::direct;
  if (s == "closed_form") return fmb::Route::closed_form;
  if (s == "z_route") return fmb::Route::z_route;
  if (s == "i_route") return fmb::Route::i_route;
  return std::nullopt;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    fmb::write_text_atomic(path, text);
}

int cmd_compute(const RunConfig& cfg) {
  const auto family = parse_family(cfg.family);
  const auto route = parse_route(cfg.route);
  if (!family || !route) {
    std::cerr << "error: unknown family or route\n";
    return kExitUsage;
  }
  if (cfg.grid < 8 || cfg.grid % 2) {
    std::cerr << "error: --grid must be even and at least 8\n";
    return kExitUsage;
  }
  fmb::Body body;
  try {
    body = fmb::load_body(cfg.body_path);
  } catch (const fmb::ValidationError& e) {
    std::cerr << "invalid body: " << e.what() << "\n";
    return kExitUsage;
  }
  fmb::RadialEvaluator eval{body, *family, cfg.p, *route, {}};
  const auto M = fmb::sample_star(eval, cfg.grid);
  int markers = 0;
  for (int i = 0; i < M.size(); ++i)
    if (std::isinf(M.radii[i])) ++markers;
  if (markers) std::cerr << "warning: " << markers << " divergent directions written as inf\n";
  emit(cfg.out_path, fmb::star_csv(M));
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  const auto& names = fmb::suite_names();
  if (cfg.suite != "all" && std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
    std::cerr << "error: unknown suite '" << cfg.suite << "'\n";
    return kExitUsage;
  }
  fmb::SuiteConfig sc;
  sc.suite = cfg.suite;
  sc.p = cfg.suite_p;
  sc.options.seed = cfg.seed;
  if (!cfg.body_path.empty()) {
    try {
      std::string id = cfg.body_path;
      id = id.substr(id.find_last_of('/') + 1);
      id = id.substr(0, id.find('.'));
      sc.body = fmb::NamedBody{id, fmb::load_body(cfg.body_path)};
    } catch (const fmb::ValidationError& e) {
      std::cerr << "invalid body: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  const auto reports = fmb::run_suite(sc);
  emit(cfg.out_path, fmb::reports_to_json(reports, cfg.seed).dump(2) + "\n");
  int failed = 0;
  for (const auto& r : reports)
    if (!r.pass && !r.exploratory) {
      ++failed;
      std::cerr << "FAIL " << r.check_id << " [" << r.body_id << "] lhs=" << r.lhs << " rhs=" << r.rhs << "\n";
    }
  return failed ? kExitFail : kExitPass;
}

// Boundary curves of F_p for p = 0.5 (convex) and p = 1.5 (not convex).
int cmd_plot(const RunConfig& cfg) {
  if (cfg.grid < 8 || cfg.grid % 2) {
    std::cerr << "error: --grid must be even and at least 8\n";
    return kExitUsage;
  }
  fmb::Body body;
  try {
    body = cfg.body_path.empty() ? fmb::reference_body("square").body : fmb::load_body(cfg.body_path);
  } catch (const fmb::ValidationError& e) {
    std::cerr << "invalid body: " << e.what() << "\n";
    return kExitUsage;
  }
  std::filesystem::create_directories(cfg.out_dir);
  for (const char* p : {"0.5", "1.5"}) {
    const auto M = fmb::sample_star(fmb::RadialEvaluator{body, fmb::Family::F, std::stod(p), fmb::Route::direct, {}}, cfg.grid);
    const auto path = std::filesystem::path(cfg.out_dir) / (std::string("F_") + p + ".csv");
    fmb::write_text_atomic(path.string(), fmb::star_csv(M));
    std::cout << path.string() << "\n";
  }
  return kExitPass;
}

int cmd_schema(const RunConfig& cfg) {
  if (cfg.kind.empty()) {
    fmb::Json both;
    both["body"] = fmb::body_schema();
    both["report"] = fmb::report_schema();
    std::cout << both.dump(2) << "\n";
  } else if (cfg.kind == "body") {
    std::cout << fmb::body_schema().dump(2) << "\n";
  } else if (cfg.kind == "report") {
    std::cout << fmb::report_schema().dump(2) << "\n";
  } else {
    std::cerr << "error: unknown schema kind '" << cfg.kind << "'\n";
    return kExitUsage;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial, Fourier and polar mean bodies of convex bodies"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* compute = app.add_subcommand("compute", "sample a radial function and write CSV");
  compute->add_option("--body", cfg.body_path, "body JSON")->required();
  compute->add_option("--family", cfg.family, "R, F, Z, Gamma or I");
  compute->add_option("--p", cfg.p, "order");
  compute->add_option("--grid", cfg.grid, "number of directions (even, >= 8)");
  compute->add_option("--route", cfg.route, "direct, closed_form, z_route or i_route");
  compute->add_option("--out", cfg.out_path, "CSV path (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "run a check suite and write the report");
  verify->add_option("--suite", cfg.suite, "suite name or all");
  verify->add_option("--body", cfg.body_path, "body JSON replacing the reference bodies");
  verify->add_option("--p", cfg.suite_p, "restrict p-indexed checks to one order");
  verify->add_option("--seed", cfg.seed, "seed");
  verify->add_option("--out", cfg.out_path, "report path (stdout when omitted)");

  auto* plot = app.add_subcommand("plot", "write F_p curves at p = 0.5 and 1.5 as CSV");
  plot->add_option("--body", cfg.body_path, "body JSON (unit square when omitted)");
  plot->add_option("--grid", cfg.grid, "number of directions (even, >= 8)");
  plot->add_option("--out-dir", cfg.out_dir, "output directory");

  auto* schema = app.add_subcommand("schema", "print JSON schemas");
  schema->add_option("--kind", cfg.kind, "body or report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*plot) return cmd_plot(cfg);
    if (*schema) return cmd_schema(cfg);
  } catch (const std::exception& e) {  // domain errors and I/O failures
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
