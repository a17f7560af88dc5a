#include "fmb/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fmb {

namespace {

std::vector<double> real_array(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ValidationError(field + ": expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError(field + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

// Rows of a nested array as matrix columns (points) or rows.
Mat real_rows(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ValidationError(field + ": expected a non-empty array of arrays");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(real_array(j[i], field + "[" + std::to_string(i) + "]"));
  const std::size_t w = rows[0].size();
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != w) throw ValidationError(field + ": rows of unequal length");
  Mat M(rows.size(), w);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < w; ++k) M(i, k) = rows[i][k];
  return M;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), Eigen::Index(v.size())); }

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json rows_json(const Mat& M) {
  Json a = Json::array();
  for (int i = 0; i < M.rows(); ++i) a.push_back(vec_json(M.row(i).transpose()));
  return a;
}

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ValidationError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

// Non-finite values have no JSON literal; they are written as strings.
Json real_json(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

}  // namespace

Body body_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("body: expected an object");
  if (!j.contains("type") || !j["type"].is_string()) throw ValidationError("type: expected a string");
  const std::string type = j["type"].get<std::string>();
  auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw ValidationError(std::string(key) + ": required for type " + type);
    return j[key];
  };
  Body b;
  if (type == "box") {
    b = make_box(to_vec(real_array(need("half_widths"), "half_widths")));
  } else if (type == "ellipsoid") {
    const Mat T = real_rows(need("matrix"), "matrix");
    const Vec c = to_vec(real_array(need("center"), "center"));
    b = make_ellipsoid(T, c);
  } else if (type == "polygon") {
    const Mat P = real_rows(need("vertices"), "vertices");
    if (P.cols() != 2) throw ValidationError("vertices: polygon vertices are [x, y] pairs");
    b = make_polygon(P.transpose());
  } else if (type == "simplex") {
    const Mat P = real_rows(need("vertices"), "vertices");
    if (P.rows() != P.cols() + 1) throw ValidationError("vertices: a simplex in R^n has n + 1 vertices");
    b = make_simplex(P.transpose());
  } else {
    throw ValidationError("type: unknown body type '" + type + "'");
  }
  validate(b);
  return centered(b);
}

Json body_to_json(const Body& b) {
  Json j;
  switch (b.kind) {
    case BodyKind::Box:
      j["type"] = "box";
      j["half_widths"] = vec_json(b.half_widths);
      break;
    case BodyKind::Ellipsoid:
      j["type"] = "ellipsoid";
      j["matrix"] = rows_json(b.linear);
      j["center"] = vec_json(b.center);
      break;
    case BodyKind::Polygon:
      j["type"] = "polygon";
      j["vertices"] = rows_json(b.vertices.transpose());
      break;
    case BodyKind::Simplex:
      j["type"] = "simplex";
      j["vertices"] = rows_json(b.vertices.transpose());
      break;
  }
  return j;
}

Body load_body(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return body_from_json(j);
}

std::string star_csv(const StarSample& M) {
  std::string out;
  for (int k = 0; k < M.n; ++k) out += "dir_" + std::to_string(k) + ",";
  out += "rho,err_est\n";
  for (int i = 0; i < M.size(); ++i) {
    for (int k = 0; k < M.n; ++k) out += format_real(M.directions(k, i)) + ",";
    out += format_real(M.radii[i]) + "," + format_real(M.err_est[i]) + "\n";
  }
  return out;
}

StarSample parse_star_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw ValidationError("csv: empty input");
  const auto header = split(line);
  const int n = int(header.size()) - 2;
  if (n < 1 || header[n] != "rho" || header[n + 1] != "err_est")
    throw ValidationError("csv: header must be dir_0,...,rho,err_est");
  for (int k = 0; k < n; ++k)
    if (header[k] != "dir_" + std::to_string(k)) throw ValidationError("csv: bad header column " + header[k]);
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (int(cells.size()) != n + 2) throw ValidationError("csv line " + std::to_string(lineno) + ": wrong column count");
    std::vector<double> r;
    for (const auto& c : cells) r.push_back(parse_real(c, lineno));
    rows.push_back(r);
  }
  StarSample M;
  M.n = n;
  const int N = int(rows.size());
  M.directions.resize(n, N);
  M.radii.resize(N);
  M.err_est.resize(N);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < n; ++k) M.directions(k, i) = rows[i][k];
    M.radii[i] = rows[i][n];
    M.err_est[i] = rows[i][n + 1];
  }
  return M;
}

StarSample read_star_csv(const std::string& path) { return parse_star_csv(read_text(path)); }

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::eq: return "eq";
    case Relation::le: return "le";
    case Relation::ge: return "ge";
  }
  return "eq";
}

Json report_to_json(const CheckReport& r) {
  Json j;
  j["check_id"] = r.check_id;
  j["body_id"] = r.body_id;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = real_json(v);
  j["params"] = params;
  j["lhs"] = real_json(r.lhs);
  j["rhs"] = real_json(r.rhs);
  j["relation"] = relation_name(r.relation);
  j["tolerance"] = real_json(r.tolerance);
  j["margin"] = real_json(r.margin);
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["runtime_ms"] = r.runtime_ms;
  j["propagated_error"] = real_json(r.propagated_error);
  j["exploratory"] = r.exploratory;
  j["skipped"] = r.skipped;
  j["note"] = r.note;
  return j;
}

Json reports_to_json(const std::vector<CheckReport>& reports, std::uint64_t seed) {
  Json j;
  j["version"] = "fmb-report/1";
  j["seed"] = seed;
  j["pass"] = all_pass(reports);
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  j["reports"] = arr;
  return j;
}

const Json& body_schema() {
  static const Json schema = Json::parse(R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "fmb body",
  "oneOf": [
    {"type": "object", "required": ["type", "half_widths"],
     "properties": {"type": {"const": "box"},
                    "half_widths": {"type": "array", "minItems": 1, "items": {"type": "number", "exclusiveMinimum": 0}}}},
    {"type": "object", "required": ["type", "matrix", "center"],
     "properties": {"type": {"const": "ellipsoid"},
                    "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
                    "center": {"type": "array", "items": {"type": "number"}}}},
    {"type": "object", "required": ["type", "vertices"],
     "properties": {"type": {"const": "polygon"},
                    "vertices": {"type": "array", "minItems": 3,
                                 "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}}}}},
    {"type": "object", "required": ["type", "vertices"],
     "properties": {"type": {"const": "simplex"},
                    "vertices": {"type": "array", "minItems": 2, "items": {"type": "array", "items": {"type": "number"}}}}}
  ]
})");
  return schema;
}

const Json& report_schema() {
  static const Json schema = Json::parse(R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "fmb report",
  "type": "object",
  "required": ["version", "seed", "pass", "reports"],
  "properties": {
    "version": {"const": "fmb-report/1"},
    "seed": {"type": "integer"},
    "pass": {"type": "boolean"},
    "reports": {"type": "array", "items": {
      "type": "object",
      "required": ["check_id", "body_id", "params", "lhs", "rhs", "relation", "tolerance", "margin", "pass", "seed",
                   "runtime_ms", "propagated_error", "exploratory", "skipped", "note"],
      "properties": {
        "check_id": {"type": "string"},
        "body_id": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": ["number", "string"]}},
        "lhs": {"type": ["number", "string"]},
        "rhs": {"type": ["number", "string"]},
        "relation": {"enum": ["eq", "le", "ge"]},
        "tolerance": {"type": ["number", "string"]},
        "margin": {"type": ["number", "string"]},
        "pass": {"type": "boolean"},
        "seed": {"type": "integer"},
        "runtime_ms": {"type": "number"},
        "propagated_error": {"type": ["number", "string"]},
        "exploratory": {"type": "boolean"},
        "skipped": {"type": "boolean"},
        "note": {"type": "string"}
      }
    }}
  }
})");
  return schema;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fmb
