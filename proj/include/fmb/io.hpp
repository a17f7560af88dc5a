#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fmb/bodies.hpp"
#include "fmb/star.hpp"
#include "fmb/verify.hpp"

namespace fmb {

using Json = nlohmann::ordered_json;

// Parses, validates and centers. Throws ValidationError naming the field.
Body body_from_json(const Json& j);
Json body_to_json(const Body& b);
Body load_body(const std::string& path);

// Header dir_0,...,dir_{n-1},rho,err_est; 17 significant digits; inf for markers.
std::string star_csv(const StarSample& M);
StarSample parse_star_csv(const std::string& text);
StarSample read_star_csv(const std::string& path);

const char* relation_name(Relation r);
Json report_to_json(const CheckReport& r);
Json reports_to_json(const std::vector<CheckReport>& reports, std::uint64_t seed);

const Json& body_schema();
const Json& report_schema();

std::string read_text(const std::string& path);
// Writes to a sibling temporary file, then renames over path.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace fmb
