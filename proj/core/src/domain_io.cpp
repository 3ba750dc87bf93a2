#include "infbern/domain_io.hpp"

#include <fstream>
#include <sstream>

#include "infbern/errors.hpp"
#include "json.hpp"

namespace infbern {
namespace {

using nlohmann::json;

double number_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

ConvexDomain parse_domain(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ParseError("domain must be an object with a string \"type\"");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "ball") {
    const double n = number_field(j, "n");
    if (n != static_cast<int>(n)) throw ParseError("\"n\" must be an integer");
    return ConvexDomain::ball(static_cast<int>(n), number_field(j, "radius"));
  }
  if (type == "rectangle") {
    return ConvexDomain::rectangle(number_field(j, "a"), number_field(j, "b"));
  }
  if (type == "polygon") {
    if (!j.contains("vertices") || !j.at("vertices").is_array()) {
      throw ParseError("polygon needs a \"vertices\" array");
    }
    std::vector<Vec2> vertices;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ParseError("each vertex must be [x, y]");
      }
      vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return ConvexDomain::polygon(std::move(vertices));
  }
  throw ParseError("unknown domain type \"" + type + "\"");
}

ConvexDomain load_domain(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open domain file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_domain(buf.str());
}

std::string domain_to_json(const ConvexDomain& domain) {
  json j;
  if (const auto* b = domain.as_ball()) {
    j = {{"type", "ball"}, {"n", b->dimension}, {"radius", b->radius}};
  } else if (const auto* r = domain.as_rectangle()) {
    j = {{"type", "rectangle"}, {"a", r->a}, {"b", r->b}};
  } else {
    json verts = json::array();
    for (const auto& v : domain.as_polygon()->vertices()) verts.push_back({v.x, v.y});
    j = {{"type", "polygon"}, {"vertices", verts}};
  }
  return j.dump();
}

}  // namespace infbern
