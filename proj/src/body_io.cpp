#include "bsl/body_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

namespace bsl {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kMaxNesting = 32;

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ParseError("body json: key '" + key + "' " + why);
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) bad_key(it.key(), "is not recognized for this kind");
  }
}

std::vector<double> number_list(const Json& j, const char* key) {
  if (!j.contains(key)) bad_key(key, "is missing");
  const Json& v = j.at(key);
  if (!v.is_array() || v.empty())
    bad_key(key, "must be a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& e : v) {
    if (!e.is_number()) bad_key(key, "must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> row_list(const Json& j, const char* key) {
  if (!j.contains(key)) bad_key(key, "is missing");
  const Json& v = j.at(key);
  if (!v.is_array() || v.empty())
    bad_key(key, "must be a non-empty array of number rows");
  std::vector<std::vector<double>> out;
  out.reserve(v.size());
  for (const Json& row : v) {
    if (!row.is_array() || row.empty())
      bad_key(key, "must contain non-empty number rows");
    std::vector<double> r;
    r.reserve(row.size());
    for (const Json& e : row) {
      if (!e.is_number()) bad_key(key, "must contain only numbers");
      r.push_back(e.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

BodySpec parse_spec(const Json& j, int depth) {
  if (depth > kMaxNesting) throw ParseError("body json: nesting too deep");
  if (!j.is_object()) throw ParseError("body json: expected an object");
  if (!j.contains("kind")) bad_key("kind", "is missing");
  if (!j.at("kind").is_string()) bad_key("kind", "must be a string");
  const std::string kind = j.at("kind").get<std::string>();

  try {
    if (kind == "rhombus") {
      check_keys(j, {"kind", "a"});
      return BodySpec::rhombus(number_list(j, "a"));
    }
    if (kind == "box") {
      check_keys(j, {"kind", "a"});
      return BodySpec::box(number_list(j, "a"));
    }
    if (kind == "ellipsoid") {
      check_keys(j, {"kind", "a"});
      return BodySpec::ellipsoid(number_list(j, "a"));
    }
    if (kind == "hpolytope") {
      check_keys(j, {"kind", "normals", "offsets", "vertices"});
      auto normals = row_list(j, "normals");
      auto offsets = number_list(j, "offsets");
      std::vector<std::vector<double>> vertices;
      if (j.contains("vertices")) vertices = row_list(j, "vertices");
      return BodySpec::hpolytope(std::move(normals), std::move(offsets),
                                 std::move(vertices));
    }
    if (kind == "linear_image") {
      check_keys(j, {"kind", "base", "matrix"});
      if (!j.contains("base")) bad_key("base", "is missing");
      BodySpec base = parse_spec(j.at("base"), depth + 1);
      auto rows = row_list(j, "matrix");
      const std::size_t d = std::size_t(base.dim);
      if (rows.size() != d) bad_key("matrix", "must be square of the base dimension");
      std::vector<double> flat;
      flat.reserve(d * d);
      for (const auto& r : rows) {
        if (r.size() != d)
          bad_key("matrix", "must be square of the base dimension");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      return BodySpec::linear_image(std::move(base), std::move(flat));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    // geometric validation of a parsed payload is still an input problem
    throw ParseError("body json: kind '" + kind + "': " + e.what());
  }
  bad_key("kind",
          "must be one of rhombus, box, ellipsoid, hpolytope, linear_image");
}

Json spec_to_json(const BodySpec& spec) {
  Json j;
  if (const auto* r = std::get_if<Rhombus>(&spec.shape)) {
    j["kind"] = "rhombus";
    j["a"] = r->a;
  } else if (const auto* b = std::get_if<Box>(&spec.shape)) {
    j["kind"] = "box";
    j["a"] = b->a;
  } else if (const auto* e = std::get_if<Ellipsoid>(&spec.shape)) {
    j["kind"] = "ellipsoid";
    j["a"] = e->a;
  } else if (const auto* h = std::get_if<HPolytopeSym>(&spec.shape)) {
    j["kind"] = "hpolytope";
    j["normals"] = h->normals;
    j["offsets"] = h->offsets;
    if (!h->vertices.empty()) j["vertices"] = h->vertices;
  } else {
    const auto& li = std::get<LinearImage>(spec.shape);
    j["kind"] = "linear_image";
    j["base"] = spec_to_json(*li.base);
    const std::size_t d = std::size_t(spec.dim);
    Json rows = Json::array();
    for (std::size_t r = 0; r < d; ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < d; ++c) row.push_back(li.T[r * d + c]);
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
  }
  return j;
}

}  // namespace

BodySpec parse_body_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("body json: ") + e.what());
  }
  return parse_spec(j, 0);
}

BodySpec load_body_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open body file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_body_json(buf.str());
}

std::string body_to_json(const BodySpec& spec) {
  return spec_to_json(spec).dump();
}

}  // namespace bsl
