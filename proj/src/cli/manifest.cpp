#include "leafmult/cli/manifest.hpp"

#include <fstream>

#include "leafmult/error.hpp"
#include "leafmult/poly/parse.hpp"

namespace leafmult {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::kParse, "manifest: " + what); }

std::vector<std::string> strings(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) fail(std::string("missing field '") + key + "'");
    return {};
  }
  const json& v = j.at(key);
  if (!v.is_array()) fail(std::string("field '") + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (e.is_string()) out.push_back(e.get<std::string>());
    else if (e.is_number_integer()) out.push_back(std::to_string(e.get<long long>()));
    else fail(std::string("field '") + key + "' must hold strings");
  }
  return out;
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_string()) fail(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

template <class T>
T number(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
    fail(std::string("option '") + key + "' must be a non-negative integer");
  return v.get<T>();
}

Polynomial parse_in(const RingPtr& ring, const std::string& text, const std::string& field) {
  try {
    return parse_polynomial(ring, text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, "manifest: " + field + ": " + e.what());
  }
}

}  // namespace

ProblemManifest parse_manifest(const json& j) {
  if (!j.is_object()) fail("top level must be an object");
  ProblemManifest m;
  if (auto n = optional_string(j, "name")) m.name = *n;
  m.variables = strings(j, "variables", true);
  m.v1 = strings(j, "V1", true);
  m.v2 = strings(j, "V2", true);
  m.point = strings(j, "point", true);
  m.F = optional_string(j, "F");
  m.G = optional_string(j, "G");
  m.ideal = strings(j, "ideal", false);
  if (m.variables.empty()) fail("no variables");
  const std::size_t n = m.variables.size();
  if (m.v1.size() != n || m.v2.size() != n) fail("V1 and V2 need one component per variable");
  if (m.point.size() != n) fail("point arity does not match the variables");
  if (j.contains("options")) {
    const json& o = j.at("options");
    if (!o.is_object()) fail("options must be an object");
    m.options.seed = number<std::uint64_t>(o, "seed", 0);
    m.options.jet_order = number<int>(o, "jet_order", 0);
    m.options.budget = number<std::size_t>(o, "budget", m.options.budget);
    if (auto t = optional_string(o, "trace")) m.options.trace = *t;
  }
  return m;
}

ProblemManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open manifest '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, "manifest '" + path + "': " + e.what());
  }
  return parse_manifest(j);
}

json to_json(const ProblemManifest& m) {
  json j;
  if (!m.name.empty()) j["name"] = m.name;
  j["variables"] = m.variables;
  j["V1"] = m.v1;
  j["V2"] = m.v2;
  j["point"] = m.point;
  if (m.F) j["F"] = *m.F;
  if (m.G) j["G"] = *m.G;
  if (!m.ideal.empty()) j["ideal"] = m.ideal;
  j["options"] = {{"seed", m.options.seed}, {"jet_order", m.options.jet_order}, {"budget", m.options.budget}};
  return j;
}

Problem build_problem(const ProblemManifest& m) {
  Problem p;
  try {
    p.ring = make_ring(m.variables);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string("manifest: variables: ") + e.what());
  }
  std::vector<Polynomial> c1, c2;
  for (std::size_t i = 0; i < m.v1.size(); ++i) {
    c1.push_back(parse_in(p.ring, m.v1[i], "V1[" + std::to_string(i) + "]"));
    c2.push_back(parse_in(p.ring, m.v2[i], "V2[" + std::to_string(i) + "]"));
  }
  p.v1 = VectorField(p.ring, c1);
  p.v2 = VectorField(p.ring, c2);
  for (std::size_t i = 0; i < m.point.size(); ++i) {
    try {
      p.point.push_back(parse_rational(m.point[i]));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, "manifest: point[" + std::to_string(i) + "]: " + e.what());
    }
  }
  if (m.F) p.F = parse_in(p.ring, *m.F, "F");
  if (m.G) p.G = parse_in(p.ring, *m.G, "G");
  for (std::size_t i = 0; i < m.ideal.size(); ++i)
    p.ideal.push_back(parse_in(p.ring, m.ideal[i], "ideal[" + std::to_string(i) + "]"));
  return p;
}

ContextPtr build_context(const Problem& p) { return FoliationContext::create(p.v1, p.v2, p.point); }

}  // namespace leafmult
