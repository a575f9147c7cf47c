#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leafmult/foliation/foliation.hpp"
#include "leafmult/ideal/groebner.hpp"

namespace leafmult {

struct ManifestOptions {
  std::uint64_t seed = 0;
  int jet_order = 0;  // 0: default
  std::size_t budget = 2'000'000;  // Groebner steps per basis computation
  std::string trace;  // output path, empty: none
};

/// A problem: ring, two commuting fields, base point, and either a pair F, G
/// (bound) or an ideal I with F in I (appendix).
struct ProblemManifest {
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::string> v1, v2;
  std::vector<std::string> point;
  std::optional<std::string> F, G;
  std::vector<std::string> ideal;
  ManifestOptions options;
};

/// Throws kParse with the offending field.
ProblemManifest parse_manifest(const nlohmann::json& j);
ProblemManifest load_manifest(const std::string& path);
nlohmann::json to_json(const ProblemManifest& m);

/// Parsed objects of a manifest.
struct Problem {
  RingPtr ring;
  VectorField v1, v2;
  std::vector<Rational> point;
  std::optional<Polynomial> F, G;
  std::vector<Polynomial> ideal;
};

/// Parses every polynomial in the declared ring (kParse on failure).
Problem build_problem(const ProblemManifest& m);

/// Commuting fields and an independent base point (kHypothesis / kDegenerate otherwise).
ContextPtr build_context(const Problem& p);

}  // namespace leafmult
