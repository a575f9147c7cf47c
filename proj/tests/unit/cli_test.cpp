#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "leafmult/cli/commands.hpp"
#include "leafmult/cli/suites.hpp"
#include "leafmult/cli/trace.hpp"

using namespace leafmult;
using nlohmann::json;

namespace {

const std::filesystem::path kManifests = LEAFMULT_MANIFEST_DIR;

ProblemManifest manifest(const char* name) { return load_manifest((kManifests / (std::string(name) + ".json")).string()); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("leafmult_cli_test_" + name)).string();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

void write_json(const json& j, const std::string& path) { std::ofstream(path) << j.dump(2); }

int run_binary(const std::string& args) {
  const std::string cmd = std::string(LEAFMULT_CLI_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ErrorCode parse_error_of(const json& j) {
  try {
    build_problem(parse_manifest(j));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kDegenerate;
}

json flat_json() {
  return {{"variables", {"x", "y", "z"}}, {"V1", {"1", "0", "0"}}, {"V2", {"0", "1", "0"}}, {"point", {"0", "0", "0"}},
          {"F", "x"}, {"G", "y"}};
}

}  // namespace

TEST_CASE("manifest parsing") {
  ProblemManifest m = parse_manifest(flat_json());
  CHECK(m.variables.size() == 3);
  CHECK(m.options.seed == 0);
  CHECK(m.options.jet_order == 0);
  CHECK(parse_manifest(to_json(m)).v1 == m.v1);

  json j = flat_json();
  j.erase("V2");
  CHECK(parse_error_of(j) == ErrorCode::kParse);
  j = flat_json();
  j["point"] = {"0", "0"};
  CHECK(parse_error_of(j) == ErrorCode::kParse);
  j = flat_json();
  j["F"] = "x*(w+1)";
  CHECK(parse_error_of(j) == ErrorCode::kParse);
  j = flat_json();
  j["point"] = {"0", "1/0", "0"};
  CHECK(parse_error_of(j) == ErrorCode::kParse);
  j = flat_json();
  j["options"] = {{"seed", -1}};
  CHECK(parse_error_of(j) == ErrorCode::kParse);
  j = flat_json();
  j["options"] = {{"seed", 7}, {"jet_order", 12}, {"budget", 100}};
  m = parse_manifest(j);
  CHECK(m.options.seed == 7);
  CHECK(m.options.jet_order == 12);
  CHECK(m.options.budget == 100);
  OptionOverrides o;
  o.seed = 9;
  o.apply(m.options);
  CHECK(m.options.seed == 9);
  CHECK(m.options.jet_order == 12);
}

TEST_CASE("cmd_check") {
  std::ostringstream out;
  CHECK(cmd_check(manifest("e1-flat"), out) == kExitOk);
  CHECK(out.str().find("OK") != std::string::npos);
  std::ostringstream bad;
  CHECK(cmd_check(manifest("noncommuting"), bad) == kExitHypothesis);
  CHECK(bad.str().find("[V1, V2]_x = -x") != std::string::npos);
  std::ostringstream degenerate;
  CHECK(cmd_check(manifest("degenerate-point"), degenerate) == kExitHypothesis);
  CHECK(degenerate.str().find("nonsingularity: FAIL") != std::string::npos);
}

TEST_CASE("cmd_bound and trace round trip") {
  SUBCASE("E1") {
    ProblemManifest m = manifest("e1-flat");
    m.options.trace = temp_path("e1.json");
    std::ostringstream out;
    CHECK(cmd_bound(m, out) == kExitOk);
    json t = read_json(m.options.trace);
    CHECK(t.at("trace_version") == 1);
    CHECK(t.at("status") == "point-excluded");
    CHECK(t.at("bound").get<std::uint64_t>() >= 2);
    bool jacobian = false;
    for (const auto& s : t.at("steps")) jacobian = jacobian || s.at("kind") == "jacobian";
    CHECK(jacobian);
    CHECK(verify_trace(t).ok());

    json tampered = t;
    tampered["bound"] = 1;
    CHECK_FALSE(verify_trace(tampered).ok());
    tampered = t;
    tampered["steps"][0]["global_after"].push_back("y");
    CHECK_FALSE(verify_trace(tampered).ok());
    tampered = t;
    tampered["trace_version"] = 2;
    CHECK_THROWS_AS(verify_trace(tampered), Error);

    const std::string bad_path = temp_path("e1-tampered.json");
    tampered = t;
    tampered["bound"] = 1;
    write_json(tampered, bad_path);
    std::ostringstream vout;
    CHECK(cmd_verify_trace(bad_path, vout) == kExitCertificate);
    std::ostringstream good;
    CHECK(cmd_verify_trace(m.options.trace, good) == kExitOk);
  }
  SUBCASE("isolated input") {
    ProblemManifest m = manifest("isolated-flat");
    m.options.trace = temp_path("iso.json");
    std::ostringstream out;
    CHECK(cmd_bound(m, out) == kExitOk);
    CHECK(read_json(m.options.trace).at("bound") == 1);
  }
  SUBCASE("budget-starved options give a partial trace") {
    ProblemManifest m = manifest("e1-flat-starved");
    m.options.trace = temp_path("starved.json");
    std::ostringstream out;
    CHECK(cmd_bound(m, out) == kExitPartial);
    json t = read_json(m.options.trace);
    CHECK(t.at("status") == "exhausted-budget");
    CHECK(t.at("bound").is_null());
    CHECK(verify_trace(t).ok());
  }
  SUBCASE("hypothesis failure") {
    ProblemManifest m = manifest("e1-flat");
    m.G = m.F;
    std::ostringstream out;
    CHECK(cmd_bound(m, out) == kExitHypothesis);
  }
}

TEST_CASE("cmd_verify suites") {
  std::ostringstream out;
  CHECK(cmd_verify("lt-facts", 0, 100, out) == kExitOk);
  CHECK(cmd_verify("poisson-lemma", 0, 20, out) == kExitOk);
  CHECK(cmd_verify("all", 0, 0, out) == kExitOk);
  CHECK(cmd_verify("no-such-suite", 0, 1, out) == kExitParse);
  for (const auto& name : suite_names()) CHECK(run_suite(name, 5, 0).passed());
}

TEST_CASE("cmd_appendix") {
  for (const char* name : {"appendix-simple", "appendix-double", "appendix-cusp"}) {
    CAPTURE(name);
    ProblemManifest m = manifest(name);
    m.options.trace = temp_path(std::string(name) + ".json");
    std::ostringstream out;
    CHECK(cmd_appendix(m, out) == kExitOk);
    json t = read_json(m.options.trace);
    CHECK(t.at("trace_version") == 1);
    CHECK(t.at("witness").at("holds") == true);
    CHECK(verify_trace(t).ok());
  }
  ProblemManifest m = manifest("appendix-simple");
  m.F = "x-y^2";
  std::ostringstream out;
  CHECK(cmd_appendix(m, out) == kExitHypothesis);
}

TEST_CASE("binary exit codes") {
  const std::string dir = kManifests.string() + "/";
  CHECK(run_binary("check --manifest " + dir + "e1-flat.json") == 0);
  CHECK(run_binary("check --manifest " + dir + "noncommuting.json") == 2);
  CHECK(run_binary("check --manifest " + dir + "missing.json") == 1);
  CHECK(run_binary("bound --manifest " + dir + "isolated-flat.json") == 0);
  CHECK(run_binary("bound --manifest " + dir + "e1-flat.json --budget 3") == 3);
  CHECK(run_binary("verify --suite lt-facts --count 5 --seed 3") == 0);
  CHECK(run_binary("verify --from-trace " + dir + "missing.json") == 1);
  CHECK(run_binary("appendix --manifest " + dir + "appendix-simple.json") == 0);
  CHECK(run_binary("frobnicate") == 1);
}
