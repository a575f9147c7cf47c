#include <iostream>

#include <CLI11.hpp>

#include "leafmult/cli/commands.hpp"

using namespace leafmult;

int main(int argc, char** argv) {
  CLI::App app{"leafmult: certified multiplicity bounds on a leaf of a commuting foliation"};
  app.require_subcommand(1);

  std::string manifest_path, suite = "all", from_trace;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  OptionOverrides overrides;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", manifest_path, "problem manifest (JSON)")->required();
    cmd->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { overrides.seed = v; }, "random seed");
    cmd->add_option_function<int>("--jet-order", [&](const int& v) { overrides.jet_order = v; }, "initial jet order");
    cmd->add_option_function<std::size_t>("--budget", [&](const std::size_t& v) { overrides.budget = v; },
                                          "Groebner step budget");
    cmd->add_option_function<std::string>("--trace", [&](const std::string& v) { overrides.trace = v; },
                                          "write the JSON trace here");
  };
  CLI::App* check = app.add_subcommand("check", "check the foliation hypotheses of a manifest");
  add_common(check);
  CLI::App* bound = app.add_subcommand("bound", "run the extension pipeline and report a bound");
  add_common(bound);
  CLI::App* appendix = app.add_subcommand("appendix", "construct the extension witness H for I and F");
  add_common(appendix);
  CLI::App* verify = app.add_subcommand("verify", "run randomized invariant suites or re-check a trace");
  verify->add_option("--suite", suite, "radical-lemma | power-lemma | lt-facts | poisson-lemma | foliation | all");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--count", count, "instances per suite");
  verify->add_option("--from-trace", from_trace, "re-verify the certificates of a JSON trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (verify->parsed()) {
    if (!from_trace.empty()) return cmd_verify_trace(from_trace, std::cout);
    return cmd_verify(suite, seed, count, std::cout);
  }
  ProblemManifest m;
  try {
    m = load_manifest(manifest_path);
  } catch (const Error& e) {
    std::cout << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  overrides.apply(m.options);
  if (check->parsed()) return cmd_check(m, std::cout);
  if (bound->parsed()) return cmd_bound(m, std::cout);
  return cmd_appendix(m, std::cout);
}
