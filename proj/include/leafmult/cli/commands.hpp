#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "leafmult/cli/manifest.hpp"
#include "leafmult/error.hpp"

namespace leafmult {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitHypothesis = 2,
  kExitPartial = 3,
  kExitCertificate = 4,
};

int exit_code_for(ErrorCode code);

/// Command-line values that take precedence over the manifest options.
struct OptionOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> jet_order;
  std::optional<std::size_t> budget;
  std::optional<std::string> trace;
  void apply(ManifestOptions& options) const;
};

int cmd_check(const ProblemManifest& m, std::ostream& out);
int cmd_bound(const ProblemManifest& m, std::ostream& out);
/// `suite` is a suite name or "all".
int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t count, std::ostream& out);
int cmd_verify_trace(const std::string& path, std::ostream& out);
int cmd_appendix(const ProblemManifest& m, std::ostream& out);

}  // namespace leafmult
