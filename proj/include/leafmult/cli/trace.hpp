#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "leafmult/appendix/appendix.hpp"
#include "leafmult/cli/manifest.hpp"
#include "leafmult/pairs/pairs.hpp"

namespace leafmult {

constexpr int kTraceVersion = 1;

nlohmann::json bound_trace(const ProblemManifest& m, const BoundReport& report);
nlohmann::json appendix_trace(const ProblemManifest& m, const ExtensionWitness& w, double seconds);

/// One re-checked certificate.
struct TraceCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct TraceVerification {
  std::vector<TraceCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return !checks.empty();
  }
};

/// Re-derives every certificate in a trace from its embedded manifest.
/// Throws kParse on a malformed trace or an unsupported trace_version.
TraceVerification verify_trace(const nlohmann::json& trace);

}  // namespace leafmult
