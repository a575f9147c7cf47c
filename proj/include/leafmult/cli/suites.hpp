#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace leafmult {

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;       // instances checked
  std::size_t violations = 0;  // failed assertions
  std::size_t skipped = 0;     // draws rejected by the generator (e.g. infinite multiplicity)
  std::vector<std::string> failures;  // first few failing instances
  double seconds = 0;
  bool passed() const { return violations == 0; }
};

/// Names accepted by run_suite: radical-lemma, power-lemma, lt-facts,
/// poisson-lemma, foliation.
const std::vector<std::string>& suite_names();

/// Runs `count` seeded random instances of a suite. Throws kInvalidArgument
/// on an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t count);

}  // namespace leafmult
