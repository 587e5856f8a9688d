#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specshift/random.hpp"

namespace specshift {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  int discarded = 0;  // draws rejected by validity filters or ambiguity diagnostics
  double seconds = 0.0;
  std::string first_failure;

  int trials() const noexcept { return passed + failed; }
  bool ok() const noexcept { return failed == 0 && passed > 0; }
};

// Property sweeps over random instances. `trials` counts accepted draws.
SuiteResult sylvester_suite(Rng& rng, int trials);
// `singular_trials` of the `trials` draws use a singular D with B = B' D.
SuiteResult haynsworth_suite(Rng& rng, int trials, int singular_trials);
SuiteResult main_theorem_suite(Rng& rng, int trials, bool positive_omega = false);
SuiteResult criticality_suite(Rng& rng, int trials);
SuiteResult branch_equation_suite(Rng& rng, int trials);
SuiteResult switch_identity_suite(Rng& rng, int trials);
// `graphs` random connected graphs; each assumption-meeting level is one trial.
SuiteResult magnetic_nodal_suite(Rng& rng, int graphs);
SuiteResult fiedler_suite(Rng& rng, int trees);

struct SelftestOptions {
  std::uint64_t seed = 0;
  double scale = 1.0;  // multiplies every trial count
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts);

}  // namespace specshift
