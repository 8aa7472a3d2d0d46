#pragma once

// Self-checks run by `prbdim validate`: the exact identities of the
// compound-Poisson engine, Monte Carlo against the analytic curve, and the
// figure-level deltas and orderings on the bundled scenarios.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "prbdim/dimension.hpp"
#include "prbdim/scenario_file.hpp"

namespace prbdim {

struct Check {
  std::string name;
  double value = 0.0;  // observed statistic
  double lower = 0.0;  // accepted range [lower, upper]
  double upper = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool passed() const noexcept;
};

SuiteReport validate_identities(std::uint64_t seed);

// Analytic averaged curve against `replications` end-to-end draws. Each M
// passes if the gap fits a Wilson interval at z = 3.29 plus three analytic
// standard errors. m_max = 0 picks suggested_m_max.
SuiteReport validate_mc(const Scenario& scenario, std::size_t replications, std::size_t m_max,
                        std::size_t threads = 0);

// Deltas and orderings on the bundled figure scenarios found in `dir`.
SuiteReport validate_figures(const std::string& dir, std::uint64_t seed, std::size_t threads = 0);

// Query that dimensions a loaded scenario at its own throughput and split.
DimensionQuery query_for(const ScenarioFile& file, double target);

void print_report(const SuiteReport& report, std::ostream& out);
// One JSON object: suite, seed, passed, checks[].
void write_summary_json(const SuiteReport& report, std::ostream& out);

}  // namespace prbdim
