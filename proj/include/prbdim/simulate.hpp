#pragma once

// End-to-end Monte Carlo: draw roads and users, give every user its PRB
// demand from the profile, and add them up. Shares no code with the
// compound-Poisson path beyond the demand profiles.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prbdim/congestion.hpp"

namespace prbdim {

struct LoadSample {
  std::int64_t gamma = 0;               // total requested PRBs
  std::int64_t outdoor_users = 0;
  std::int64_t indoor_users = 0;
  std::vector<std::int64_t> per_level;  // users demanding n PRBs (index n-1)
};

// PRBs requested by the users of one drop.
LoadSample load_of(const CellModel& model, const UserDrop& drop);

// One replication: fresh roads, fresh users.
LoadSample simulate_once(const CellModel& model, Rng& rng);

// Users only, roads held fixed (conditional law given the line process).
LoadSample simulate_given_roads(const CellModel& model, const RoadRealization& road, Rng& rng);

struct EmpiricalCurve {
  std::vector<double> ccdf;      // P^(Gamma >= M), M = 0..m_max
  std::vector<double> ci_lower;  // Wilson 95% interval
  std::vector<double> ci_upper;
  std::size_t replications = 0;
  double mean_gamma = 0.0;
  double gamma_variance = 0.0;  // unbiased sample variance
  double mean_outdoor_users = 0.0;
  double mean_indoor_users = 0.0;
  double nominal_users = 0.0;  // (lambda delta + kappa) pi R^2, for comparison
  std::vector<double> level_mean;
  std::vector<double> level_variance;
};

// Wilson score interval for `hits` successes out of `trials` at z = 1.96.
std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z = 1.96);

// Replication i uses stream (seed, simulation, i). Needs >= 100 replications.
EmpiricalCurve empirical_ccdf(const CellModel& model, std::size_t m_max,
                              std::size_t replications, std::size_t threads = 0);
EmpiricalCurve empirical_ccdf(const Scenario& scenario, std::size_t m_max,
                              std::size_t replications, std::size_t threads = 0);

// Same, conditional on one fixed road realization.
EmpiricalCurve empirical_conditional_ccdf(const CellModel& model, const RoadRealization& road,
                                          std::size_t m_max, std::size_t replications,
                                          std::size_t threads = 0);

}  // namespace prbdim
