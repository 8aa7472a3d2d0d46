#pragma once

// Inverting Pi(M, tau) <= Pi*: the minimal PRB count M for a forecast cell
// throughput tau.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prbdim/congestion.hpp"

namespace prbdim {

struct Intensities {
  double delta = 0.0;  // users per km of road
  double kappa = 0.0;  // users per km^2
};

// u = tau / C*, split as delta = f u / (lambda pi R^2), kappa = (1-f) u / (pi R^2).
// Throws InfeasibleSplitError when f > 0 and lambda = 0.
Intensities intensities_from_throughput(double throughput_bps, double rate_bps,
                                        double cell_radius_km, double road_intensity,
                                        double outdoor_fraction);

struct DimensionQuery {
  Scenario scenario;  // radio, geometry (lambda), sampler, seed, realizations
  double target_congestion = 0.05;
  double throughput_bps = 0.0;
  double outdoor_fraction = 1.0;
  std::size_t m_ceiling = 4096;

  void validate() const;
};

struct DimensionReport {
  std::size_t required_m = 0;
  double pi_at_required = 0.0;  // Pi(required_m)
  double pi_before = 1.0;       // Pi(required_m - 1); 1 when required_m = 0
  double stderr_at_required = 0.0;
  double stderr_before = 0.0;
  double expected_load = 0.0;
  Intensities intensities;
  CongestionCurve curve;  // Pi(0..m_hi) on the common realization set
};

DimensionReport dimension_prbs(const DimensionQuery& query, std::size_t threads = 0);

struct SweepPoint {
  double throughput_bps = 0.0;
  double road_intensity = 0.0;
  double target_congestion = 0.05;
};

struct SweepRow {
  SweepPoint point;
  std::optional<DimensionReport> report;
  std::string error;  // set when report is empty
  double achieved = 0.0;  // for ceiling failures: Pi at the ceiling
};

// One row per grid point, in grid order. Points that share lambda reuse the
// same road realizations. Failing points are reported, not thrown.
std::vector<SweepRow> sweep(const DimensionQuery& base, const std::vector<SweepPoint>& grid,
                            std::size_t threads = 0);

// Cartesian grid tau x lambda x target (tau varies fastest).
std::vector<SweepPoint> make_grid(const std::vector<double>& throughputs_bps,
                                  const std::vector<double>& road_intensities,
                                  const std::vector<double>& targets);

}  // namespace prbdim
