#pragma once

// Congestion probability of the total requested PRBs in one cell, given a
// road realization and averaged over the line process.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "prbdim/compound.hpp"
#include "prbdim/geometry.hpp"
#include "prbdim/linkmodel.hpp"

namespace prbdim {

// How outdoor users are placed: on Poisson roads (Cox), or as a spatial PPP
// with the matched intensity lambda*delta and the outdoor propagation
// constant.
enum class OutdoorModel { cox, ppp };

// Which users contribute to the load: all of them, or only those inside one
// interference region (center/middle/edge of a three-region model).
enum class Region { all, center, middle, edge };

std::string_view to_string(OutdoorModel m) noexcept;
std::string_view to_string(Region r) noexcept;

struct Scenario {
  LinkBudget link;
  InterferenceModel interference = InterferenceModel::noise_limited();
  Service service;
  GeometryParams geometry;
  // When set, delta and kappa are derived from this cell throughput and
  // outdoor_fraction; geometry's user intensities are then ignored.
  std::optional<double> throughput_bps;
  double outdoor_fraction = 1.0;
  RadiusSampler sampler = RadiusSampler::paper;
  OutdoorModel outdoor_model = OutdoorModel::cox;
  Region region = Region::all;
  std::uint64_t seed = 1;
  std::size_t mc_realizations = 1000;

  // Geometry with throughput-derived intensities applied.
  GeometryParams effective_geometry() const;
  void validate() const;
};

// Precomputed demand profiles and deterministic (indoor / PPP) masses.
class CellModel {
 public:
  explicit CellModel(const Scenario& scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  const GeometryParams& geometry() const noexcept { return geometry_; }
  const DemandProfile& outdoor_profile() const noexcept { return outdoor_; }
  const DemandProfile& indoor_profile() const noexcept { return indoor_; }
  double cell_radius_km() const noexcept { return scenario_.link.cell_radius_km; }
  std::size_t levels() const noexcept { return levels_; }

  // True when the load law depends on the road realization.
  bool has_random_roads() const noexcept;

  RoadRealization sample_roads(Rng& rng) const;

  // Combined weights w_n = mu_n(Y) + mu~_n over n = 1..levels().
  CompoundSpec spec_given(const RoadRealization& road) const;

  // Road-independent part of the weights.
  const std::vector<double>& deterministic_weights() const noexcept { return fixed_; }

 private:
  Scenario scenario_;
  GeometryParams geometry_;
  DemandProfile outdoor_;
  DemandProfile indoor_;
  std::size_t levels_ = 1;
  std::vector<double> fixed_;
};

struct CongestionCurve {
  std::vector<double> pi;              // Pi(M), M = 0..m_max
  std::vector<double> standard_error;  // Monte-Carlo standard error per M
  std::size_t realizations = 0;
};

// P(Gamma >= M | roads).
double conditional_congestion(const CellModel& model, const RoadRealization& road,
                              std::int64_t m);

// Average of the conditional CCDFs over mc_realizations road draws; draw i
// uses stream (seed, roads, i). Bit-stable for any thread count.
CongestionCurve averaged_congestion(const CellModel& model, std::size_t m_max,
                                    std::size_t threads = 0);
CongestionCurve averaged_congestion(const Scenario& scenario, std::size_t m_max,
                                    std::size_t threads = 0);

// Same average over an explicit set of combined specs.
CongestionCurve average_curves(const std::vector<CompoundSpec>& specs, std::size_t m_max,
                               std::size_t threads = 0);

// Combined specs for road draws 0..count-1.
std::vector<CompoundSpec> realization_specs(const CellModel& model, std::size_t count,
                                            std::size_t threads = 0);

// E(Gamma) = sum_n n (E[mu_n] + mu~_n) under the scenario's radius law.
double expected_load(const CellModel& model);
double expected_load(const Scenario& scenario);

// M range that covers the bulk of the load law: 2 E + 10 sqrt(N E) + 10.
std::size_t suggested_m_max(const CellModel& model);

// Closed form for consecutive rings d_1..d_N (outdoor) and d~_1..d~_N
// (indoor), paper radius law:
//   (4 delta omega / 3R) sum n (d_n^3 - d_{n-1}^3)/R + kappa pi sum n (d~_n^2 - d~_{n-1}^2).
double expected_load_rings(const std::vector<double>& outdoor_radii,
                           const std::vector<double>& indoor_radii, double delta,
                           double road_intensity, double kappa, double cell_radius_km);

}  // namespace prbdim
