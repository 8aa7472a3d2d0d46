#pragma once

// User point processes: Poisson lines (roads) with linear PPPs of users on
// them, and a spatial PPP for indoor users.

#include <cstddef>
#include <string_view>
#include <vector>

#include "prbdim/linkmodel.hpp"
#include "prbdim/rng.hpp"

namespace prbdim {

struct GeometryParams {
  double road_intensity = 0.0;         // lambda, roads per km
  double user_intensity_linear = 0.0;  // delta, users per km of road
  double user_intensity_area = 0.0;    // kappa, users per km^2

  void validate() const;
};

// Law of the perpendicular road distance r_j given that the road hits the cell.
//   paper:    density 2r/R^2 (uniform position in the disk)
//   standard: uniform on [0, R] (the half-cylinder parameterization)
enum class RadiusSampler { paper, standard };

std::string_view to_string(RadiusSampler s) noexcept;

struct RoadRealization {
  std::vector<double> chord_distances;

  std::size_t roads() const noexcept { return chord_distances.size(); }
};

struct User {
  double distance_km = 0.0;
  Environment environment = Environment::outdoor;
};

struct UserDrop {
  std::vector<User> users;
};

// Expected number of roads hitting a disk of radius R: 2 pi lambda R.
double expected_roads(double road_intensity, double cell_radius_km) noexcept;

RoadRealization sample_roads(const GeometryParams& gp, double cell_radius_km,
                             RadiusSampler sampler, Rng& rng);

// delta times the chord length inside the annulus (u, v].
double chord_mass(const RoadRealization& road, double inner, double outer, double delta);

// w_n = mean number of road users demanding n PRBs (index n-1).
std::vector<double> outdoor_masses(const RoadRealization& road, const DemandProfile& profile,
                                   double delta);

// w_n = kappa * pi * sum over level-n intervals of (v^2 - u^2).
std::vector<double> indoor_masses(const DemandProfile& profile, double kappa);

// Average of chord_mass over road realizations: E[Y] * E[mass of one road].
double expected_chord_mass(double inner, double outer, double delta, double road_intensity,
                           double cell_radius_km, RadiusSampler sampler);

// (lambda delta + kappa) pi R^2.
double mean_users(const GeometryParams& gp, double cell_radius_km) noexcept;

// Users on the given roads (uniform along each chord) plus indoor users
// uniform in the disk.
UserDrop sample_users(const GeometryParams& gp, double cell_radius_km,
                      const RoadRealization& road, Rng& rng);

}  // namespace prbdim
