#include "prbdim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "prbdim/error.hpp"
#include "prbdim/kernels.hpp"

namespace prbdim {

void GeometryParams::validate() const {
  const double values[] = {road_intensity, user_intensity_linear, user_intensity_area};
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("geometry: intensities must be finite and >= 0");
    }
  }
  if (!(road_intensity * user_intensity_linear > 0.0) && !(user_intensity_area > 0.0)) {
    throw ValidationError("geometry: at least one of lambda*delta and kappa must be positive");
  }
}

std::string_view to_string(RadiusSampler s) noexcept {
  return s == RadiusSampler::paper ? "paper" : "standard";
}

double expected_roads(double road_intensity, double cell_radius_km) noexcept {
  return 2.0 * std::numbers::pi * road_intensity * cell_radius_km;
}

RoadRealization sample_roads(const GeometryParams& gp, double cell_radius_km,
                             RadiusSampler sampler, Rng& rng) {
  if (!(cell_radius_km > 0.0)) throw DomainError("sample_roads: cell radius must be positive");
  RoadRealization road;
  const double mean = expected_roads(gp.road_intensity, cell_radius_km);
  if (!(mean > 0.0)) return road;
  const auto count = std::poisson_distribution<long>(mean)(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  road.chord_distances.reserve(static_cast<std::size_t>(count));
  for (long j = 0; j < count; ++j) {
    const double u = unit(rng);
    road.chord_distances.push_back(sampler == RadiusSampler::paper ? cell_radius_km * std::sqrt(u)
                                                                   : cell_radius_km * u);
  }
  return road;
}

double chord_mass(const RoadRealization& road, double inner, double outer, double delta) {
  if (!(inner >= 0.0) || !(outer >= inner)) {
    throw DomainError("chord_mass: need 0 <= inner <= outer");
  }
  if (delta == 0.0 || road.chord_distances.empty()) return 0.0;
  return delta * kernels::chord_length_sum(road.chord_distances, inner, outer);
}

std::vector<double> outdoor_masses(const RoadRealization& road, const DemandProfile& profile,
                                   double delta) {
  std::vector<double> w(static_cast<std::size_t>(profile.levels()), 0.0);
  for (int n = 1; n <= profile.levels(); ++n) {
    for (const Interval& iv : profile.intervals(n)) {
      w[static_cast<std::size_t>(n - 1)] += chord_mass(road, iv.lower, iv.upper, delta);
    }
  }
  return w;
}

std::vector<double> indoor_masses(const DemandProfile& profile, double kappa) {
  std::vector<double> w(static_cast<std::size_t>(profile.levels()), 0.0);
  for (int n = 1; n <= profile.levels(); ++n) {
    double area = 0.0;
    for (const Interval& iv : profile.intervals(n)) {
      area += iv.upper * iv.upper - iv.lower * iv.lower;
    }
    w[static_cast<std::size_t>(n - 1)] = kappa * std::numbers::pi * area;
  }
  return w;
}

double expected_chord_mass(double inner, double outer, double delta, double road_intensity,
                           double cell_radius_km, RadiusSampler sampler) {
  const double omega = expected_roads(road_intensity, cell_radius_km);
  const double r2 = cell_radius_km * cell_radius_km;
  if (sampler == RadiusSampler::paper) {
    // E[sqrt(d^2 - r^2)_+] = (2/R^2) * d^3 / 3 under density 2r/R^2.
    return 4.0 * delta * omega / (3.0 * r2) *
           (outer * outer * outer - inner * inner * inner);
  }
  // E[sqrt(d^2 - r^2)_+] = pi d^2 / (4R) under r ~ U[0, R].
  return omega * delta * std::numbers::pi * (outer * outer - inner * inner) /
         (2.0 * cell_radius_km);
}

double mean_users(const GeometryParams& gp, double cell_radius_km) noexcept {
  return (gp.road_intensity * gp.user_intensity_linear + gp.user_intensity_area) *
         std::numbers::pi * cell_radius_km * cell_radius_km;
}

UserDrop sample_users(const GeometryParams& gp, double cell_radius_km,
                      const RoadRealization& road, Rng& rng) {
  UserDrop drop;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (gp.user_intensity_linear > 0.0) {
    for (double r : road.chord_distances) {
      const double half = std::sqrt(std::max(cell_radius_km * cell_radius_km - r * r, 0.0));
      if (!(half > 0.0)) continue;
      const auto count =
          std::poisson_distribution<long>(2.0 * gp.user_intensity_linear * half)(rng);
      for (long k = 0; k < count; ++k) {
        const double t = (2.0 * unit(rng) - 1.0) * half;
        const double d = std::min(std::hypot(r, t), cell_radius_km);
        drop.users.push_back({d, Environment::outdoor});
      }
    }
  }
  if (gp.user_intensity_area > 0.0) {
    const double mean =
        gp.user_intensity_area * std::numbers::pi * cell_radius_km * cell_radius_km;
    const auto count = std::poisson_distribution<long>(mean)(rng);
    for (long k = 0; k < count; ++k) {
      drop.users.push_back({cell_radius_km * std::sqrt(unit(rng)), Environment::indoor});
    }
  }
  return drop;
}

}  // namespace prbdim
