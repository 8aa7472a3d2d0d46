#include "prbdim/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prbdim/dimension.hpp"
#include "prbdim/error.hpp"
#include "prbdim/kernels.hpp"
#include "prbdim/parallel.hpp"

namespace prbdim {
namespace {

// Realizations reduced together before chunk totals are combined in order.
constexpr std::size_t kChunk = 32;

std::size_t region_index(Region r) {
  switch (r) {
    case Region::center: return 0;
    case Region::middle: return 1;
    case Region::edge: return 2;
    case Region::all: break;
  }
  return 0;
}

void add_into(std::vector<double>& dst, const std::vector<double>& src) {
  if (dst.size() < src.size()) dst.resize(src.size(), 0.0);
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

}  // namespace

std::string_view to_string(OutdoorModel m) noexcept { return m == OutdoorModel::cox ? "cox" : "ppp"; }

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::all: return "all";
    case Region::center: return "center";
    case Region::middle: return "middle";
    case Region::edge: return "edge";
  }
  return "all";
}

GeometryParams Scenario::effective_geometry() const {
  GeometryParams gp = geometry;
  if (throughput_bps) {
    const Intensities in = intensities_from_throughput(*throughput_bps, service.rate_bps,
                                                       link.cell_radius_km,
                                                       geometry.road_intensity, outdoor_fraction);
    gp.user_intensity_linear = in.delta;
    gp.user_intensity_area = in.kappa;
  }
  return gp;
}

void Scenario::validate() const {
  link.validate();
  interference.validate(link.cell_radius_km);
  service.validate();
  if (!(outdoor_fraction >= 0.0 && outdoor_fraction <= 1.0)) {
    throw ValidationError("scenario: outdoor fraction must lie in [0, 1]");
  }
  if (throughput_bps && !(*throughput_bps > 0.0)) {
    throw ValidationError("scenario: throughput must be positive");
  }
  effective_geometry().validate();
  if (mc_realizations < 1) throw ValidationError("scenario: need at least one realization");
  if (region != Region::all && interference.regions() != 3) {
    throw ValidationError("scenario: region selection needs a three-region interference model");
  }
}

CellModel::CellModel(const Scenario& scenario)
    : scenario_(scenario), geometry_(scenario.effective_geometry()) {
  scenario_.validate();
  const auto& lb = scenario_.link;
  outdoor_ = ring_radii(lb, scenario_.interference, scenario_.service, Environment::outdoor);
  indoor_ = ring_radii(lb, scenario_.interference, scenario_.service, Environment::indoor);
  if (scenario_.region != Region::all) {
    const auto [lo, hi] =
        scenario_.interference.region_bounds(region_index(scenario_.region), lb.cell_radius_km);
    outdoor_ = outdoor_.restricted(lo, hi);
    indoor_ = indoor_.restricted(lo, hi);
  }
  levels_ = std::max<std::size_t>(
      {1, static_cast<std::size_t>(outdoor_.levels()), static_cast<std::size_t>(indoor_.levels())});
  fixed_.assign(levels_, 0.0);
  add_into(fixed_, indoor_masses(indoor_, geometry_.user_intensity_area));
  if (scenario_.outdoor_model == OutdoorModel::ppp) {
    add_into(fixed_, indoor_masses(outdoor_, geometry_.road_intensity * geometry_.user_intensity_linear));
  }
}

bool CellModel::has_random_roads() const noexcept {
  return scenario_.outdoor_model == OutdoorModel::cox && geometry_.road_intensity > 0.0 &&
         geometry_.user_intensity_linear > 0.0 && outdoor_.levels() > 0;
}

RoadRealization CellModel::sample_roads(Rng& rng) const {
  if (scenario_.outdoor_model != OutdoorModel::cox) return {};
  return prbdim::sample_roads(geometry_, cell_radius_km(), scenario_.sampler, rng);
}

CompoundSpec CellModel::spec_given(const RoadRealization& road) const {
  std::vector<double> w = fixed_;
  if (scenario_.outdoor_model == OutdoorModel::cox) {
    add_into(w, outdoor_masses(road, outdoor_, geometry_.user_intensity_linear));
  }
  return CompoundSpec(std::move(w));
}

double conditional_congestion(const CellModel& model, const RoadRealization& road,
                              std::int64_t m) {
  return ccdf_bell(model.spec_given(road), m);
}

std::vector<CompoundSpec> realization_specs(const CellModel& model, std::size_t count,
                                            std::size_t threads) {
  std::vector<CompoundSpec> specs(count);
  const std::uint64_t seed = model.scenario().seed;
  parallel_for(count, threads, [&](std::size_t i) {
    Rng rng = make_stream(seed, StreamTag::roads, i);
    specs[i] = model.spec_given(model.sample_roads(rng));
  });
  return specs;
}

CongestionCurve average_curves(const std::vector<CompoundSpec>& specs, std::size_t m_max,
                               std::size_t threads) {
  if (specs.empty()) throw DomainError("average_curves: need at least one realization");
  const std::size_t n = specs.size();
  const std::size_t width = m_max + 1;
  const std::vector<double> ref = ccdf_curve(specs.front(), m_max);

  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> chunk_sum(chunks, std::vector<double>(width, 0.0));
  std::vector<std::vector<double>> chunk_sq(chunks, std::vector<double>(width, 0.0));
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const std::vector<double> curve = i == 0 ? ref : ccdf_curve(specs[i], m_max);
      kernels::accumulate_shifted(curve, ref, chunk_sum[c], chunk_sq[c]);
    }
  });

  std::vector<double> sum(width, 0.0);
  std::vector<double> sq(width, 0.0);
  for (std::size_t c = 0; c < chunks; ++c) {
    for (std::size_t m = 0; m < width; ++m) {
      sum[m] += chunk_sum[c][m];
      sq[m] += chunk_sq[c][m];
    }
  }

  CongestionCurve out;
  out.realizations = n;
  out.pi.resize(width);
  out.standard_error.assign(width, 0.0);
  const double count = static_cast<double>(n);
  for (std::size_t m = 0; m < width; ++m) {
    out.pi[m] = std::clamp(ref[m] + sum[m] / count, 0.0, 1.0);
    if (n > 1) {
      const double var = std::max(0.0, (sq[m] - sum[m] * sum[m] / count) / (count - 1.0));
      out.standard_error[m] = std::sqrt(var / count);
    }
  }
  // Averages of nonincreasing curves are nonincreasing; remove rounding
  // wiggles so the invariant holds exactly.
  for (std::size_t m = 1; m < width; ++m) out.pi[m] = std::min(out.pi[m], out.pi[m - 1]);
  return out;
}

CongestionCurve averaged_congestion(const CellModel& model, std::size_t m_max,
                                    std::size_t threads) {
  const std::size_t count = model.has_random_roads() ? model.scenario().mc_realizations : 1;
  CongestionCurve curve = average_curves(realization_specs(model, count, threads), m_max, threads);
  return curve;
}

CongestionCurve averaged_congestion(const Scenario& scenario, std::size_t m_max,
                                    std::size_t threads) {
  return averaged_congestion(CellModel(scenario), m_max, threads);
}

double expected_load(const CellModel& model) {
  const auto& gp = model.geometry();
  const double r = model.cell_radius_km();
  double load = 0.0;
  const auto& fixed = model.deterministic_weights();
  for (std::size_t i = 0; i < fixed.size(); ++i) load += static_cast<double>(i + 1) * fixed[i];
  if (model.scenario().outdoor_model == OutdoorModel::cox) {
    const DemandProfile& out = model.outdoor_profile();
    for (int n = 1; n <= out.levels(); ++n) {
      for (const Interval& iv : out.intervals(n)) {
        load += n * expected_chord_mass(iv.lower, iv.upper, gp.user_intensity_linear,
                                        gp.road_intensity, r, model.scenario().sampler);
      }
    }
  }
  return load;
}

double expected_load(const Scenario& scenario) { return expected_load(CellModel(scenario)); }

std::size_t suggested_m_max(const CellModel& model) {
  const double mean = expected_load(model);
  const double spread = std::sqrt(mean * static_cast<double>(model.levels()));
  return static_cast<std::size_t>(std::ceil(2.0 * mean + 10.0 * spread + 10.0));
}

double expected_load_rings(const std::vector<double>& outdoor_radii,
                           const std::vector<double>& indoor_radii, double delta,
                           double road_intensity, double kappa, double cell_radius_km) {
  const double r = cell_radius_km;
  const double omega = expected_roads(road_intensity, r);
  double outdoor = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < outdoor_radii.size(); ++i) {
    const double d = outdoor_radii[i];
    outdoor += static_cast<double>(i + 1) * (d * d * d - prev * prev * prev) / r;
    prev = d;
  }
  double indoor = 0.0;
  prev = 0.0;
  for (std::size_t i = 0; i < indoor_radii.size(); ++i) {
    const double d = indoor_radii[i];
    indoor += static_cast<double>(i + 1) * (d * d - prev * prev);
    prev = d;
  }
  return 4.0 * delta * omega / (3.0 * r) * outdoor + kappa * std::numbers::pi * indoor;
}

}  // namespace prbdim
