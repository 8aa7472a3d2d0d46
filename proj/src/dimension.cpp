#include "prbdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prbdim/error.hpp"

namespace prbdim {
namespace {

constexpr std::size_t kInitialBracket = 64;

}  // namespace

Intensities intensities_from_throughput(double throughput_bps, double rate_bps,
                                        double cell_radius_km, double road_intensity,
                                        double outdoor_fraction) {
  if (!(throughput_bps > 0.0)) throw ValidationError("throughput must be positive");
  if (!(rate_bps > 0.0)) throw ValidationError("service rate must be positive");
  if (!(outdoor_fraction >= 0.0 && outdoor_fraction <= 1.0)) {
    throw ValidationError("outdoor fraction must lie in [0, 1]");
  }
  const double users = throughput_bps / rate_bps;
  const double area = std::numbers::pi * cell_radius_km * cell_radius_km;
  Intensities out;
  if (outdoor_fraction > 0.0) {
    if (!(road_intensity > 0.0)) {
      throw InfeasibleSplitError("outdoor traffic requested but road intensity is zero");
    }
    out.delta = outdoor_fraction * users / (road_intensity * area);
  }
  out.kappa = (1.0 - outdoor_fraction) * users / area;
  return out;
}

void DimensionQuery::validate() const {
  if (!(target_congestion > 0.0 && target_congestion < 1.0)) {
    throw ValidationError("target congestion must lie in (0, 1)");
  }
  if (!(throughput_bps > 0.0)) throw ValidationError("throughput must be positive");
  if (!(outdoor_fraction >= 0.0 && outdoor_fraction <= 1.0)) {
    throw ValidationError("outdoor fraction must lie in [0, 1]");
  }
  if (m_ceiling < 1) throw ValidationError("PRB ceiling must be >= 1");
}

DimensionReport dimension_prbs(const DimensionQuery& query, std::size_t threads) {
  query.validate();
  Scenario scenario = query.scenario;
  scenario.throughput_bps = query.throughput_bps;
  scenario.outdoor_fraction = query.outdoor_fraction;
  const CellModel model(scenario);

  const std::size_t count = model.has_random_roads() ? scenario.mc_realizations : 1;
  const std::vector<CompoundSpec> specs = realization_specs(model, count, threads);

  std::size_t m_hi = std::min(kInitialBracket, query.m_ceiling);
  CongestionCurve curve = average_curves(specs, m_hi, threads);
  while (curve.pi[m_hi] > query.target_congestion) {
    if (m_hi >= query.m_ceiling) {
      throw CeilingError("target congestion " + std::to_string(query.target_congestion) +
                             " not reached at the PRB ceiling " + std::to_string(query.m_ceiling) +
                             " (achieved " + std::to_string(curve.pi[m_hi]) + ")",
                         query.m_ceiling, curve.pi[m_hi]);
    }
    m_hi = std::min(2 * m_hi, query.m_ceiling);
    curve = average_curves(specs, m_hi, threads);
  }

  const auto it = std::partition_point(curve.pi.begin(), curve.pi.end(),
                                       [&](double p) { return p > query.target_congestion; });
  DimensionReport report;
  report.required_m = static_cast<std::size_t>(it - curve.pi.begin());
  report.pi_at_required = curve.pi[report.required_m];
  report.stderr_at_required = curve.standard_error[report.required_m];
  if (report.required_m > 0) {
    report.pi_before = curve.pi[report.required_m - 1];
    report.stderr_before = curve.standard_error[report.required_m - 1];
  }
  report.expected_load = expected_load(model);
  report.intensities = {model.geometry().user_intensity_linear,
                        model.geometry().user_intensity_area};
  report.curve = std::move(curve);
  return report;
}

std::vector<SweepRow> sweep(const DimensionQuery& base, const std::vector<SweepPoint>& grid,
                            std::size_t threads) {
  if (grid.empty()) throw ValidationError("sweep: empty grid");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const SweepPoint& point : grid) {
    DimensionQuery q = base;
    q.throughput_bps = point.throughput_bps;
    q.scenario.geometry.road_intensity = point.road_intensity;
    q.target_congestion = point.target_congestion;
    SweepRow row{point, std::nullopt, {}, 0.0};
    try {
      row.report = dimension_prbs(q, threads);
    } catch (const CeilingError& e) {
      row.error = e.what();
      row.achieved = e.achieved();
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepPoint> make_grid(const std::vector<double>& throughputs_bps,
                                  const std::vector<double>& road_intensities,
                                  const std::vector<double>& targets) {
  std::vector<SweepPoint> grid;
  for (double target : targets) {
    for (double lambda : road_intensities) {
      for (double tau : throughputs_bps) grid.push_back({tau, lambda, target});
    }
  }
  return grid;
}

}  // namespace prbdim
