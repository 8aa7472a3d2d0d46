#include "prbdim/linkmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prbdim/error.hpp"

namespace prbdim {
namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// SINR at 1 km for a given margin.
double reference_sinr(const LinkBudget& lb, double margin_db, Environment env) {
  return db_to_linear(lb.tx_power_dbm - lb.prop_const_for(env) - lb.noise_power_dbm - margin_db);
}

double rate_from_sinr(const LinkBudget& lb, double sinr) {
  return lb.spatial_layers() * lb.prb_bandwidth_hz * std::log2(1.0 + sinr);
}

int ceil_ratio_capped(double demand, double rate, int cap) {
  const double ratio = demand / rate;
  if (!(ratio < static_cast<double>(cap))) return cap;
  return std::max(1, static_cast<int>(std::ceil(ratio)));
}

void trim_trailing(std::vector<std::vector<Interval>>& rings) {
  while (!rings.empty() && rings.back().empty()) rings.pop_back();
}

}  // namespace

std::string_view to_string(Environment env) noexcept {
  return env == Environment::outdoor ? "outdoor" : "indoor";
}

int LinkBudget::spatial_layers() const noexcept { return std::min(tx_antennas, rx_antennas); }

double LinkBudget::prop_const_for(Environment env) const noexcept {
  return env == Environment::outdoor ? prop_const_db : prop_const_indoor_db;
}

void LinkBudget::validate() const {
  const double powers[] = {tx_power_dbm, noise_power_dbm, prop_const_db, prop_const_indoor_db};
  for (double p : powers) {
    if (!std::isfinite(p)) throw ValidationError("link budget: power levels must be finite");
  }
  if (!(path_loss_exp > 2.0) || !std::isfinite(path_loss_exp)) {
    throw ValidationError("link budget: path loss exponent must exceed 2");
  }
  if (tx_antennas < 1 || rx_antennas < 1) {
    throw ValidationError("link budget: antenna counts must be positive");
  }
  if (!(prb_bandwidth_hz > 0.0) || !std::isfinite(prb_bandwidth_hz)) {
    throw ValidationError("link budget: PRB bandwidth must be positive");
  }
  if (!(cell_radius_km > 0.0) || !std::isfinite(cell_radius_km)) {
    throw ValidationError("link budget: cell radius must be positive");
  }
  if (n_max < 1) throw ValidationError("link budget: n_max must be a positive integer");
}

InterferenceModel InterferenceModel::noise_limited() { return uniform(0.0); }

InterferenceModel InterferenceModel::uniform(double margin_db) {
  InterferenceModel im;
  im.margins_db = {margin_db};
  return im;
}

InterferenceModel InterferenceModel::three_region(double cell_radius_km, double center_db,
                                                  double middle_db, double edge_db) {
  InterferenceModel im;
  im.breakpoints_km = {cell_radius_km / 3.0, 2.0 * cell_radius_km / 3.0};
  im.margins_db = {center_db, middle_db, edge_db};
  return im;
}

std::size_t InterferenceModel::region_of(double x) const noexcept {
  const auto it = std::lower_bound(breakpoints_km.begin(), breakpoints_km.end(), x);
  return static_cast<std::size_t>(it - breakpoints_km.begin());
}

double InterferenceModel::margin_db_at(double x) const noexcept {
  return margins_db[std::min(region_of(x), margins_db.size() - 1)];
}

std::pair<double, double> InterferenceModel::region_bounds(std::size_t region,
                                                           double cell_radius_km) const {
  if (region >= regions()) throw DomainError("interference: region index out of range");
  const double lower = region == 0 ? 0.0 : breakpoints_km[region - 1];
  const double upper = region + 1 == regions() ? cell_radius_km : breakpoints_km[region];
  return {lower, upper};
}

void InterferenceModel::validate(double cell_radius_km) const {
  if (margins_db.empty()) throw ValidationError("interference: at least one margin required");
  if (breakpoints_km.size() + 1 != margins_db.size()) {
    throw ValidationError("interference: need exactly one breakpoint fewer than margins");
  }
  for (double m : margins_db) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ValidationError("interference: margins must be finite and >= 0 dB");
    }
  }
  double prev = 0.0;
  for (double b : breakpoints_km) {
    if (!(b > prev) || !(b < cell_radius_km)) {
      throw ValidationError("interference: breakpoints must increase strictly inside (0, R)");
    }
    prev = b;
  }
}

void Service::validate() const {
  if (!(rate_bps > 0.0) || !std::isfinite(rate_bps)) {
    throw ValidationError("service: rate must be positive");
  }
}

DemandProfile::DemandProfile(Environment env, double cell_radius_km,
                             std::vector<std::vector<Interval>> rings)
    : env_(env), radius_(cell_radius_km), rings_(std::move(rings)) {
  trim_trailing(rings_);
  for (std::size_t n = 0; n < rings_.size(); ++n) {
    for (const Interval& iv : rings_[n]) {
      if (!(iv.upper > iv.lower)) throw DomainError("demand profile: empty interval");
      index_.emplace_back(iv, static_cast<int>(n + 1));
    }
  }
  std::sort(index_.begin(), index_.end(),
            [](const auto& a, const auto& b) { return a.first.lower < b.first.lower; });
}

std::span<const Interval> DemandProfile::intervals(int level) const {
  if (level < 1 || level > levels()) return {};
  return rings_[static_cast<std::size_t>(level - 1)];
}

int DemandProfile::level_at(double x) const noexcept {
  // First entry whose lower edge is >= x; the candidate is the one before.
  const auto it = std::partition_point(index_.begin(), index_.end(),
                                       [x](const auto& e) { return e.first.lower < x; });
  if (it == index_.begin()) return 0;
  const auto& [iv, level] = *std::prev(it);
  return x <= iv.upper ? level : 0;
}

std::optional<std::vector<double>> DemandProfile::ring_radii() const {
  std::vector<double> radii;
  double prev = 0.0;
  for (const auto& ring : rings_) {
    if (ring.empty()) {
      radii.push_back(prev);
      continue;
    }
    if (ring.size() != 1 || ring.front().lower != prev) return std::nullopt;
    prev = ring.front().upper;
    radii.push_back(prev);
  }
  return radii;
}

DemandProfile DemandProfile::restricted(double lower, double upper) const {
  std::vector<std::vector<Interval>> clipped(rings_.size());
  for (std::size_t n = 0; n < rings_.size(); ++n) {
    for (const Interval& iv : rings_[n]) {
      const Interval c{std::max(iv.lower, lower), std::min(iv.upper, upper)};
      if (c.upper > c.lower) clipped[n].push_back(c);
    }
  }
  return DemandProfile(env_, radius_, std::move(clipped));
}

double sinr_at(const LinkBudget& lb, const InterferenceModel& im, double x, Environment env) {
  if (!(x > 0.0) || x > lb.cell_radius_km) {
    throw DomainError("sinr_at: distance " + std::to_string(x) + " km outside (0, R]");
  }
  const double db = lb.tx_power_dbm - lb.prop_const_for(env) -
                    10.0 * lb.path_loss_exp * std::log10(x) - lb.noise_power_dbm -
                    im.margin_db_at(x);
  return db_to_linear(db);
}

double throughput_at(const LinkBudget& lb, const InterferenceModel& im, double x,
                     Environment env) {
  return rate_from_sinr(lb, sinr_at(lb, im, x, env));
}

int max_prbs(const LinkBudget& lb, const InterferenceModel& im, const Service& svc,
             Environment env) {
  const double edge_sinr = reference_sinr(lb, im.edge_margin_db(), env) *
                           std::pow(lb.cell_radius_km, -lb.path_loss_exp);
  return ceil_ratio_capped(svc.rate_bps, rate_from_sinr(lb, edge_sinr), lb.n_max);
}

int prbs_required(const LinkBudget& lb, const InterferenceModel& im, const Service& svc,
                  double x, Environment env) {
  const int cap = max_prbs(lb, im, svc, env);
  return ceil_ratio_capped(svc.rate_bps, throughput_at(lb, im, x, env), cap);
}

double ring_radius(const LinkBudget& lb, double margin_db, const Service& svc, int n,
                   Environment env) {
  if (n < 1) throw DomainError("ring_radius: level must be >= 1");
  const double per_prb = svc.rate_bps / (n * lb.spatial_layers() * lb.prb_bandwidth_hz);
  const double needed_sinr = std::expm1(per_prb * std::log(2.0));
  if (!std::isfinite(needed_sinr)) return 0.0;
  return std::pow(reference_sinr(lb, margin_db, env) / needed_sinr, 1.0 / lb.path_loss_exp);
}

DemandProfile ring_radii(const LinkBudget& lb, const InterferenceModel& im, const Service& svc,
                         Environment env) {
  lb.validate();
  im.validate(lb.cell_radius_km);
  svc.validate();

  const int cap = max_prbs(lb, im, svc, env);
  std::vector<std::vector<Interval>> rings(static_cast<std::size_t>(cap));
  auto append = [&rings](int level, Interval iv) {
    auto& list = rings[static_cast<std::size_t>(level - 1)];
    if (!list.empty() && list.back().upper == iv.lower) {
      list.back().upper = iv.upper;
    } else {
      list.push_back(iv);
    }
  };

  for (std::size_t region = 0; region < im.regions(); ++region) {
    const auto [lo, hi] = im.region_bounds(region, lb.cell_radius_km);
    const double margin = im.margins_db[region];
    int n = 1;
    while (n < cap && ring_radius(lb, margin, svc, n, env) <= lo) ++n;
    double lower = lo;
    while (lower < hi) {
      const double upper =
          n >= cap ? hi : std::min(hi, ring_radius(lb, margin, svc, n, env));
      if (upper > lower) {
        append(n, {lower, upper});
        lower = upper;
      }
      if (n >= cap) break;
      ++n;
    }
  }
  return DemandProfile(env, lb.cell_radius_km, std::move(rings));
}

}  // namespace prbdim
