#pragma once

// Link budget -> radial PRB demand.
//
// Distances are in km with the 1 km reference folded into the propagation
// constant; powers stay in dBm/dB until sinr_at converts them.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace prbdim {

enum class Environment { outdoor, indoor };

std::string_view to_string(Environment env) noexcept;

struct LinkBudget {
  double tx_power_dbm = 60.0;
  double noise_power_dbm = -93.0;
  double prop_const_db = 130.0;
  double prop_const_indoor_db = 166.0;
  double path_loss_exp = 3.5;
  int tx_antennas = 8;
  int rx_antennas = 2;
  double prb_bandwidth_hz = 180e3;
  double cell_radius_km = 0.7;
  int n_max = 6;

  int spatial_layers() const noexcept;
  double prop_const_for(Environment env) const noexcept;

  // Throws ValidationError on a broken invariant.
  void validate() const;
};

// Piecewise-constant noise rise. `breakpoints` split (0, R] into
// margins_db.size() regions; region i is (b_{i-1}, b_i] with b_0 = 0 and
// b_last = R.
struct InterferenceModel {
  std::vector<double> breakpoints_km;
  std::vector<double> margins_db{0.0};

  static InterferenceModel noise_limited();
  static InterferenceModel uniform(double margin_db);
  // Center/middle/edge margins with breakpoints at R/3 and 2R/3.
  static InterferenceModel three_region(double cell_radius_km, double center_db,
                                        double middle_db, double edge_db);

  std::size_t regions() const noexcept { return margins_db.size(); }
  // Region index holding distance x; boundaries belong to the inner region.
  std::size_t region_of(double x) const noexcept;
  double margin_db_at(double x) const noexcept;
  double edge_margin_db() const noexcept { return margins_db.back(); }
  // (lower, upper] extent of a region inside a cell of the given radius.
  std::pair<double, double> region_bounds(std::size_t region, double cell_radius_km) const;

  void validate(double cell_radius_km) const;
};

struct Service {
  double rate_bps = 500e3;

  void validate() const;
};

// Half-open annulus (lower, upper] in km.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double length() const noexcept { return upper - lower; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Step function n(x) over the cell, stored as per-level interval lists.
class DemandProfile {
 public:
  DemandProfile() = default;
  // rings[n-1] holds the intervals where n(x) = n. Empty lists are allowed
  // for levels that never occur.
  DemandProfile(Environment env, double cell_radius_km, std::vector<std::vector<Interval>> rings);

  Environment environment() const noexcept { return env_; }
  double cell_radius_km() const noexcept { return radius_; }
  // Highest populated level N (0 for an empty profile).
  int levels() const noexcept { return static_cast<int>(rings_.size()); }
  std::span<const Interval> intervals(int level) const;
  const std::vector<std::vector<Interval>>& rings() const noexcept { return rings_; }

  // Level whose interval contains x, or 0 if x is not covered.
  int level_at(double x) const noexcept;

  // Single-region ring radii d_1..d_N (d_N clamped to R); empty when the
  // profile is not a sequence of consecutive annuli.
  std::optional<std::vector<double>> ring_radii() const;

  // Same profile with every interval clipped to (lower, upper].
  DemandProfile restricted(double lower, double upper) const;

 private:
  Environment env_ = Environment::outdoor;
  double radius_ = 0.0;
  std::vector<std::vector<Interval>> rings_;
  // Flattened (interval, level), sorted by lower edge.
  std::vector<std::pair<Interval, int>> index_;
};

// Linear SINR at distance x (0 < x <= R).
double sinr_at(const LinkBudget& lb, const InterferenceModel& im, double x, Environment env);

// Shannon MIMO rate in bit/s.
double throughput_at(const LinkBudget& lb, const InterferenceModel& im, double x,
                     Environment env);

// Maximum PRBs per user N for this environment (SINR threshold taken at the
// cell edge with the edge margin).
int max_prbs(const LinkBudget& lb, const InterferenceModel& im, const Service& svc,
             Environment env);

// n(x) = min(N, ceil(C* / C(x))).
int prbs_required(const LinkBudget& lb, const InterferenceModel& im, const Service& svc,
                  double x, Environment env);

// Distance at which a single margin yields exactly C(d) = C*/n.
double ring_radius(const LinkBudget& lb, double margin_db, const Service& svc, int n,
                   Environment env);

// Level sets of n(x) under the (piecewise-constant) interference model.
DemandProfile ring_radii(const LinkBudget& lb, const InterferenceModel& im, const Service& svc,
                         Environment env);

}  // namespace prbdim
