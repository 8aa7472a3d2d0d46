#pragma once

// Scenario files: INI-style sections of `key = value` lines.
//
//   [cell]         cell_radius_km, tx_power_dbm, noise_power_dbm,
//                  prop_const_outdoor_db, prop_const_indoor_db,
//                  path_loss_exponent, tx_antennas, rx_antennas,
//                  prb_bandwidth_khz, max_prbs_per_user
//   [service]      rate_kbps, throughput_mbps?, outdoor_fraction?
//   [interference] margins_db (one or more, comma separated),
//                  breakpoints_km?, region?
//   [geometry]     road_intensity_per_km, user_intensity_per_km,
//                  user_intensity_per_km2, radius_sampler?, outdoor_model?
//   [monte_carlo]  realizations, seed, m_ceiling_prbs?
//
// `?` marks keys with a default (see README). The user intensities are
// required unless throughput_mbps is given, and rejected if it is. Lines
// starting with '#' or ';' are comments. Unknown sections or keys, duplicates
// and missing required keys are errors carrying the line number.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "prbdim/congestion.hpp"

namespace prbdim {

struct ScenarioFile {
  Scenario scenario;
  std::size_t m_ceiling = 4096;
  // Breakpoints were not written and default to R/3, 2R/3.
  bool default_breakpoints = true;
};

// "section.key=value" assignment applied on top of the parsed text.
struct Override {
  std::string section;
  std::string key;
  std::string value;
};

Override parse_override(std::string_view assignment);

ScenarioFile parse_scenario(std::string_view text, const std::vector<Override>& overrides = {});
ScenarioFile load_scenario(const std::string& path, const std::vector<Override>& overrides = {});

// Canonical text: fixed section and key order, shortest round-trip numbers.
std::string write_scenario(const ScenarioFile& file);

// Shortest decimal form that parses back to the same double.
std::string format_shortest(double value);

}  // namespace prbdim
