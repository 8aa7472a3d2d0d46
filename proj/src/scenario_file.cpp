#include "prbdim/scenario_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "prbdim/error.hpp"

namespace prbdim {
namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

using Section = std::map<std::string, Entry, std::less<>>;
using Document = std::map<std::string, Section, std::less<>>;

struct KeySet {
  std::string_view section;
  std::vector<std::string_view> keys;
};

const std::vector<KeySet>& schema() {
  static const std::vector<KeySet> s = {
      {"cell",
       {"cell_radius_km", "tx_power_dbm", "noise_power_dbm", "prop_const_outdoor_db",
        "prop_const_indoor_db", "path_loss_exponent", "tx_antennas", "rx_antennas",
        "prb_bandwidth_khz", "max_prbs_per_user"}},
      {"service", {"rate_kbps", "throughput_mbps", "outdoor_fraction"}},
      {"interference", {"margins_db", "breakpoints_km", "region"}},
      {"geometry",
       {"road_intensity_per_km", "user_intensity_per_km", "user_intensity_per_km2",
        "radius_sampler", "outdoor_model"}},
      {"monte_carlo", {"realizations", "seed", "m_ceiling_prbs"}},
  };
  return s;
}

const KeySet* find_section(std::string_view name) {
  for (const KeySet& ks : schema()) {
    if (ks.section == name) return &ks;
  }
  return nullptr;
}

bool known_key(const KeySet& ks, std::string_view key) {
  return std::find(ks.keys.begin(), ks.keys.end(), key) != ks.keys.end();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Document read_document(std::string_view text) {
  Document doc;
  std::string current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!find_section(name)) {
        throw ParseError("unknown section [" + std::string(name) + "]", line_no);
      }
      if (doc.count(name)) {
        throw ParseError("duplicate section [" + std::string(name) + "]", line_no);
      }
      current = std::string(name);
      doc[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    if (current.empty()) throw ParseError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_key(*find_section(current), key)) {
      throw ParseError("unknown key '" + key + "' in [" + current + "]", line_no);
    }
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line_no);
    auto& section = doc[current];
    if (section.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
    section[key] = {value, line_no};
  }
  return doc;
}

class Reader {
 public:
  explicit Reader(Document doc) : doc_(std::move(doc)) {}

  std::optional<Entry> optional(std::string_view section, std::string_view key) const {
    const auto s = doc_.find(section);
    if (s == doc_.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
  }

  Entry required(std::string_view section, std::string_view key) const {
    auto e = optional(section, key);
    if (!e) {
      throw ParseError("missing required key '" + std::string(key) + "' in [" +
                           std::string(section) + "]",
                       0);
    }
    return *e;
  }

 private:
  Document doc_;
};

double to_double(const Entry& e, std::string_view key) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("'" + std::string(key) + "': expected a number, got '" + e.value + "'",
                     e.line);
  }
  return v;
}

template <class Int>
Int to_integer(const Entry& e, std::string_view key) {
  Int v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("'" + std::string(key) + "': expected an integer, got '" + e.value + "'",
                     e.line);
  }
  return v;
}

std::vector<double> to_list(const Entry& e, std::string_view key) {
  std::vector<double> out;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    out.push_back(to_double({std::string(item), e.line}, key));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

template <class Enum, std::size_t K>
Enum to_enum(const Entry& e, std::string_view key,
             const std::array<std::pair<std::string_view, Enum>, K>& names) {
  for (const auto& [name, value] : names) {
    if (e.value == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : names) allowed += (allowed.empty() ? "" : "|") + std::string(name);
  throw ParseError("'" + std::string(key) + "': expected one of " + allowed + ", got '" + e.value + "'",
                   e.line);
}

constexpr std::array<std::pair<std::string_view, RadiusSampler>, 2> kSamplers{
    {{"paper", RadiusSampler::paper}, {"standard", RadiusSampler::standard}}};
constexpr std::array<std::pair<std::string_view, OutdoorModel>, 2> kOutdoorModels{
    {{"cox", OutdoorModel::cox}, {"ppp", OutdoorModel::ppp}}};
constexpr std::array<std::pair<std::string_view, Region>, 4> kRegions{{{"all", Region::all},
                                                                        {"center", Region::center},
                                                                        {"middle", Region::middle},
                                                                        {"edge", Region::edge}}};

// Rethrows a model validation failure against the line of the responsible key.
template <class Fn>
void at_line(std::size_t line, Fn&& fn) {
  try {
    fn();
  } catch (const ParseError&) {
    throw;
  } catch (const InfeasibleSplitError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

Override parse_override(std::string_view assignment) {
  const auto dot = assignment.find('.');
  const auto eq = assignment.find('=');
  if (dot == std::string_view::npos || eq == std::string_view::npos || dot > eq) {
    throw ValidationError("override must look like section.key=value, got '" +
                          std::string(assignment) + "'");
  }
  Override o{std::string(trim(assignment.substr(0, dot))),
             std::string(trim(assignment.substr(dot + 1, eq - dot - 1))),
             std::string(trim(assignment.substr(eq + 1)))};
  const KeySet* ks = find_section(o.section);
  if (!ks) throw ValidationError("override: unknown section '" + o.section + "'");
  if (!known_key(*ks, o.key)) {
    throw ValidationError("override: unknown key '" + o.key + "' in [" + o.section + "]");
  }
  if (o.value.empty()) throw ValidationError("override: empty value for " + o.section + "." + o.key);
  return o;
}

ScenarioFile parse_scenario(std::string_view text, const std::vector<Override>& overrides) {
  Document doc = read_document(text);
  for (const Override& o : overrides) {
    const KeySet* ks = find_section(o.section);
    if (!ks || !known_key(*ks, o.key)) {
      throw ValidationError("override: unknown key " + o.section + "." + o.key);
    }
    doc[o.section][o.key] = {o.value, 0};
  }
  const Reader in(std::move(doc));

  ScenarioFile file;
  Scenario& s = file.scenario;
  LinkBudget& lb = s.link;
  lb.cell_radius_km = to_double(in.required("cell", "cell_radius_km"), "cell_radius_km");
  lb.tx_power_dbm = to_double(in.required("cell", "tx_power_dbm"), "tx_power_dbm");
  lb.noise_power_dbm = to_double(in.required("cell", "noise_power_dbm"), "noise_power_dbm");
  lb.prop_const_db = to_double(in.required("cell", "prop_const_outdoor_db"), "prop_const_outdoor_db");
  lb.prop_const_indoor_db =
      to_double(in.required("cell", "prop_const_indoor_db"), "prop_const_indoor_db");
  lb.path_loss_exp = to_double(in.required("cell", "path_loss_exponent"), "path_loss_exponent");
  lb.tx_antennas = to_integer<int>(in.required("cell", "tx_antennas"), "tx_antennas");
  lb.rx_antennas = to_integer<int>(in.required("cell", "rx_antennas"), "rx_antennas");
  lb.prb_bandwidth_hz =
      1e3 * to_double(in.required("cell", "prb_bandwidth_khz"), "prb_bandwidth_khz");
  const Entry nmax = in.required("cell", "max_prbs_per_user");
  lb.n_max = to_integer<int>(nmax, "max_prbs_per_user");
  at_line(nmax.line, [&] { lb.validate(); });

  const Entry rate = in.required("service", "rate_kbps");
  s.service.rate_bps = 1e3 * to_double(rate, "rate_kbps");
  at_line(rate.line, [&] { s.service.validate(); });
  if (auto tau = in.optional("service", "throughput_mbps")) {
    s.throughput_bps = 1e6 * to_double(*tau, "throughput_mbps");
    if (!(*s.throughput_bps > 0.0)) throw ParseError("throughput_mbps must be positive", tau->line);
  }
  if (auto f = in.optional("service", "outdoor_fraction")) {
    if (!s.throughput_bps) {
      throw ParseError("outdoor_fraction only applies together with throughput_mbps", f->line);
    }
    s.outdoor_fraction = to_double(*f, "outdoor_fraction");
    if (!(s.outdoor_fraction >= 0.0 && s.outdoor_fraction <= 1.0)) {
      throw ParseError("outdoor_fraction must lie in [0, 1]", f->line);
    }
  }

  const Entry margins = in.required("interference", "margins_db");
  s.interference.margins_db = to_list(margins, "margins_db");
  if (auto bp = in.optional("interference", "breakpoints_km")) {
    s.interference.breakpoints_km = to_list(*bp, "breakpoints_km");
    file.default_breakpoints = false;
  } else if (s.interference.margins_db.size() == 3) {
    s.interference.breakpoints_km = {lb.cell_radius_km / 3.0, 2.0 * lb.cell_radius_km / 3.0};
  } else if (s.interference.margins_db.size() != 1) {
    throw ParseError("breakpoints_km required unless there are 1 or 3 margins", margins.line);
  }
  at_line(margins.line, [&] { s.interference.validate(lb.cell_radius_km); });
  if (auto r = in.optional("interference", "region")) {
    s.region = to_enum(*r, "region", kRegions);
    if (s.region != Region::all && s.interference.regions() != 3) {
      throw ParseError("region selection needs three interference margins", r->line);
    }
  }

  const Entry lambda = in.required("geometry", "road_intensity_per_km");
  s.geometry.road_intensity = to_double(lambda, "road_intensity_per_km");
  if (s.throughput_bps) {
    for (const char* key : {"user_intensity_per_km", "user_intensity_per_km2"}) {
      if (auto e = in.optional("geometry", key)) {
        throw ParseError(std::string(key) + " conflicts with [service] throughput_mbps", e->line);
      }
    }
  } else {
    s.geometry.user_intensity_linear =
        to_double(in.required("geometry", "user_intensity_per_km"), "user_intensity_per_km");
    s.geometry.user_intensity_area =
        to_double(in.required("geometry", "user_intensity_per_km2"), "user_intensity_per_km2");
  }
  if (auto e = in.optional("geometry", "radius_sampler")) {
    s.sampler = to_enum(*e, "radius_sampler", kSamplers);
  }
  if (auto e = in.optional("geometry", "outdoor_model")) {
    s.outdoor_model = to_enum(*e, "outdoor_model", kOutdoorModels);
  }
  at_line(lambda.line, [&] { s.effective_geometry().validate(); });

  const Entry reals = in.required("monte_carlo", "realizations");
  s.mc_realizations = to_integer<std::size_t>(reals, "realizations");
  if (s.mc_realizations < 1) throw ParseError("realizations must be >= 1", reals.line);
  s.seed = to_integer<std::uint64_t>(in.required("monte_carlo", "seed"), "seed");
  if (auto e = in.optional("monte_carlo", "m_ceiling_prbs")) {
    file.m_ceiling = to_integer<std::size_t>(*e, "m_ceiling_prbs");
    if (file.m_ceiling < 1) throw ParseError("m_ceiling_prbs must be >= 1", e->line);
  }
  s.validate();
  return file;
}

ScenarioFile load_scenario(const std::string& path, const std::vector<Override>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), overrides);
}

std::string format_shortest(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string write_scenario(const ScenarioFile& file) {
  const Scenario& s = file.scenario;
  const LinkBudget& lb = s.link;
  std::ostringstream out;
  auto kv = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto list = [](const std::vector<double>& v) {
    std::string text;
    for (std::size_t i = 0; i < v.size(); ++i) text += (i ? ", " : "") + format_shortest(v[i]);
    return text;
  };

  out << "[cell]\n";
  kv("cell_radius_km", format_shortest(lb.cell_radius_km));
  kv("tx_power_dbm", format_shortest(lb.tx_power_dbm));
  kv("noise_power_dbm", format_shortest(lb.noise_power_dbm));
  kv("prop_const_outdoor_db", format_shortest(lb.prop_const_db));
  kv("prop_const_indoor_db", format_shortest(lb.prop_const_indoor_db));
  kv("path_loss_exponent", format_shortest(lb.path_loss_exp));
  kv("tx_antennas", std::to_string(lb.tx_antennas));
  kv("rx_antennas", std::to_string(lb.rx_antennas));
  kv("prb_bandwidth_khz", format_shortest(lb.prb_bandwidth_hz / 1e3));
  kv("max_prbs_per_user", std::to_string(lb.n_max));

  out << "\n[service]\n";
  kv("rate_kbps", format_shortest(s.service.rate_bps / 1e3));
  if (s.throughput_bps) {
    kv("throughput_mbps", format_shortest(*s.throughput_bps / 1e6));
    kv("outdoor_fraction", format_shortest(s.outdoor_fraction));
  }

  out << "\n[interference]\n";
  kv("margins_db", list(s.interference.margins_db));
  if (!file.default_breakpoints) kv("breakpoints_km", list(s.interference.breakpoints_km));
  kv("region", std::string(to_string(s.region)));

  out << "\n[geometry]\n";
  kv("road_intensity_per_km", format_shortest(s.geometry.road_intensity));
  if (!s.throughput_bps) {
    kv("user_intensity_per_km", format_shortest(s.geometry.user_intensity_linear));
    kv("user_intensity_per_km2", format_shortest(s.geometry.user_intensity_area));
  }
  kv("radius_sampler", std::string(to_string(s.sampler)));
  kv("outdoor_model", std::string(to_string(s.outdoor_model)));

  out << "\n[monte_carlo]\n";
  kv("realizations", std::to_string(s.mc_realizations));
  kv("seed", std::to_string(s.seed));
  kv("m_ceiling_prbs", std::to_string(file.m_ceiling));
  return out.str();
}

}  // namespace prbdim
