// prbdim: PRB congestion and dimensioning from scenario files.
//
// Exit status: 0 success, 1 failed checks or internal error, 2 usage,
// 3 invalid scenario or query, 4 infeasible (ceiling or split), 5 accuracy.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prbdim/csv.hpp"
#include "prbdim/dimension.hpp"
#include "prbdim/error.hpp"
#include "prbdim/parallel.hpp"
#include "prbdim/scenario_file.hpp"
#include "prbdim/simulate.hpp"
#include "prbdim/validation.hpp"

#ifndef PRBDIM_SCENARIO_DIR
#define PRBDIM_SCENARIO_DIR "scenarios"
#endif

namespace {

using namespace prbdim;

enum Exit : int {
  kOk = 0,
  kFailed = 1,
  kUsage = 2,
  kInvalid = 3,
  kInfeasible = 4,
  kAccuracy = 5,
};

struct Common {
  std::string scenario;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool needs_scenario = true) {
  auto* opt = cmd->add_option("--scenario", c.scenario, "Scenario file");
  if (needs_scenario) opt->required();
  cmd->add_option("--set", c.sets, "Override, section.key=value (repeatable)");
  cmd->add_option("--seed", c.seed, "Seed for every random stream");
  cmd->add_option("--realizations", c.realizations, "Road realizations for the analytic average")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "Output file (default: standard output)");
}

ScenarioFile load(const Common& c) {
  std::vector<Override> overrides;
  for (const std::string& s : c.sets) overrides.push_back(parse_override(s));
  if (c.seed) overrides.push_back({"monte_carlo", "seed", std::to_string(*c.seed)});
  if (c.realizations) {
    overrides.push_back({"monte_carlo", "realizations", std::to_string(*c.realizations)});
  }
  return load_scenario(c.scenario, overrides);
}

// Streams to --out when given, else to stdout. Files are written only once
// the whole table is assembled.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (path_.empty()) {
      std::cout << buffer_.str() << std::flush;
      return;
    }
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write '" + path_ + "'");
    f << buffer_.str();
    if (!f.flush()) throw ValidationError("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ostringstream buffer_;
};

void write_metadata(CsvWriter& csv, const std::string& command, const Common& c,
                    const Scenario& s) {
  csv.meta("command", command);
  csv.meta("scenario", std::filesystem::path(c.scenario).filename().string());
  for (const auto& [k, v] : standard_metadata(s)) csv.meta(k, v);
}

// "10,15,20" or an inclusive range "start:stop:step".
std::vector<double> parse_values(const std::string& text, const std::string& what) {
  std::vector<double> out;
  auto number = [&](const std::string& token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != token.size()) throw ValidationError(what + ": bad number '" + token + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(number(tok));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw ValidationError(what + ": range must be start:stop:step with step > 0");
    }
    const auto steps = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(number(tok));
  if (out.empty()) throw ValidationError(what + ": empty list");
  return out;
}

struct CongestionArgs {
  Common common;
  std::optional<std::size_t> m_max;
  bool with_mc = false;
  std::size_t replications = 10000;
};

int run_congestion(const CongestionArgs& a) {
  const ScenarioFile file = load(a.common);
  const CellModel model(file.scenario);
  const std::size_t m_max = a.m_max.value_or(suggested_m_max(model));
  const std::size_t threads = resolve_threads(0);

  Output out(a.common.out);
  CsvWriter csv(out.stream());
  write_metadata(csv, "congestion", a.common, file.scenario);
  csv.meta("expected_load", format_double(expected_load(model)));
  std::vector<std::string> header{"M", "pi_analytic", "stderr"};
  if (a.with_mc) {
    csv.meta("replications", std::to_string(a.replications));
    header.insert(header.end(), {"pi_mc", "ci_lower", "ci_upper"});
  }
  csv.header(header);
  if (m_max > 0) {
    const CongestionCurve curve = averaged_congestion(model, m_max, threads);
    std::optional<EmpiricalCurve> mc;
    if (a.with_mc) mc = empirical_ccdf(model, m_max, a.replications, threads);
    for (std::size_t m = 1; m <= m_max; ++m) {
      std::vector<CsvCell> row{static_cast<std::int64_t>(m), curve.pi[m], curve.standard_error[m]};
      if (mc) row.insert(row.end(), {mc->ccdf[m], mc->ci_lower[m], mc->ci_upper[m]});
      csv.row(row);
    }
  }
  out.commit();
  return kOk;
}

struct DimensionArgs {
  Common common;
  double target = 0.05;
  std::optional<double> tau_mbps;
  std::optional<double> outdoor_fraction;
};

DimensionQuery make_query(const ScenarioFile& file, double target, std::optional<double> tau_mbps,
                          std::optional<double> fraction) {
  DimensionQuery q;
  q.scenario = file.scenario;
  q.target_congestion = target;
  q.m_ceiling = file.m_ceiling;
  q.outdoor_fraction = fraction.value_or(file.scenario.outdoor_fraction);
  if (tau_mbps) {
    q.throughput_bps = *tau_mbps * 1e6;
  } else if (file.scenario.throughput_bps) {
    q.throughput_bps = *file.scenario.throughput_bps;
  } else {
    throw ValidationError("no throughput: pass --tau-mbps or set [service] throughput_mbps");
  }
  q.validate();
  return q;
}

int run_dimension(const DimensionArgs& a) {
  const ScenarioFile file = load(a.common);
  const DimensionQuery q = make_query(file, a.target, a.tau_mbps, a.outdoor_fraction);
  const DimensionReport r = dimension_prbs(q, resolve_threads(0));

  std::cout << "throughput        " << format_shortest(q.throughput_bps / 1e6) << " Mbps\n"
            << "outdoor fraction  " << format_shortest(q.outdoor_fraction) << '\n'
            << "road intensity    " << format_shortest(q.scenario.geometry.road_intensity)
            << " /km\n"
            << "delta, kappa      " << r.intensities.delta << " /km, " << r.intensities.kappa
            << " /km^2\n"
            << "expected load     " << r.expected_load << " PRBs\n"
            << "target            " << format_shortest(q.target_congestion) << '\n'
            << "required M        " << r.required_m << '\n'
            << "bracket           Pi(" << (r.required_m ? r.required_m - 1 : 0)
            << ") = " << (r.required_m ? r.pi_before : 1.0) << " > target >= Pi("
            << r.required_m << ") = " << r.pi_at_required << " (se " << r.stderr_at_required
            << ")\n";

  if (!a.common.out.empty()) {
    Output out(a.common.out);
    CsvWriter csv(out.stream());
    write_metadata(csv, "dimension", a.common, q.scenario);
    csv.header({"tau_mbps", "outdoor_fraction", "lambda_per_km", "target", "required_m",
                "pi_at_required", "stderr_at_required", "pi_before", "stderr_before",
                "expected_load", "delta_per_km", "kappa_per_km2"});
    csv.row({q.throughput_bps / 1e6, q.outdoor_fraction, q.scenario.geometry.road_intensity,
             q.target_congestion, static_cast<std::int64_t>(r.required_m), r.pi_at_required,
             r.stderr_at_required, r.pi_before, r.stderr_before, r.expected_load,
             r.intensities.delta, r.intensities.kappa});
    out.commit();
  }
  return kOk;
}

struct SweepArgs {
  Common common;
  std::string tau_mbps;
  std::string lambda;
  std::string targets = "0.05";
  std::optional<double> outdoor_fraction;
};

int run_sweep(const SweepArgs& a) {
  const ScenarioFile file = load(a.common);
  const std::vector<double> taus = parse_values(a.tau_mbps, "--tau-mbps");
  const std::vector<double> lambdas =
      a.lambda.empty() ? std::vector<double>{file.scenario.geometry.road_intensity}
                       : parse_values(a.lambda, "--lambda");
  const std::vector<double> targets = parse_values(a.targets, "--target");
  std::vector<double> taus_bps;
  for (double t : taus) taus_bps.push_back(t * 1e6);

  DimensionQuery base = make_query(file, targets.front(), taus.front(), a.outdoor_fraction);
  const std::vector<SweepRow> rows = sweep(base, make_grid(taus_bps, lambdas, targets),
                                           resolve_threads(0));

  Output out(a.common.out);
  CsvWriter csv(out.stream());
  write_metadata(csv, "sweep", a.common, file.scenario);
  csv.meta("outdoor_fraction", format_shortest(base.outdoor_fraction));
  csv.header({"tau_mbps", "lambda_per_km", "target", "status", "required_m", "pi_at_required",
              "stderr_at_required", "pi_before", "achieved"});
  bool all_ok = true;
  for (const SweepRow& row : rows) {
    const SweepPoint& p = row.point;
    if (row.report) {
      const DimensionReport& r = *row.report;
      csv.row({p.throughput_bps / 1e6, p.road_intensity, p.target_congestion, std::string("ok"),
               static_cast<std::int64_t>(r.required_m), r.pi_at_required, r.stderr_at_required,
               r.pi_before, r.pi_at_required});
    } else {
      all_ok = false;
      std::cerr << "tau " << p.throughput_bps / 1e6 << " Mbps, lambda " << p.road_intensity
                << ", target " << p.target_congestion << ": " << row.error << '\n';
      csv.row({p.throughput_bps / 1e6, p.road_intensity, p.target_congestion,
               std::string(row.achieved > 0.0 ? "ceiling" : "error"), std::int64_t{-1},
               std::nan(""), std::nan(""), std::nan(""), row.achieved});
    }
  }
  out.commit();
  return all_ok ? kOk : kInfeasible;
}

struct SimulateArgs {
  Common common;
  std::optional<std::size_t> m_max;
  std::size_t replications = 10000;
};

int run_simulate(const SimulateArgs& a) {
  const ScenarioFile file = load(a.common);
  const CellModel model(file.scenario);
  const std::size_t m_max = a.m_max.value_or(suggested_m_max(model));
  const EmpiricalCurve mc = empirical_ccdf(model, m_max, a.replications, resolve_threads(0));

  Output out(a.common.out);
  CsvWriter csv(out.stream());
  write_metadata(csv, "simulate", a.common, file.scenario);
  csv.meta("replications", std::to_string(a.replications));
  csv.meta("mean_load", format_double(mc.mean_gamma));
  csv.meta("load_variance", format_double(mc.gamma_variance));
  csv.meta("mean_outdoor_users", format_double(mc.mean_outdoor_users));
  csv.meta("mean_indoor_users", format_double(mc.mean_indoor_users));
  csv.meta("nominal_users", format_double(mc.nominal_users));
  csv.header({"M", "pi_mc", "ci_lower", "ci_upper"});
  for (std::size_t m = 1; m <= m_max; ++m) {
    csv.row({static_cast<std::int64_t>(m), mc.ccdf[m], mc.ci_lower[m], mc.ci_upper[m]});
  }
  out.commit();
  return kOk;
}

struct ValidateArgs {
  Common common;
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t replications = 1000;
  std::string scenario_dir = PRBDIM_SCENARIO_DIR;
};

int run_validate(const ValidateArgs& a) {
  SuiteReport report;
  const std::size_t threads = resolve_threads(0);
  if (a.suite == "identities") {
    report = validate_identities(a.seed);
  } else if (a.suite == "mc") {
    Common c = a.common;
    if (c.scenario.empty()) {
      c.scenario = (std::filesystem::path(a.scenario_dir) / "fig2_tau14.scenario").string();
    }
    c.seed = a.seed;
    report = validate_mc(load(c).scenario, a.replications, 0, threads);
  } else {
    report = validate_figures(a.scenario_dir, a.seed, threads);
  }
  print_report(report, std::cerr);
  Output out(a.common.out);
  write_summary_json(report, out.stream());
  out.commit();
  return report.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PRB congestion probability and dimensioning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(prbdim::kToolVersion));

  CongestionArgs congestion;
  auto* cmd_congestion = app.add_subcommand("congestion", "Averaged congestion curve Pi(M)");
  add_common(cmd_congestion, congestion.common);
  cmd_congestion->add_option("--m-max", congestion.m_max, "Largest M (default: automatic)");
  cmd_congestion->add_flag("--with-mc", congestion.with_mc, "Add end-to-end Monte Carlo columns");
  cmd_congestion->add_option("--replications", congestion.replications,
                             "Monte Carlo replications for --with-mc")
      ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));

  DimensionArgs dimension;
  auto* cmd_dimension = app.add_subcommand("dimension", "Minimal M with Pi(M) <= target");
  add_common(cmd_dimension, dimension.common);
  cmd_dimension->add_option("--target", dimension.target, "Target congestion, in (0, 1)");
  cmd_dimension->add_option("--tau-mbps", dimension.tau_mbps, "Cell throughput in Mbps");
  cmd_dimension->add_option("--outdoor-fraction", dimension.outdoor_fraction,
                            "Share of the throughput carried by road users");

  SweepArgs sweep_args;
  auto* cmd_sweep = app.add_subcommand("sweep", "Required M over a throughput grid");
  add_common(cmd_sweep, sweep_args.common);
  cmd_sweep->add_option("--tau-mbps", sweep_args.tau_mbps, "List a,b,c or range start:stop:step")
      ->required();
  cmd_sweep->add_option("--lambda", sweep_args.lambda, "Road intensities (list or range)");
  cmd_sweep->add_option("--target", sweep_args.targets, "Target congestions (list)");
  cmd_sweep->add_option("--outdoor-fraction", sweep_args.outdoor_fraction,
                        "Share of the throughput carried by road users");

  SimulateArgs simulate;
  auto* cmd_simulate = app.add_subcommand("simulate", "End-to-end Monte Carlo CCDF");
  add_common(cmd_simulate, simulate.common);
  cmd_simulate->add_option("--m-max", simulate.m_max, "Largest M (default: automatic)");
  cmd_simulate->add_option("--replications", simulate.replications, "Replications (>= 100)")
      ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));

  ValidateArgs validate;
  auto* cmd_validate = app.add_subcommand("validate", "Run a self-check suite");
  cmd_validate->add_option("--suite", validate.suite, "identities, mc or figures")
      ->required()
      ->check(CLI::IsMember({"identities", "mc", "figures"}));
  cmd_validate->add_option("--seed", validate.seed, "Seed");
  cmd_validate->add_option("--scenario", validate.common.scenario,
                           "Scenario for the mc suite (default: bundled fig2_tau14)");
  cmd_validate->add_option("--set", validate.common.sets, "Override, section.key=value");
  cmd_validate->add_option("--replications", validate.replications, "Replications for mc")
      ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
  cmd_validate->add_option("--scenario-dir", validate.scenario_dir,
                           "Directory holding the bundled scenarios");
  cmd_validate->add_option("--out", validate.common.out, "JSON summary file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cmd_congestion) return run_congestion(congestion);
    if (*cmd_dimension) return run_dimension(dimension);
    if (*cmd_sweep) return run_sweep(sweep_args);
    if (*cmd_simulate) return run_simulate(simulate);
    if (*cmd_validate) return run_validate(validate);
  } catch (const CeilingError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InfeasibleSplitError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy: " << e.what() << '\n';
    return kAccuracy;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
