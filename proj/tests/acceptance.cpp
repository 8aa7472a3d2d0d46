// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cli_helpers.hpp"
#include "oracles.hpp"
#include "prbdim/bell.hpp"
#include "prbdim/compound.hpp"
#include "prbdim/dimension.hpp"
#include "prbdim/scenario_file.hpp"
#include "prbdim/simulate.hpp"

namespace {

using namespace prbdim;
using Int = boost::multiprecision::cpp_int;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ScenarioFile bundled(const std::string& name, std::vector<Override> overrides = {}) {
  return load_scenario(cli::scenario(name), overrides);
}

std::size_t required(const ScenarioFile& f, double target = 0.05) {
  DimensionQuery q;
  q.scenario = f.scenario;
  q.target_congestion = target;
  q.throughput_bps = *f.scenario.throughput_bps;
  q.outdoor_fraction = f.scenario.outdoor_fraction;
  q.m_ceiling = f.m_ceiling;
  return dimension_prbs(q).required_m;
}

Outcome delta_in_range(std::size_t a, std::size_t b, double lo, double hi, const std::string& what) {
  const double d = static_cast<double>(a) - static_cast<double>(b);
  std::ostringstream s;
  s << what << " " << a << " - " << b << " = " << d << ", accepted [" << lo << ", " << hi << "]";
  return {d >= lo && d <= hi, s.str()};
}

Outcome route_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> levels(1, 20);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    std::vector<double> w(levels(rng));
    for (double& x : w) x = weight(rng);
    const CompoundSpec spec(w);
    for (std::int64_t m = 1; m <= 150; ++m) {
      worst = std::max(worst, std::abs(ccdf_bell(spec, m) - ccdf_integral(spec, m)));
    }
  }
  return {worst <= 1e-6, fmt("max |recursion - integral| = %.3g (limit 1e-6)", worst)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> w(n);
      for (double& x : w) x = weight(rng);
      const PmfTable t = pmf(CompoundSpec(w), 50);
      const auto ref = oracle::enumerate_pmf(w, 50);
      for (std::size_t k = 0; k <= 50; ++k) {
        worst = std::max(worst, std::abs(t.probabilities[k] - static_cast<double>(ref[k])));
      }
    }
  }
  return {worst <= 1e-10, fmt("max |pmf - enumeration| = %.3g (limit 1e-10)", worst)};
}

Outcome bell_identities() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-12, 12);
  std::size_t det_bad = 0, binom_bad = 0, listed_bad = 0;
  for (int s = 0; s < 40; ++s) {
    std::vector<Int> x(10), y(10);
    for (Int& v : x) v = d(rng);
    for (Int& v : y) v = d(rng);
    for (std::size_t p = 0; p <= 10; ++p) {
      const std::span<const Int> head(x.data(), p);
      if (bell::complete<Int>(head) != bell::determinant<Int>(head)) ++det_bad;
    }
    std::vector<Int> xy(8);
    for (std::size_t i = 0; i < 8; ++i) xy[i] = x[i] + y[i];
    const auto bx = bell::complete_sequence<Int>(std::span<const Int>(x.data(), 8));
    const auto by = bell::complete_sequence<Int>(std::span<const Int>(y.data(), 8));
    const auto bxy = bell::complete_sequence<Int>(xy);
    for (std::size_t p = 0; p <= 8; ++p) {
      Int sum = 0;
      Int c = 1;
      for (std::size_t k = 0; k <= p; ++k) {
        sum += c * bx[k] * by[p - k];
        c = c * (p - k) / (k + 1);
      }
      if (sum != bxy[p]) ++binom_bad;
    }
    const Int &x1 = x[0], &x2 = x[1], &x3 = x[2], &x4 = x[3];
    const Int listed[5] = {1, x1, x1 * x1 + x2, x1 * x1 * x1 + 3 * x1 * x2 + x3,
                           x1 * x1 * x1 * x1 + 6 * x1 * x1 * x2 + 4 * x1 * x3 + 3 * x2 * x2 + x4};
    for (std::size_t p = 0; p <= 4; ++p) {
      if (bx[p] != listed[p]) ++listed_bad;
    }
  }
  const std::vector<Int> ones{1, 1, 1, 1};
  const auto bell_numbers = bell::complete_sequence<Int>(ones);
  if (bell_numbers[3] != 5 || bell_numbers[4] != 15) ++listed_bad;
  std::ostringstream s;
  s << "mismatches: determinant " << det_bad << ", binomial type " << binom_bad << ", listed B_0..B_4 "
    << listed_bad;
  return {det_bad + binom_bad + listed_bad == 0, s.str()};
}

Outcome mean_load() {
  const ScenarioFile f = bundled("fig4");
  const CellModel model(f.scenario);
  const double analytic = expected_load(model);
  const EmpiricalCurve e = empirical_ccdf(model, 1, 100000);
  const double rel = std::abs(e.mean_gamma / analytic - 1.0);
  const double oracle_rel = std::abs(analytic / static_cast<double>(oracle::kOutdoorLoad) - 1.0);
  std::ostringstream s;
  s << "E(Gamma) = " << analytic << ", simulated " << e.mean_gamma << ", relative gap " << rel
    << " (limit 0.01)";
  return {rel <= 0.01 && oracle_rel <= 1e-12, s.str()};
}

Outcome fig2() {
  double worst = 0.0;
  std::ostringstream s;
  for (const char* name : {"fig2_tau14", "fig2_tau30"}) {
    const ScenarioFile f = bundled(name);
    const CellModel model(f.scenario);
    const std::size_t m_max = suggested_m_max(model);
    const CongestionCurve a = averaged_congestion(model, m_max);
    const EmpiricalCurve e = empirical_ccdf(model, m_max, 10000);
    double gap = 0.0;
    for (std::size_t m = 0; m <= m_max; ++m) gap = std::max(gap, std::abs(a.pi[m] - e.ccdf[m]));
    worst = std::max(worst, gap);
    s << name << " max gap " << gap << "; ";
  }
  s << "limit 0.02";
  return {worst <= 0.02, s.str()};
}

Outcome fig3() {
  const std::size_t sparse = required(bundled("fig3"));
  const std::size_t dense = required(bundled("fig3", {{"geometry", "road_intensity_per_km", "10"}}));
  return delta_in_range(sparse, dense, 20, 45, "M(lambda=2) - M(lambda=10):");
}

Outcome interference_delta(const char* name, double lo, double hi) {
  const std::size_t im = required(bundled(name));
  const std::size_t nl = required(bundled(name, {{"interference", "margins_db", "0"}}));
  return delta_in_range(im, nl, lo, hi, "M(1/8/15 dB) - M(noise-limited):");
}

Outcome orderings() {
  std::ostringstream s;
  bool ok = true;

  // Cox against the matched PPP, and indoor against outdoor at equal intensity.
  const ScenarioFile cox = bundled("fig4");
  const ScenarioFile ppp = bundled("fig4", {{"geometry", "outdoor_model", "ppp"}});
  const ScenarioFile indoor = bundled(
      "fig4", {{"geometry", "user_intensity_per_km", "0"}, {"geometry", "user_intensity_per_km2", "54"}});
  const std::size_t m_max = 600;
  const CongestionCurve c = averaged_congestion(cox.scenario, m_max);
  const CongestionCurve p = averaged_congestion(ppp.scenario, m_max);
  const CongestionCurve in = averaged_congestion(indoor.scenario, m_max);
  std::size_t cox_violations = 0, cox_resolved = 0, in_violations = 0, in_resolved = 0;
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double band = 3.0 * c.standard_error[m] + 1e-12;
    if (p.pi[m] > c.pi[m] + band) ++cox_violations;
    if (c.pi[m] - band > p.pi[m]) ++cox_resolved;
    if (c.pi[m] - band > in.pi[m]) ++in_violations;
    if (in.pi[m] > c.pi[m] + band) ++in_resolved;
  }
  ok &= cox_violations == 0 && cox_resolved > 0 && in_violations == 0 && in_resolved > 0;
  s << "cox<ppp at " << cox_violations << " M (resolved gap at " << cox_resolved << "); "
    << "indoor<outdoor at " << in_violations << " M (resolved gap at " << in_resolved << "); ";

  // Required M along a throughput sweep: Cox over PPP, edge over middle over center.
  std::size_t dim_violations = 0;
  for (int tau : {10, 15, 20, 25, 30}) {
    const Override t{"service", "throughput_mbps", std::to_string(tau)};
    const std::size_t mc = required(bundled("fig3", {t, {"geometry", "road_intensity_per_km", "9"}}));
    const std::size_t mp = required(bundled(
        "fig3", {t, {"geometry", "road_intensity_per_km", "9"}, {"geometry", "outdoor_model", "ppp"}}));
    std::size_t region_m[3];
    const char* regions[3] = {"center", "middle", "edge"};
    for (int r = 0; r < 3; ++r) {
      region_m[r] = required(bundled("fig8_regions", {t, {"interference", "region", regions[r]}}));
    }
    if (mc < mp) ++dim_violations;
    if (region_m[2] < region_m[1] || region_m[1] < region_m[0]) ++dim_violations;
    s << "tau " << tau << ": cox " << mc << " ppp " << mp << ", regions " << region_m[0] << "/"
      << region_m[1] << "/" << region_m[2] << "; ";
  }
  ok &= dim_violations == 0;
  s << dim_violations << " sweep violations";
  return {ok, s.str()};
}

Outcome structural() {
  std::ostringstream s;
  std::size_t failures = 0;

  // Profiles partition (0, R].
  const LinkBudget lb;
  for (const auto& im : {InterferenceModel::noise_limited(), InterferenceModel::uniform(15.0),
                         InterferenceModel::three_region(0.7, 1.0, 8.0, 15.0)}) {
    for (Environment env : {Environment::outdoor, Environment::indoor}) {
      const DemandProfile p = ring_radii(lb, im, Service{}, env);
      std::vector<Interval> all;
      for (int n = 1; n <= p.levels(); ++n) {
        for (const Interval& iv : p.intervals(n)) all.push_back(iv);
      }
      std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.lower < b.lower; });
      double covered = 0.0;
      bool contiguous = all.front().lower == 0.0;
      for (std::size_t i = 0; i < all.size(); ++i) {
        covered += all[i].length();
        if (i && all[i].lower != all[i - 1].upper) contiguous = false;
      }
      if (!contiguous || std::abs(covered - 0.7) > 1e-12 * 0.7) ++failures;
    }
  }
  s << "partition failures " << failures << "; ";

  // CCDF monotone in M on every bundled curve.
  std::size_t monotone_bad = 0;
  for (const char* name : {"fig2_tau14", "fig2_tau30", "fig4", "fig6_mixed", "fig7", "fig8_regions"}) {
    const CongestionCurve c = averaged_congestion(bundled(name).scenario, 500);
    for (std::size_t m = 1; m < c.pi.size(); ++m) monotone_bad += c.pi[m] > c.pi[m - 1];
    monotone_bad += c.pi[0] != 1.0;
  }
  failures += monotone_bad;
  s << "non-monotone points " << monotone_bad << "; ";

  // Larger delta, kappa or margins never lower the curve (common roads).
  std::size_t stochastic_bad = 0;
  Scenario base = bundled("fig4").scenario;
  base.geometry.user_intensity_linear = 4.0;
  base.geometry.user_intensity_area = 20.0;
  Scenario d = base, k = base, i = base;
  d.geometry.user_intensity_linear = 6.0;
  k.geometry.user_intensity_area = 30.0;
  i.interference = InterferenceModel::three_region(0.7, 1.0, 8.0, 15.0);
  const auto b0 = averaged_congestion(base, 500).pi;
  for (const Scenario& bigger : {d, k, i}) {
    const auto b1 = averaged_congestion(bigger, 500).pi;
    for (std::size_t m = 0; m <= 500; ++m) stochastic_bad += b1[m] < b0[m];
  }
  failures += stochastic_bad;
  s << "stochastic-order violations " << stochastic_bad << "; ";

  // Byte-identical CLI output for a fixed seed.
  const std::string args = "congestion --scenario " + cli::scenario("fig6_mixed") +
                           " --m-max 200 --realizations 500 --seed 9 --with-mc --replications 1000";
  const auto r1 = cli::run(args);
  const auto r2 = cli::run(args, "PRBDIM_THREADS=2");
  const bool same = r1.status == 0 && r2.status == 0 && !r1.out.empty() && r1.out == r2.out;
  failures += !same;
  s << "CLI determinism " << (same ? "ok" : "FAILED");
  return {failures == 0, s.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "route equivalence (recursion vs integral)", 30, route_equivalence},
      {2, "pmf vs brute-force enumeration", 0, oracle_equivalence},
      {3, "Bell polynomial identities", 0, bell_identities},
      {4, "closed-form mean load vs simulation", 120, mean_load},
      {5, "averaged curve vs end-to-end simulation", 300, fig2},
      {6, "road intensity delta at 25 Mbps", 0, fig3},
      {7, "interference delta, mixed 30 Mbps", 0, [] { return interference_delta("fig6_mixed", 55, 105); }},
      {8, "interference delta, mixed 26 Mbps", 0, [] { return interference_delta("fig7", 35, 70); }},
      {9, "ordering: cox/ppp, indoor/outdoor, regions", 0, orderings},
      {10, "structural invariants", 0, structural},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.passed = false;
      o.detail += fmt(" [over the %.0f s limit]", c.time_limit_s);
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail
              << fmt(" (%.1f s)", secs) << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
