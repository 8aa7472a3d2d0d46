#include "prbdim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "prbdim/bell.hpp"
#include "prbdim/compound.hpp"
#include "prbdim/error.hpp"
#include "prbdim/rng.hpp"
#include "prbdim/simulate.hpp"

namespace prbdim {
namespace {

using Int = boost::multiprecision::cpp_int;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Rounding allowance for curves that are both exactly 0 or 1.
constexpr double kRounding = 1e-12;

Check range_check(std::string name, double value, double lower, double upper,
                  std::string detail = {}) {
  return {std::move(name), value, lower, upper, value >= lower && value <= upper,
          std::move(detail)};
}

CompoundSpec random_spec(Rng& rng, std::size_t max_levels, double max_weight) {
  std::uniform_int_distribution<std::size_t> levels(1, max_levels);
  std::uniform_real_distribution<double> weight(0.0, max_weight);
  std::vector<double> w(levels(rng));
  for (double& x : w) x = weight(rng);
  return CompoundSpec(std::move(w));
}

// Law of sum_n n V_n by direct convolution of the scaled Poisson laws.
std::vector<double> convolved_pmf(const CompoundSpec& spec, std::size_t k_max) {
  std::vector<double> dist(k_max + 1, 0.0);
  dist[0] = 1.0;
  for (std::size_t n = 1; n <= spec.levels(); ++n) {
    const double w = spec.weights[n - 1];
    std::vector<double> term(k_max / n + 1);
    term[0] = std::exp(-w);
    for (std::size_t v = 1; v < term.size(); ++v) term[v] = term[v - 1] * w / static_cast<double>(v);
    std::vector<double> next(k_max + 1, 0.0);
    for (std::size_t k = 0; k <= k_max; ++k) {
      for (std::size_t v = 0; v * n <= k; ++v) next[k] += term[v] * dist[k - v * n];
    }
    dist = std::move(next);
  }
  return dist;
}

std::vector<Int> random_ints(Rng& rng, std::size_t count, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Int> x(count);
  for (Int& v : x) v = d(rng);
  return x;
}

// Closed forms of the first five complete Bell polynomials.
std::vector<Int> listed_bell(const std::vector<Int>& x) {
  const Int& x1 = x[0];
  const Int& x2 = x[1];
  const Int& x3 = x[2];
  const Int& x4 = x[3];
  return {Int(1), x1, x1 * x1 + x2, x1 * x1 * x1 + 3 * x1 * x2 + x3,
          x1 * x1 * x1 * x1 + 6 * x1 * x1 * x2 + 4 * x1 * x3 + 3 * x2 * x2 + x4};
}

Int binomial(std::size_t n, std::size_t k) {
  Int r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t required_m(const ScenarioFile& file, double target, std::size_t threads) {
  return dimension_prbs(query_for(file, target), threads).required_m;
}

}  // namespace

bool SuiteReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

SuiteReport validate_identities(std::uint64_t seed) {
  SuiteReport report{"identities", seed, {}};

  {
    Rng rng = make_stream(seed, StreamTag::validation, 0);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const CompoundSpec spec = random_spec(rng, 20, 2.0);
      const std::vector<double> curve = ccdf_curve(spec, 150);
      for (std::int64_t m = 1; m <= 150; ++m) {
        worst = std::max(worst, std::abs(curve[static_cast<std::size_t>(m)] - ccdf_integral(spec, m)));
      }
    }
    report.checks.push_back(range_check("recursion vs integral, 100 specs, 1<=M<=150", worst, 0.0,
                                        1e-6, "max |difference|"));
  }

  {
    Rng rng = make_stream(seed, StreamTag::validation, 1);
    double worst = 0.0;
    for (std::size_t levels = 1; levels <= 5; ++levels) {
      for (int rep = 0; rep < 20; ++rep) {
        std::uniform_real_distribution<double> weight(0.0, 2.0);
        std::vector<double> w(levels);
        for (double& x : w) x = weight(rng);
        const CompoundSpec spec(w);
        const PmfTable table = pmf(spec, 50);
        const std::vector<double> ref = convolved_pmf(spec, 50);
        for (std::size_t k = 0; k <= 50; ++k) {
          worst = std::max(worst, std::abs(table.probabilities[k] - ref[k]));
        }
      }
    }
    report.checks.push_back(range_check("pmf vs convolution, N<=5, K<=50", worst, 0.0, 1e-10,
                                        "max |difference|"));
  }

  {
    Rng rng = make_stream(seed, StreamTag::validation, 2);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const CompoundSpec spec = random_spec(rng, 8, 1.0);
      for (std::int64_t m = 0; m <= 26; ++m) {
        worst = std::max(worst, std::abs(ccdf_bell_literal(spec, m) - ccdf_bell(spec, m)));
      }
    }
    report.checks.push_back(range_check("literal Bell sum vs recursion, M<=26", worst, 0.0, 1e-9,
                                        "max |difference|"));
  }

  {
    Rng rng = make_stream(seed, StreamTag::validation, 3);
    std::size_t mismatches = 0;
    for (int s = 0; s < 20; ++s) {
      const std::vector<Int> x = random_ints(rng, 10, -6, 6);
      for (std::size_t p = 0; p <= 10; ++p) {
        const std::span<const Int> head(x.data(), p);
        if (bell::complete<Int>(head) != bell::determinant<Int>(head)) ++mismatches;
      }
    }
    report.checks.push_back(range_check("Bell recurrence == determinant, exact, p<=10",
                                        static_cast<double>(mismatches), 0.0, 0.0, "mismatches"));
  }

  {
    Rng rng = make_stream(seed, StreamTag::validation, 4);
    std::size_t mismatches = 0;
    for (int s = 0; s < 20; ++s) {
      const std::vector<Int> x = random_ints(rng, 8, -5, 5);
      const std::vector<Int> y = random_ints(rng, 8, -5, 5);
      std::vector<Int> xy(8);
      for (std::size_t i = 0; i < 8; ++i) xy[i] = x[i] + y[i];
      const auto bx = bell::complete_sequence<Int>(x);
      const auto by = bell::complete_sequence<Int>(y);
      const auto bxy = bell::complete_sequence<Int>(xy);
      for (std::size_t p = 0; p <= 8; ++p) {
        Int sum = 0;
        for (std::size_t k = 0; k <= p; ++k) sum += binomial(p, k) * bx[k] * by[p - k];
        if (sum != bxy[p]) ++mismatches;
      }
    }
    report.checks.push_back(range_check("Bell binomial-type relation, exact, p<=8",
                                        static_cast<double>(mismatches), 0.0, 0.0, "mismatches"));
  }

  {
    Rng rng = make_stream(seed, StreamTag::validation, 5);
    std::size_t mismatches = 0;
    for (int s = 0; s < 50; ++s) {
      const std::vector<Int> x = random_ints(rng, 4, -9, 9);
      const auto seq = bell::complete_sequence<Int>(x);
      const auto listed = listed_bell(x);
      for (std::size_t p = 0; p <= 4; ++p) {
        if (seq[p] != listed[p]) ++mismatches;
      }
    }
    report.checks.push_back(range_check("Bell B_0..B_4 closed forms, exact",
                                        static_cast<double>(mismatches), 0.0, 0.0, "mismatches"));
  }
  return report;
}

SuiteReport validate_mc(const Scenario& scenario, std::size_t replications, std::size_t m_max,
                        std::size_t threads) {
  SuiteReport report{"mc", scenario.seed, {}};
  const CellModel model(scenario);
  const double mean = expected_load(model);
  if (m_max == 0) m_max = suggested_m_max(model);
  const CongestionCurve analytic = averaged_congestion(model, m_max, threads);
  const EmpiricalCurve empirical = empirical_ccdf(model, m_max, replications, threads);

  const double se_mean = std::sqrt(empirical.gamma_variance / static_cast<double>(replications));
  report.checks.push_back(range_check("mean load", empirical.mean_gamma, mean - 4.0 * se_mean,
                                      mean + 4.0 * se_mean,
                                      "analytic " + std::to_string(mean)));
  for (std::size_t m = 0; m <= m_max; ++m) {
    const auto hits = static_cast<std::size_t>(
        std::llround(empirical.ccdf[m] * static_cast<double>(replications)));
    const auto [lo, hi] = wilson_interval(hits, replications, 3.29);
    const double slack = 3.0 * analytic.standard_error[m];
    report.checks.push_back(range_check("ccdf M=" + std::to_string(m), analytic.pi[m], lo - slack,
                                        hi + slack,
                                        "empirical " + std::to_string(empirical.ccdf[m])));
  }
  return report;
}

DimensionQuery query_for(const ScenarioFile& file, double target) {
  const Scenario& s = file.scenario;
  if (!s.throughput_bps) throw ValidationError("scenario has no [service] throughput_mbps");
  DimensionQuery q;
  q.scenario = s;
  q.target_congestion = target;
  q.throughput_bps = *s.throughput_bps;
  q.outdoor_fraction = s.outdoor_fraction;
  q.m_ceiling = file.m_ceiling;
  return q;
}

SuiteReport validate_figures(const std::string& dir, std::uint64_t seed, std::size_t threads) {
  SuiteReport report{"figures", seed, {}};
  const std::vector<Override> seeded{{"monte_carlo", "seed", std::to_string(seed)}};
  auto load = [&](const std::string& name, std::vector<Override> extra = {}) {
    std::vector<Override> all = seeded;
    all.insert(all.end(), extra.begin(), extra.end());
    return load_scenario((std::filesystem::path(dir) / (name + ".scenario")).string(), all);
  };
  constexpr double target = 0.05;

  {
    const std::size_t sparse = required_m(load("fig3"), target, threads);
    const std::size_t dense =
        required_m(load("fig3", {{"geometry", "road_intensity_per_km", "10"}}), target, threads);
    report.checks.push_back(range_check(
        "road intensity 2 -> 10 saves PRBs", static_cast<double>(sparse) - static_cast<double>(dense),
        20.0, 45.0, "M(2)=" + std::to_string(sparse) + " M(10)=" + std::to_string(dense)));
  }
  for (const auto& [name, lo, hi] :
       {std::tuple{"fig6_mixed", 55.0, 105.0}, std::tuple{"fig7", 35.0, 70.0}}) {
    const std::size_t im = required_m(load(name), target, threads);
    const std::size_t nl = required_m(load(name, {{"interference", "margins_db", "0"}}), target,
                                      threads);
    report.checks.push_back(range_check(
        std::string(name) + " interference minus noise-limited",
        static_cast<double>(im) - static_cast<double>(nl), lo, hi,
        "M(im)=" + std::to_string(im) + " M(noise)=" + std::to_string(nl)));
  }
  {
    std::size_t m[3];
    const char* regions[3] = {"center", "middle", "edge"};
    for (int r = 0; r < 3; ++r) {
      m[r] = required_m(load("fig8_regions", {{"interference", "region", regions[r]}}), target,
                        threads);
    }
    report.checks.push_back(range_check("edge >= middle",
                                        static_cast<double>(m[2]) - static_cast<double>(m[1]), 0.0,
                                        kInf));
    report.checks.push_back(range_check("middle >= center",
                                        static_cast<double>(m[1]) - static_cast<double>(m[0]), 0.0,
                                        kInf));
  }
  {
    const ScenarioFile cox = load("fig4");
    const ScenarioFile ppp = load("fig4", {{"geometry", "outdoor_model", "ppp"}});
    const CellModel cox_model(cox.scenario);
    const double mean = expected_load(cox_model);
    const auto m_max = static_cast<std::size_t>(std::ceil(3.0 * mean + 20.0));
    const CongestionCurve c = averaged_congestion(cox_model, m_max, threads);
    const CongestionCurve p = averaged_congestion(ppp.scenario, m_max, threads);
    double worst = -kInf;
    for (std::size_t m = 0; m <= m_max; ++m) {
      worst = std::max(worst, p.pi[m] - c.pi[m] - 3.0 * c.standard_error[m]);
    }
    report.checks.push_back(range_check("cox >= ppp", worst, -kInf, kRounding,
                                        "max of pi_ppp - pi_cox - 3 se"));

    // Same spatial intensity moved indoors.
    const double area = cox.scenario.geometry.road_intensity *
                        cox.scenario.geometry.user_intensity_linear;
    const ScenarioFile indoor =
        load("fig4", {{"geometry", "user_intensity_per_km", "0"},
                      {"geometry", "user_intensity_per_km2", format_shortest(area)}});
    const CongestionCurve in = averaged_congestion(indoor.scenario, m_max, threads);
    worst = -kInf;
    for (std::size_t m = 0; m <= m_max; ++m) {
      worst = std::max(worst, c.pi[m] - 3.0 * c.standard_error[m] - in.pi[m]);
    }
    report.checks.push_back(range_check("indoor >= outdoor", worst, -kInf, kRounding,
                                        "max of pi_out - 3 se - pi_in"));
  }
  return report;
}

void print_report(const SuiteReport& report, std::ostream& out) {
  for (const Check& c : report.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << ": " << std::setprecision(6) << c.value
        << " in [" << c.lower << ", " << c.upper << "]";
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const Check& c) { return !c.passed; });
  out << report.suite << ": " << report.checks.size() - static_cast<std::size_t>(failed) << "/"
      << report.checks.size() << " checks passed\n";
}

void write_summary_json(const SuiteReport& report, std::ostream& out) {
  auto bound = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return nullptr;
    return v;
  };
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"lower", bound(c.lower)},
                      {"upper", bound(c.upper)},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  }
  const nlohmann::json doc{{"suite", report.suite},
                           {"seed", report.seed},
                           {"passed", report.passed()},
                           {"checks", checks}};
  out << doc.dump() << '\n';
}

}  // namespace prbdim
