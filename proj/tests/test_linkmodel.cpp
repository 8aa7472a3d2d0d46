#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "prbdim/error.hpp"
#include "prbdim/linkmodel.hpp"

using namespace prbdim;

namespace {

LinkBudget defaults() { return LinkBudget{}; }

double db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace

TEST_CASE("SINR at the 1 km reference is pure dB arithmetic") {
  LinkBudget lb = defaults();
  lb.cell_radius_km = 1.0;
  const auto im = InterferenceModel::noise_limited();
  CHECK(sinr_at(lb, im, 1.0, Environment::outdoor) == doctest::Approx(199.526231).epsilon(1e-8));
  CHECK(sinr_at(lb, im, 1.0, Environment::indoor) == doctest::Approx(0.0501187).epsilon(1e-6));
  CHECK(db(sinr_at(lb, InterferenceModel::uniform(8.0), 1.0, Environment::outdoor)) ==
        doctest::Approx(15.0));
}

TEST_CASE("SINR and rate at the cell edge") {
  const LinkBudget lb = defaults();
  const auto im = InterferenceModel::noise_limited();
  const double s = sinr_at(lb, im, 0.7, Environment::outdoor);
  CHECK(db(s) == doctest::Approx(static_cast<double>(oracle::kSinrDb700m)).epsilon(1e-13));
  CHECK(s == doctest::Approx(static_cast<double>(oracle::kSinrLinear700m)).epsilon(1e-12));
  CHECK(throughput_at(lb, im, 0.7, Environment::outdoor) ==
        doctest::Approx(static_cast<double>(oracle::kRate700m)).epsilon(1e-12));
  CHECK_THROWS_AS(sinr_at(lb, im, 0.0, Environment::outdoor), DomainError);
  CHECK_THROWS_AS(sinr_at(lb, im, 0.71, Environment::outdoor), DomainError);
}

TEST_CASE("rate for unit and three SINR") {
  LinkBudget lb = defaults();
  // Pick the power so that SINR at 1 km is exactly 1, then 3.
  lb.cell_radius_km = 1.0;
  lb.tx_power_dbm = lb.prop_const_db + lb.noise_power_dbm;
  CHECK(throughput_at(lb, InterferenceModel::noise_limited(), 1.0, Environment::outdoor) ==
        doctest::Approx(360000.0));
  lb.tx_power_dbm += 10.0 * std::log10(3.0);
  CHECK(throughput_at(lb, InterferenceModel::noise_limited(), 1.0, Environment::outdoor) ==
        doctest::Approx(720000.0));
}

TEST_CASE("PRB demand is a capped ceiling") {
  LinkBudget lb = defaults();
  Service svc;
  const auto im = InterferenceModel::noise_limited();
  // Outdoor rate at R is 3.4 Mbps: one PRB everywhere.
  CHECK(max_prbs(lb, im, svc, Environment::outdoor) == 1);
  CHECK(prbs_required(lb, im, svc, 0.7, Environment::outdoor) == 1);
  // Indoor rate at R is 83.6 kbps: 6 PRBs, equal to the cap.
  CHECK(max_prbs(lb, im, svc, Environment::indoor) == 6);
  lb.n_max = 100;
  CHECK(max_prbs(lb, im, svc, Environment::indoor) == 6);
  lb.n_max = 4;
  CHECK(max_prbs(lb, im, svc, Environment::indoor) == 4);
  CHECK(prbs_required(lb, im, svc, 0.7, Environment::indoor) == 4);
}

TEST_CASE("ceiling examples at exact rate ratios") {
  LinkBudget lb = defaults();
  lb.cell_radius_km = 1.0;
  lb.n_max = 100;
  lb.tx_power_dbm = lb.prop_const_db + lb.noise_power_dbm;  // C(1 km) = 360 kbps
  const auto im = InterferenceModel::noise_limited();
  Service svc;
  svc.rate_bps = 360000.0;
  CHECK(prbs_required(lb, im, svc, 1.0, Environment::outdoor) == 1);
  svc.rate_bps = 360000.0 * 4.17;
  CHECK(prbs_required(lb, im, svc, 1.0, Environment::outdoor) == 5);
  svc.rate_bps = 360000.0 * 0.147;
  CHECK(prbs_required(lb, im, svc, 1.0, Environment::outdoor) == 1);
}

TEST_CASE("ring radius closed form") {
  LinkBudget lb = defaults();
  lb.tx_power_dbm = lb.prop_const_db + lb.noise_power_dbm;  // Theta(1 km) = 1
  lb.path_loss_exp = 2.0;
  Service svc;
  svc.rate_bps = lb.spatial_layers() * lb.prb_bandwidth_hz;  // C*/(theta W) = 1
  CHECK(ring_radius(lb, 0.0, svc, 1, Environment::outdoor) == doctest::Approx(1.0));

  const LinkBudget paper = defaults();
  for (int n = 1; n <= 6; ++n) {
    const double d = ring_radius(paper, 15.0, Service{}, n, Environment::indoor);
    CHECK(d == doctest::Approx(static_cast<double>(oracle::kIndoorRings15[n - 1])).epsilon(1e-12));
    const double o = static_cast<double>(
        oracle::ring(60, -93, 166, 3.5, 15, 500e3, 2, 180e3, n));
    CHECK(d == doctest::Approx(o).epsilon(1e-12));
  }
}

TEST_CASE("indoor rings under a 15 dB margin increase and end at R") {
  const LinkBudget lb = defaults();
  const auto profile = ring_radii(lb, InterferenceModel::uniform(15.0), Service{}, Environment::indoor);
  REQUIRE(profile.levels() == 6);
  const auto radii = profile.ring_radii();
  REQUIRE(radii.has_value());
  for (std::size_t i = 1; i < radii->size(); ++i) CHECK((*radii)[i] > (*radii)[i - 1]);
  CHECK(radii->back() == 0.7);
  for (std::size_t i = 0; i + 1 < radii->size(); ++i) {
    CHECK((*radii)[i] == doctest::Approx(static_cast<double>(oracle::kIndoorRings15[i])));
  }
}

TEST_CASE("noise-limited outdoor profile is a single ring") {
  const auto p = ring_radii(defaults(), InterferenceModel::noise_limited(), Service{},
                            Environment::outdoor);
  REQUIRE(p.levels() == 1);
  REQUIRE(p.intervals(1).size() == 1);
  CHECK(p.intervals(1)[0] == Interval{0.0, 0.7});
  CHECK(p.level_at(0.7) == 1);
  CHECK(p.level_at(0.70001) == 0);
}

TEST_CASE("profiles partition the cell and agree with pointwise demand") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const LinkBudget lb = defaults();
  const InterferenceModel models[] = {
      InterferenceModel::noise_limited(), InterferenceModel::uniform(15.0),
      InterferenceModel::three_region(0.7, 1.0, 8.0, 15.0),
      InterferenceModel::three_region(0.7, 0.0, 20.0, 3.0)};
  for (const auto& im : models) {
    for (Environment env : {Environment::outdoor, Environment::indoor}) {
      for (double rate : {100e3, 500e3, 2e6}) {
        Service svc;
        svc.rate_bps = rate;
        const DemandProfile p = ring_radii(lb, im, svc, env);
        double covered = 0.0;
        std::vector<std::pair<double, double>> all;
        for (int n = 1; n <= p.levels(); ++n) {
          CHECK(n <= lb.n_max);
          for (const Interval& iv : p.intervals(n)) {
            covered += iv.length();
            all.emplace_back(iv.lower, iv.upper);
          }
        }
        CHECK(std::abs(covered - 0.7) <= 1e-12 * 0.7);
        std::sort(all.begin(), all.end());
        CHECK(all.front().first == 0.0);
        for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i].first == all[i - 1].second);

        for (int k = 0; k < 400; ++k) {
          const double x = 0.7 * (1.0 - unit(rng));
          const int level = p.level_at(x);
          const int direct = prbs_required(lb, im, svc, x, env);
          if (level != direct) {
            // Only tolerated within rounding of a ring boundary.
            bool near = false;
            for (const auto& [lo, hi] : all) near |= std::abs(x - hi) < 1e-12 || std::abs(x - lo) < 1e-12;
            CHECK(near);
          }
        }
        // Nondecreasing inside each region.
        for (std::size_t r = 0; r < im.regions(); ++r) {
          const auto [lo, hi] = im.region_bounds(r, 0.7);
          int prev = 0;
          for (int k = 1; k <= 200; ++k) {
            const int level = p.level_at(lo + (hi - lo) * k / 200.0);
            CHECK(level >= prev);
            prev = level;
          }
        }
      }
    }
  }
}

TEST_CASE("three-region profile reduces to rings for a constant margin") {
  const LinkBudget lb = defaults();
  const auto flat = InterferenceModel::three_region(0.7, 15.0, 15.0, 15.0);
  const auto a = ring_radii(lb, flat, Service{}, Environment::indoor);
  const auto b = ring_radii(lb, InterferenceModel::uniform(15.0), Service{}, Environment::indoor);
  CHECK(a.rings() == b.rings());
}

TEST_CASE("region boundaries belong to the inner region") {
  const auto im = InterferenceModel::three_region(0.9, 1.0, 8.0, 15.0);
  CHECK(im.region_of(0.3) == 0);
  CHECK(im.region_of(0.3000001) == 1);
  CHECK(im.margin_db_at(0.9) == 15.0);
}

TEST_CASE("invalid link budgets are rejected") {
  LinkBudget lb = defaults();
  lb.path_loss_exp = 2.0;
  CHECK_THROWS_AS(lb.validate(), ValidationError);
  lb = defaults();
  lb.rx_antennas = 0;
  CHECK_THROWS_AS(lb.validate(), ValidationError);
  lb = defaults();
  lb.cell_radius_km = -1;
  CHECK_THROWS_AS(lb.validate(), ValidationError);
  InterferenceModel im = InterferenceModel::three_region(0.7, 1, 8, 15);
  im.breakpoints_km = {0.5, 0.2};
  CHECK_THROWS_AS(im.validate(0.7), ValidationError);
  CHECK_THROWS_AS(InterferenceModel::uniform(-1).validate(0.7), ValidationError);
  CHECK(lb.spatial_layers() == 2);
}
