#include <cmath>

#include "doctest.h"
#include "prbdim/error.hpp"
#include "prbdim/simulate.hpp"

using namespace prbdim;

namespace {

Scenario indoor_only(double kappa) {
  Scenario s;
  s.geometry = {0.0, 0.0, kappa};
  s.interference = InterferenceModel::uniform(15.0);
  return s;
}

}  // namespace

TEST_CASE("load of explicit drops") {
  const CellModel model(indoor_only(20.0));
  CHECK(load_of(model, UserDrop{}).gamma == 0);

  // A user inside the third indoor ring requests exactly 3 PRBs.
  const auto& ring = model.indoor_profile().intervals(3);
  REQUIRE(ring.size() == 1);
  const double x = 0.5 * (ring[0].lower + ring[0].upper);
  const LoadSample s = load_of(model, UserDrop{{{x, Environment::indoor}}});
  CHECK(s.gamma == 3);
  CHECK(s.indoor_users == 1);
  CHECK(s.per_level[2] == 1);
  // Distance 0 lands in the first ring.
  CHECK(load_of(model, UserDrop{{{0.0, Environment::indoor}}}).gamma == 1);
}

TEST_CASE("zero load gives the indicator curve") {
  Scenario s;
  s.geometry = {9.0, 6.0, 0.0};
  const CellModel model(s);
  const EmpiricalCurve e = empirical_conditional_ccdf(model, RoadRealization{}, 10, 200);
  CHECK(e.ccdf[0] == 1.0);
  for (std::size_t m = 1; m <= 10; ++m) CHECK(e.ccdf[m] == 0.0);
  CHECK(e.mean_gamma == 0.0);
}

TEST_CASE("indoor-only empirical CCDF within 3 sigma of the analytic law") {
  const CellModel model(indoor_only(20.0));
  const std::size_t m_max = suggested_m_max(model);
  const std::size_t reps = 10000;
  const EmpiricalCurve e = empirical_ccdf(model, m_max, reps);
  const CompoundSpec spec(model.deterministic_weights());
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double p = ccdf_bell(spec, static_cast<std::int64_t>(m));
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    CHECK(std::abs(e.ccdf[m] - p) <= 3.0 * sigma + 1.0 / static_cast<double>(reps));
  }
  CHECK(e.mean_indoor_users == doctest::Approx(e.nominal_users).epsilon(0.02));
}

TEST_CASE("empirical mean load tracks the closed form") {
  Scenario s;
  s.geometry = {9.0, 6.0, 10.0};
  s.interference = InterferenceModel::three_region(0.7, 1.0, 8.0, 15.0);
  const CellModel model(s);
  const EmpiricalCurve e = empirical_ccdf(model, 10, 20000);
  CHECK(e.mean_gamma == doctest::Approx(expected_load(model)).epsilon(0.02));
  // Outdoor users exceed the nominal count by 8/3 under the disk radius law.
  CHECK(e.mean_outdoor_users ==
        doctest::Approx(8.0 / 3.0 * 9.0 * 6.0 * 3.14159265358979 * 0.49).epsilon(0.02));
}

TEST_CASE("PPP outdoor users") {
  Scenario s;
  s.geometry = {9.0, 6.0, 0.0};
  s.outdoor_model = OutdoorModel::ppp;
  const CellModel model(s);
  const EmpiricalCurve e = empirical_ccdf(model, 10, 5000);
  CHECK(e.mean_outdoor_users == doctest::Approx(e.nominal_users).epsilon(0.02));
  CHECK(e.mean_indoor_users == 0.0);
}

TEST_CASE("replications are reproducible and thread independent") {
  Scenario s;
  s.geometry = {9.0, 3.0, 10.0};
  const CellModel model(s);
  const EmpiricalCurve a = empirical_ccdf(model, 150, 700, 1);
  const EmpiricalCurve b = empirical_ccdf(model, 150, 700, 3);
  CHECK(a.ccdf == b.ccdf);
  CHECK(a.mean_gamma == b.mean_gamma);
  CHECK(a.level_mean == b.level_mean);
  CHECK_THROWS_AS(empirical_ccdf(model, 10, 99), ValidationError);
}

TEST_CASE("Wilson interval") {
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
  const auto [z0, z1] = wilson_interval(0, 1000);
  CHECK(z0 == 0.0);
  CHECK(z1 > 0.0);
  const auto [a0, a1] = wilson_interval(1000, 1000);
  CHECK(a1 == 1.0);
  CHECK(a0 < 1.0);
}
