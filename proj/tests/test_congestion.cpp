#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "prbdim/congestion.hpp"
#include "prbdim/error.hpp"

using namespace prbdim;

namespace {

Scenario outdoor(double lambda = 9.0, double delta = 6.0) {
  Scenario s;
  s.geometry = {lambda, delta, 0.0};
  s.mc_realizations = 400;
  return s;
}

Scenario indoor(double kappa) {
  Scenario s;
  s.geometry = {0.0, 0.0, kappa};
  return s;
}

Scenario mixed(double tau_mbps, InterferenceModel im = InterferenceModel::noise_limited()) {
  Scenario s;
  s.geometry.road_intensity = 9.0;
  s.throughput_bps = tau_mbps * 1e6;
  s.outdoor_fraction = 0.5;
  s.interference = std::move(im);
  s.mc_realizations = 300;
  return s;
}

}  // namespace

TEST_CASE("conditional congestion on degenerate roads") {
  const CellModel model(outdoor());
  CHECK(conditional_congestion(model, RoadRealization{}, 0) == 1.0);
  for (int m = 1; m < 5; ++m) CHECK(conditional_congestion(model, RoadRealization{}, m) == 0.0);

  // One diameter road, single level: plain Poisson with mean 2 delta R.
  const RoadRealization diameter{{0.0}};
  for (int m = 0; m < 25; ++m) {
    CHECK(conditional_congestion(model, diameter, m) ==
          doctest::Approx(static_cast<double>(oracle::poisson_ccdf(2.0L * 6.0L * 0.7L, m)))
              .epsilon(1e-12)
              .scale(1.0));
  }
}

TEST_CASE("indoor-only load does not depend on roads") {
  const CellModel model(indoor(54.0));
  CHECK_FALSE(model.has_random_roads());
  const CompoundSpec spec(indoor_masses(model.indoor_profile(), 54.0));
  for (int m = 0; m < 200; m += 7) {
    CHECK(conditional_congestion(model, RoadRealization{{0.1, 0.5}}, m) == ccdf_bell(spec, m));
  }
  const CongestionCurve curve = averaged_congestion(model, 300);
  CHECK(curve.realizations == 1);
  for (std::size_t m = 0; m <= 300; ++m) {
    CHECK(curve.pi[m] == ccdf_bell(spec, static_cast<std::int64_t>(m)));
    CHECK(curve.standard_error[m] == 0.0);
  }
}

TEST_CASE("averaged curve invariants") {
  const CongestionCurve c = averaged_congestion(mixed(20.0), 300);
  CHECK(c.pi[0] == 1.0);
  for (std::size_t m = 1; m < c.pi.size(); ++m) {
    CHECK(c.pi[m] <= c.pi[m - 1]);
    CHECK(c.pi[m] >= 0.0);
    CHECK(c.standard_error[m] >= 0.0);
  }
}

TEST_CASE("averaging is independent of the thread count") {
  const CellModel model(mixed(30.0));
  const CongestionCurve one = averaged_congestion(model, 250, 1);
  const CongestionCurve four = averaged_congestion(model, 250, 4);
  CHECK(one.pi == four.pi);
  CHECK(one.standard_error == four.standard_error);
}

TEST_CASE("doubling the realization count keeps the first half") {
  Scenario s = mixed(14.0);
  const CellModel small(s);
  s.mc_realizations *= 2;
  const CellModel large(s);
  const auto a = realization_specs(small, small.scenario().mc_realizations);
  const auto b = realization_specs(large, large.scenario().mc_realizations);
  REQUIRE(b.size() == 2 * a.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].weights == b[i].weights);
}

TEST_CASE("more traffic never lowers congestion") {
  const CongestionCurve low = averaged_congestion(mixed(14.0), 300);
  const CongestionCurve high = averaged_congestion(mixed(30.0), 300);
  for (std::size_t m = 0; m <= 300; ++m) CHECK(high.pi[m] >= low.pi[m]);
}

TEST_CASE("stochastic monotonicity in delta, kappa and margins") {
  const std::size_t m_max = 400;
  auto curve = [&](Scenario s) { return averaged_congestion(s, m_max).pi; };
  Scenario base = outdoor(9.0, 4.0);
  base.geometry.user_intensity_area = 20.0;
  Scenario more_delta = base;
  more_delta.geometry.user_intensity_linear = 6.0;
  Scenario more_kappa = base;
  more_kappa.geometry.user_intensity_area = 40.0;
  Scenario more_im = base;
  more_im.interference = InterferenceModel::three_region(0.7, 1.0, 8.0, 15.0);
  Scenario most_im = base;
  most_im.interference = InterferenceModel::three_region(0.7, 3.0, 10.0, 20.0);

  const auto b = curve(base);
  const auto d = curve(more_delta);
  const auto k = curve(more_kappa);
  const auto i1 = curve(more_im);
  const auto i2 = curve(most_im);
  for (std::size_t m = 0; m <= m_max; ++m) {
    CHECK(d[m] >= b[m]);
    CHECK(k[m] >= b[m]);
    CHECK(i1[m] >= b[m]);
    CHECK(i2[m] >= i1[m]);
  }
}

TEST_CASE("expected load closed forms") {
  // Single outdoor level over the whole cell.
  const CellModel out(outdoor());
  CHECK(expected_load(out) == doctest::Approx(static_cast<double>(oracle::kOutdoorLoad)).epsilon(1e-13));

  // Indoor only: kappa pi sum n (d_n^2 - d_{n-1}^2).
  Scenario s = indoor(30.0);
  s.interference = InterferenceModel::uniform(15.0);
  const CellModel in(s);
  double ref = 0.0;
  double prev = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const double d = n < 6 ? static_cast<double>(oracle::kIndoorRings15[n - 1]) : 0.7;
    ref += n * (d * d - prev * prev);
    prev = d;
  }
  CHECK(expected_load(in) == doctest::Approx(30.0 * std::numbers::pi * ref).epsilon(1e-12));

  // Ring formula agrees with the interval sum.
  Scenario both = mixed(25.0, InterferenceModel::uniform(15.0));
  const CellModel m(both);
  const auto ro = m.outdoor_profile().ring_radii();
  const auto ri = m.indoor_profile().ring_radii();
  REQUIRE(ro);
  REQUIRE(ri);
  CHECK(expected_load(m) ==
        doctest::Approx(expected_load_rings(*ro, *ri, m.geometry().user_intensity_linear, 9.0,
                                            m.geometry().user_intensity_area, 0.7)));
}

TEST_CASE("Cox load dominates the matched PPP load") {
  Scenario cox = outdoor();
  Scenario ppp = cox;
  ppp.outdoor_model = OutdoorModel::ppp;
  const CongestionCurve c = averaged_congestion(cox, 400);
  const CongestionCurve p = averaged_congestion(ppp, 400);
  CHECK(p.realizations == 1);
  for (std::size_t m = 0; m <= 400; ++m) CHECK(c.pi[m] + 3.0 * c.standard_error[m] >= p.pi[m] - 1e-12);
  // Matched by the printed convention, so the PPP mean is lambda delta pi R^2.
  CHECK(expected_load(ppp) == doctest::Approx(static_cast<double>(oracle::kDiskMass)));
}

TEST_CASE("region restriction splits the load") {
  Scenario s = mixed(26.0, InterferenceModel::three_region(0.7, 1.0, 8.0, 15.0));
  double parts = 0.0;
  for (Region r : {Region::center, Region::middle, Region::edge}) {
    s.region = r;
    parts += expected_load(s);
  }
  s.region = Region::all;
  CHECK(parts == doctest::Approx(expected_load(s)).epsilon(1e-12));

  Scenario bad = mixed(26.0);
  bad.region = Region::edge;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("scenario validation") {
  Scenario s = mixed(20.0);
  s.outdoor_fraction = 1.5;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = mixed(20.0);
  s.mc_realizations = 0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = mixed(20.0);
  s.geometry.road_intensity = 0.0;
  CHECK_THROWS_AS(s.validate(), InfeasibleSplitError);
}
