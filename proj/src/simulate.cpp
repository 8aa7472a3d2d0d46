#include "prbdim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prbdim/error.hpp"
#include "prbdim/parallel.hpp"

namespace prbdim {
namespace {

constexpr std::size_t kChunk = 256;

UserDrop draw_users(const CellModel& model, const RoadRealization& road, Rng& rng) {
  const GeometryParams& gp = model.geometry();
  const double r = model.cell_radius_km();
  if (model.scenario().outdoor_model == OutdoorModel::cox) {
    return sample_users(gp, r, road, rng);
  }
  // Matched spatial PPP for outdoor users, then the indoor PPP.
  GeometryParams outdoor_ppp;
  outdoor_ppp.user_intensity_area = gp.road_intensity * gp.user_intensity_linear;
  UserDrop drop = sample_users(outdoor_ppp, r, {}, rng);
  for (User& u : drop.users) u.environment = Environment::outdoor;
  GeometryParams indoor;
  indoor.user_intensity_area = gp.user_intensity_area;
  UserDrop rest = sample_users(indoor, r, {}, rng);
  drop.users.insert(drop.users.end(), rest.users.begin(), rest.users.end());
  return drop;
}

struct ChunkTotals {
  std::vector<std::int64_t> level_sum;
  std::vector<std::int64_t> level_sq;
  std::int64_t outdoor = 0;
  std::int64_t indoor = 0;
};

template <class Draw>
EmpiricalCurve run_replications(const CellModel& model, std::size_t m_max,
                                std::size_t replications, std::size_t threads, Draw draw) {
  if (replications < 100) throw ValidationError("empirical ccdf: need at least 100 replications");
  const std::size_t levels = model.levels();
  std::vector<std::int64_t> gamma(replications, 0);
  const std::size_t chunks = (replications + kChunk - 1) / kChunk;
  std::vector<ChunkTotals> totals(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    ChunkTotals& t = totals[c];
    t.level_sum.assign(levels, 0);
    t.level_sq.assign(levels, 0);
    const std::size_t end = std::min(replications, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      Rng rng = make_stream(model.scenario().seed, StreamTag::simulation, i);
      const LoadSample s = draw(rng);
      gamma[i] = s.gamma;
      t.outdoor += s.outdoor_users;
      t.indoor += s.indoor_users;
      for (std::size_t n = 0; n < levels; ++n) {
        const std::int64_t x = n < s.per_level.size() ? s.per_level[n] : 0;
        t.level_sum[n] += x;
        t.level_sq[n] += x * x;
      }
    }
  });

  EmpiricalCurve out;
  out.replications = replications;
  const double count = static_cast<double>(replications);

  std::vector<std::size_t> at_least(m_max + 2, 0);
  double gamma_total = 0.0;
  double gamma_sq = 0.0;
  for (std::int64_t g : gamma) {
    gamma_total += static_cast<double>(g);
    gamma_sq += static_cast<double>(g) * static_cast<double>(g);
    ++at_least[static_cast<std::size_t>(std::min<std::int64_t>(g, static_cast<std::int64_t>(m_max) + 1))];
  }
  // Suffix sums: hits[M] = #{Gamma >= M}.
  for (std::size_t m = m_max + 1; m-- > 0;) at_least[m] += at_least[m + 1];
  out.ccdf.resize(m_max + 1);
  out.ci_lower.resize(m_max + 1);
  out.ci_upper.resize(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) {
    out.ccdf[m] = static_cast<double>(at_least[m]) / count;
    const auto [lo, hi] = wilson_interval(at_least[m], replications);
    out.ci_lower[m] = lo;
    out.ci_upper[m] = hi;
  }
  out.mean_gamma = gamma_total / count;
  out.gamma_variance = (gamma_sq - gamma_total * gamma_total / count) / (count - 1.0);

  std::int64_t outdoor = 0;
  std::int64_t indoor = 0;
  std::vector<double> sum(levels, 0.0);
  std::vector<double> sq(levels, 0.0);
  for (const ChunkTotals& t : totals) {
    outdoor += t.outdoor;
    indoor += t.indoor;
    for (std::size_t n = 0; n < levels; ++n) {
      sum[n] += static_cast<double>(t.level_sum[n]);
      sq[n] += static_cast<double>(t.level_sq[n]);
    }
  }
  out.mean_outdoor_users = static_cast<double>(outdoor) / count;
  out.mean_indoor_users = static_cast<double>(indoor) / count;
  out.nominal_users = mean_users(model.geometry(), model.cell_radius_km());
  out.level_mean.resize(levels);
  out.level_variance.resize(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    out.level_mean[n] = sum[n] / count;
    out.level_variance[n] = (sq[n] - sum[n] * sum[n] / count) / (count - 1.0);
  }
  return out;
}

}  // namespace

LoadSample load_of(const CellModel& model, const UserDrop& drop) {
  LoadSample s;
  s.per_level.assign(model.levels(), 0);
  for (const User& u : drop.users) {
    const DemandProfile& profile =
        u.environment == Environment::outdoor ? model.outdoor_profile() : model.indoor_profile();
    // A draw of exactly 0 belongs to the innermost ring.
    const double x = std::max(u.distance_km, std::numeric_limits<double>::min());
    const int level = profile.level_at(x);
    if (u.environment == Environment::outdoor) {
      ++s.outdoor_users;
    } else {
      ++s.indoor_users;
    }
    if (level == 0) continue;  // outside the evaluated region
    s.gamma += level;
    ++s.per_level[static_cast<std::size_t>(level - 1)];
  }
  return s;
}

LoadSample simulate_once(const CellModel& model, Rng& rng) {
  const RoadRealization road = model.sample_roads(rng);
  return load_of(model, draw_users(model, road, rng));
}

LoadSample simulate_given_roads(const CellModel& model, const RoadRealization& road, Rng& rng) {
  return load_of(model, draw_users(model, road, rng));
}

std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

EmpiricalCurve empirical_ccdf(const CellModel& model, std::size_t m_max,
                              std::size_t replications, std::size_t threads) {
  return run_replications(model, m_max, replications, threads,
                          [&](Rng& rng) { return simulate_once(model, rng); });
}

EmpiricalCurve empirical_ccdf(const Scenario& scenario, std::size_t m_max,
                              std::size_t replications, std::size_t threads) {
  return empirical_ccdf(CellModel(scenario), m_max, replications, threads);
}

EmpiricalCurve empirical_conditional_ccdf(const CellModel& model, const RoadRealization& road,
                                          std::size_t m_max, std::size_t replications,
                                          std::size_t threads) {
  return run_replications(model, m_max, replications, threads,
                          [&](Rng& rng) { return simulate_given_roads(model, road, rng); });
}

}  // namespace prbdim
