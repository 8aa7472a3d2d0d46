#include "prbdim/compound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "prbdim/bell.hpp"
#include "prbdim/error.hpp"
#include "prbdim/kernels.hpp"
#include "prbdim/quadrature.hpp"

namespace prbdim {
namespace {

constexpr double kRescaleAbove = 1e250;

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double CompoundSpec::total_weight() const noexcept {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void CompoundSpec::validate() const {
  if (weights.empty()) throw DomainError("compound spec: need at least one level");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("compound spec: weights must be finite and >= 0");
    }
  }
}

PmfTable pmf(const CompoundSpec& spec, std::int64_t max_index) {
  if (max_index < 0) throw DomainError("pmf: max index must be >= 0");
  spec.validate();
  const std::size_t levels = spec.levels();
  const auto count = static_cast<std::size_t>(max_index) + 1;

  // coef[i] = (N - i) w_{N-i}: reversed so each step is one contiguous dot.
  std::vector<double> coef(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    const std::size_t n = levels - i;
    coef[i] = static_cast<double>(n) * spec.weights[n - 1];
  }

  // Scaled values: p_k = value[k] * exp(log_scale[k] - total).
  std::vector<double> value(count, 0.0);
  std::vector<double> log_scale(count, 0.0);
  value[0] = 1.0;
  double scale = 0.0;
  for (std::size_t k = 1; k < count; ++k) {
    const std::size_t m = std::min(k, levels);
    const double s = kernels::dot(std::span<const double>(coef).subspan(levels - m, m),
                                  std::span<const double>(value).subspan(k - m, m));
    value[k] = s / static_cast<double>(k);
    log_scale[k] = scale;
    if (value[k] > kRescaleAbove) {
      scale += std::log(kRescaleAbove);
      const std::size_t first = k + 1 >= levels ? k + 1 - levels : 0;
      for (std::size_t j = first; j <= k; ++j) {
        value[j] /= kRescaleAbove;
        log_scale[j] = scale;
      }
    }
  }

  const double total = spec.total_weight();
  PmfTable table;
  table.probabilities.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    table.probabilities[k] =
        value[k] > 0.0 ? std::exp(std::log(value[k]) + log_scale[k] - total) : 0.0;
  }
  const double covered = std::accumulate(table.probabilities.begin(), table.probabilities.end(), 0.0);
  table.tail = clamp_probability(1.0 - covered);
  return table;
}

std::size_t tail_cutoff(const CompoundSpec& spec, std::size_t cap) {
  const double n = static_cast<double>(std::max<std::size_t>(spec.levels(), 1));
  double exponent = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    exponent += spec.weights[i] * std::expm1(static_cast<double>(i + 1) / n);
  }
  const double k = std::ceil(n * (exponent + 12.0 * std::numbers::ln10));
  if (!(k < static_cast<double>(cap))) return cap;
  return static_cast<std::size_t>(k);
}

std::vector<double> ccdf_curve(const CompoundSpec& spec, std::size_t m_max) {
  std::vector<double> curve(m_max + 1, 1.0);
  if (m_max == 0) return curve;
  const PmfTable table = pmf(spec, static_cast<std::int64_t>(m_max) - 1);
  double cumulative = 0.0;
  for (std::size_t m = 1; m <= m_max; ++m) {
    cumulative += table.probabilities[m - 1];
    curve[m] = clamp_probability(1.0 - cumulative);
  }
  return curve;
}

double ccdf_bell(const CompoundSpec& spec, std::int64_t m) {
  if (m < 0) throw DomainError("ccdf_bell: threshold must be >= 0");
  spec.validate();
  if (m == 0) return 1.0;
  return ccdf_curve(spec, static_cast<std::size_t>(m)).back();
}

double ccdf_bell_literal(const CompoundSpec& spec, std::int64_t m) {
  if (m < 0) throw DomainError("ccdf_bell_literal: threshold must be >= 0");
  spec.validate();
  if (m == 0) return 1.0;
  const auto order = static_cast<std::size_t>(m - 1);
  std::vector<double> x(order, 0.0);
  double factorial = 1.0;
  for (std::size_t j = 1; j <= order; ++j) {
    factorial *= static_cast<double>(j);
    if (j <= spec.levels()) x[j - 1] = spec.weights[j - 1] * factorial;
  }
  const std::vector<double> b = bell::complete_sequence<double>(x);
  double sum = 0.0;
  double k_factorial = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) k_factorial *= static_cast<double>(k);
    sum += b[k] / k_factorial;
  }
  return clamp_probability(1.0 - std::exp(-spec.total_weight()) * sum);
}

double dirichlet_ratio(std::int64_t m, double theta) noexcept {
  const double half = 0.5 * theta;
  if (std::abs(half) < 1e-12) return static_cast<double>(m);
  return std::sin(static_cast<double>(m) * half) / std::sin(half);
}

double ccdf_integrand(const CompoundSpec& spec, std::int64_t m, double theta) {
  double p = 0.0;
  double q = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    p += spec.weights[i] * std::cos(n * theta);
    q += spec.weights[i] * std::sin(n * theta);
  }
  const double md = static_cast<double>(m);
  return std::exp(p - spec.total_weight()) * dirichlet_ratio(m, theta) *
         std::cos(0.5 * (md - 1.0) * theta - q);
}

double ccdf_integral(const CompoundSpec& spec, std::int64_t m, const IntegralOptions& opts) {
  if (m < 1) throw DomainError("ccdf_integral: threshold must be >= 1");
  spec.validate();
  const double total = spec.total_weight();
  const double md = static_cast<double>(m);

  std::vector<double> cos_t;
  std::vector<double> sin_t;
  std::vector<double> p;
  std::vector<double> q;
  quadrature::BatchIntegrand f = [&](std::span<const double> theta, std::span<double> out) {
    const std::size_t n = theta.size();
    cos_t.resize(n);
    sin_t.resize(n);
    p.resize(n);
    q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cos_t[i] = std::cos(theta[i]);
      sin_t[i] = std::sin(theta[i]);
    }
    kernels::trig_sums(spec.weights, cos_t, sin_t, p, q);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = std::exp(p[i] - total) * dirichlet_ratio(m, theta[i]) *
               std::cos(0.5 * (md - 1.0) * theta[i] - q[i]);
    }
  };

  quadrature::Options qopts;
  qopts.initial_panels = std::max<std::size_t>(64, 4 * (static_cast<std::size_t>(m) + spec.levels()));
  qopts.abs_tolerance = opts.abs_tolerance;
  const quadrature::Result r = quadrature::integrate(f, 0.0, std::numbers::pi, qopts);
  const double estimate = 1.0 - r.value / std::numbers::pi;
  if (!r.converged) {
    throw AccuracyError("ccdf_integral: quadrature did not converge for M=" + std::to_string(m),
                        estimate, r.error_estimate / std::numbers::pi);
  }
  if (estimate < -opts.clamp_slack || estimate > 1.0 + opts.clamp_slack) {
    throw AccuracyError("ccdf_integral: estimate outside [0, 1] beyond quadrature noise",
                        estimate, r.error_estimate / std::numbers::pi);
  }
  return clamp_probability(estimate);
}

double mean(const CompoundSpec& spec) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    acc += static_cast<double>(i + 1) * spec.weights[i];
  }
  return acc;
}

double variance(const CompoundSpec& spec) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    acc += n * n * spec.weights[i];
  }
  return acc;
}

}  // namespace prbdim
