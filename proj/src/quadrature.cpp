#include "prbdim/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "prbdim/error.hpp"

namespace prbdim::quadrature {

Rule gauss_legendre(std::size_t order) {
  if (order == 0) throw DomainError("gauss_legendre: order must be positive");
  Rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const std::size_t half = (order + 1) / 2;
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        const double kd = static_cast<double>(k);
        p0 = ((2.0 * kd - 1.0) * z * p1 - (kd - 1.0) * p2) / kd;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

namespace {

class PanelIntegrator {
 public:
  PanelIntegrator(const BatchIntegrand& f, const Options& opts, double total_width)
      : f_(f), opts_(opts), rule_(gauss_legendre(opts.order)), total_width_(total_width),
        x_(opts.order), y_(opts.order) {}

  double apply(double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) x_[i] = mid + half * rule_.nodes[i];
    f_(x_, y_);
    evaluations_ += x_.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < y_.size(); ++i) acc += rule_.weights[i] * y_[i];
    return half * acc;
  }

  // Integral over [a, b] given its one-panel estimate.
  double refine(double a, double b, double whole, std::size_t depth) {
    const double mid = 0.5 * (a + b);
    const double left = apply(a, mid);
    const double right = apply(mid, b);
    const double split = left + right;
    const double diff = std::abs(split - whole);
    const double budget = opts_.abs_tolerance * (b - a) / total_width_;
    if (diff <= budget || !std::isfinite(diff)) {
      error_ += diff;
      if (!std::isfinite(diff)) converged_ = false;
      return split;
    }
    if (depth >= opts_.max_depth) {
      error_ += diff;
      converged_ = false;
      return split;
    }
    return refine(a, mid, left, depth + 1) + refine(mid, b, right, depth + 1);
  }

  std::size_t evaluations() const noexcept { return evaluations_; }
  double error() const noexcept { return error_; }
  bool converged() const noexcept { return converged_; }

 private:
  const BatchIntegrand& f_;
  const Options& opts_;
  Rule rule_;
  double total_width_;
  std::vector<double> x_;
  std::vector<double> y_;
  std::size_t evaluations_ = 0;
  double error_ = 0.0;
  bool converged_ = true;
};

}  // namespace

Result integrate(const BatchIntegrand& f, double a, double b, const Options& opts) {
  if (!(b > a)) throw DomainError("integrate: need a < b");
  if (opts.initial_panels == 0) throw DomainError("integrate: need at least one panel");
  PanelIntegrator panels(f, opts, b - a);
  const double width = (b - a) / static_cast<double>(opts.initial_panels);
  double total = 0.0;
  for (std::size_t k = 0; k < opts.initial_panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = k + 1 == opts.initial_panels ? b : lo + width;
    total += panels.refine(lo, hi, panels.apply(lo, hi), 0);
  }
  return {total, panels.error(), panels.evaluations(), panels.converged()};
}

}  // namespace prbdim::quadrature
