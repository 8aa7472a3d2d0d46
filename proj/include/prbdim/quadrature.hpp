#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace prbdim::quadrature {

// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes by Newton iteration on P_n; accurate to a few ulps for n <= 200.
Rule gauss_legendre(std::size_t order);

// Integrand evaluated on a batch of abscissae: out[i] = f(x[i]).
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> out)>;

struct Options {
  std::size_t initial_panels = 64;
  std::size_t order = 10;
  double abs_tolerance = 1e-9;
  std::size_t max_depth = 20;
};

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

// Adaptive composite Gauss-Legendre on [a, b]. Each panel is accepted when
// the one-panel rule and the two-half-panel rule agree to the panel's share
// of the absolute tolerance; otherwise it is bisected.
Result integrate(const BatchIntegrand& f, double a, double b, const Options& opts);

}  // namespace prbdim::quadrature
