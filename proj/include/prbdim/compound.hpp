#pragma once

// Law of Lambda = sum_{n=1}^{N} n V_n with independent V_n ~ Poisson(w_n).
//
// P(Lambda = k) = H B_k(x_1..x_k) / k! with H = exp(-sum w) and
// x_j = w_j j!; expanding the generating function gives the weighted
// convolution recursion
//   k p_k = sum_{j=1}^{min(k,N)} j w_j p_{k-j},
// which is what pmf() runs. ccdf_integral() inverts the z-transform on the
// unit circle instead, so the two routes share no arithmetic.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace prbdim {

struct CompoundSpec {
  std::vector<double> weights;  // w_1..w_N

  CompoundSpec() = default;
  explicit CompoundSpec(std::vector<double> w) : weights(std::move(w)) {}

  std::size_t levels() const noexcept { return weights.size(); }
  double total_weight() const noexcept;
  // Throws DomainError on negative/non-finite weights or N = 0.
  void validate() const;
};

struct PmfTable {
  std::vector<double> probabilities;  // p_0..p_K
  double tail = 0.0;                  // P(Lambda > K)
};

// Exact PMF up to index max_index (the recursion above, with periodic
// rescaling so that large total weights do not underflow p_0).
PmfTable pmf(const CompoundSpec& spec, std::int64_t max_index);

// Smallest K whose Chernoff bound exp(sum w_n (e^{n/N} - 1) - K/N) falls
// below 1e-12, but no larger than cap.
std::size_t tail_cutoff(const CompoundSpec& spec, std::size_t cap);

// P(Lambda >= M) for M = 0..m_max.
std::vector<double> ccdf_curve(const CompoundSpec& spec, std::size_t m_max);

// P(Lambda >= M) through the PMF.
double ccdf_bell(const CompoundSpec& spec, std::int64_t m);

// P(Lambda >= M) = 1 - H sum_{k<M} B_k(x)/k! evaluated literally with the
// floating-point Bell recurrence. Valid for M <= 26 (RangeError beyond).
double ccdf_bell_literal(const CompoundSpec& spec, std::int64_t m);

struct IntegralOptions {
  double abs_tolerance = 1e-9;
  // Residual quadrature noise tolerated outside [0, 1] before clamping.
  double clamp_slack = 1e-8;
};

// P(Lambda >= M) from the Fourier-type integral on [0, pi]. Throws
// AccuracyError if the adaptive quadrature cannot meet the tolerance.
double ccdf_integral(const CompoundSpec& spec, std::int64_t m, const IntegralOptions& opts = {});

// Integrand of ccdf_integral at angle theta, with exp(-sum w) folded in.
double ccdf_integrand(const CompoundSpec& spec, std::int64_t m, double theta);

// sin(M t / 2) / sin(t / 2) with its limit M at t -> 0.
double dirichlet_ratio(std::int64_t m, double theta) noexcept;

double mean(const CompoundSpec& spec) noexcept;
double variance(const CompoundSpec& spec) noexcept;

}  // namespace prbdim
