#pragma once

// Data-parallel inner loops shared by the analytic and Monte-Carlo paths.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2/FMA variant. The public entry points dispatch at runtime to the
// best variant the CPU supports. Set PRBDIM_ISA=scalar in the environment
// (or call force_isa) to pin the reference path.
//
// Variants agree to rounding only: the vector paths reassociate sums and use
// fused multiply-add.

#include <span>
#include <string_view>

namespace prbdim::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

// Variant currently used by the dispatching entry points.
Isa active_isa() noexcept;

// Pins a variant. Throws DomainError if the CPU or build lacks it.
void force_isa(Isa isa);

// Returns to automatic selection (environment override, then CPU detection).
void reset_isa() noexcept;

// sum_i a[i] * b[i]; spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

// Total length of the chords of lines at perpendicular distances `offsets`
// that fall in the annulus inner < |p| <= outer:
//   sum_j 2 * (sqrt((outer^2 - r_j^2)_+) - sqrt((inner^2 - r_j^2)_+)).
double chord_length_sum(std::span<const double> offsets, double inner, double outer);

// For every angle t_i (given through cos t_i and sin t_i):
//   cos_sum[i] = sum_n w[n-1] cos(n t_i),  sin_sum[i] = sum_n w[n-1] sin(n t_i).
// Harmonics are generated by the angle-addition recurrence.
void trig_sums(std::span<const double> weights, std::span<const double> cos_t,
               std::span<const double> sin_t, std::span<double> cos_sum,
               std::span<double> sin_sum);

// Element-wise sum[i] += x[i] - ref[i], sumsq[i] += (x[i] - ref[i])^2.
void accumulate_shifted(std::span<const double> x, std::span<const double> ref,
                        std::span<double> sum, std::span<double> sumsq);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double chord_length_sum(std::span<const double> offsets, double inner, double outer);
void trig_sums(std::span<const double> weights, std::span<const double> cos_t,
               std::span<const double> sin_t, std::span<double> cos_sum,
               std::span<double> sin_sum);
void accumulate_shifted(std::span<const double> x, std::span<const double> ref,
                        std::span<double> sum, std::span<double> sumsq);
}  // namespace scalar

#if defined(PRBDIM_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double chord_length_sum(std::span<const double> offsets, double inner, double outer);
void trig_sums(std::span<const double> weights, std::span<const double> cos_t,
               std::span<const double> sin_t, std::span<double> cos_sum,
               std::span<double> sin_sum);
void accumulate_shifted(std::span<const double> x, std::span<const double> ref,
                        std::span<double> sum, std::span<double> sumsq);
}  // namespace avx2
#endif

}  // namespace prbdim::kernels
