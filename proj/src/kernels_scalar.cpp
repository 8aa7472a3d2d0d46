#include "prbdim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace prbdim::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double chord_length_sum(std::span<const double> offsets, double inner, double outer) {
  const double inner2 = inner * inner;
  const double outer2 = outer * outer;
  double acc = 0.0;
  for (double r : offsets) {
    const double r2 = r * r;
    acc += std::sqrt(std::max(outer2 - r2, 0.0)) - std::sqrt(std::max(inner2 - r2, 0.0));
  }
  return 2.0 * acc;
}

void trig_sums(std::span<const double> weights, std::span<const double> cos_t,
               std::span<const double> sin_t, std::span<double> cos_sum,
               std::span<double> sin_sum) {
  for (std::size_t i = 0; i < cos_t.size(); ++i) {
    const double c1 = cos_t[i];
    const double s1 = sin_t[i];
    double cn = c1;
    double sn = s1;
    double pc = 0.0;
    double ps = 0.0;
    for (double w : weights) {
      pc += w * cn;
      ps += w * sn;
      const double next_c = cn * c1 - sn * s1;
      sn = sn * c1 + cn * s1;
      cn = next_c;
    }
    cos_sum[i] = pc;
    sin_sum[i] = ps;
  }
}

void accumulate_shifted(std::span<const double> x, std::span<const double> ref,
                        std::span<double> sum, std::span<double> sumsq) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - ref[i];
    sum[i] += d;
    sumsq[i] += d * d;
  }
}

}  // namespace prbdim::kernels::scalar
