// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "prbdim/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace prbdim::kernels::avx2 {
namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4),
                           _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double chord_length_sum(std::span<const double> offsets, double inner, double outer) {
  const std::size_t n = offsets.size();
  const __m256d inner2 = _mm256_set1_pd(inner * inner);
  const __m256d outer2 = _mm256_set1_pd(outer * outer);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(offsets.data() + i);
    const __m256d r2 = _mm256_mul_pd(r, r);
    const __m256d out = _mm256_sqrt_pd(_mm256_max_pd(_mm256_sub_pd(outer2, r2), zero));
    const __m256d in = _mm256_sqrt_pd(_mm256_max_pd(_mm256_sub_pd(inner2, r2), zero));
    acc = _mm256_add_pd(acc, _mm256_sub_pd(out, in));
  }
  double total = horizontal_sum(acc);
  const double in2 = inner * inner;
  const double out2 = outer * outer;
  for (; i < n; ++i) {
    const double r2 = offsets[i] * offsets[i];
    total += std::sqrt(std::max(out2 - r2, 0.0)) - std::sqrt(std::max(in2 - r2, 0.0));
  }
  return 2.0 * total;
}

void trig_sums(std::span<const double> weights, std::span<const double> cos_t,
               std::span<const double> sin_t, std::span<double> cos_sum,
               std::span<double> sin_sum) {
  const std::size_t n = cos_t.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c1 = _mm256_loadu_pd(cos_t.data() + i);
    const __m256d s1 = _mm256_loadu_pd(sin_t.data() + i);
    __m256d cn = c1;
    __m256d sn = s1;
    __m256d pc = _mm256_setzero_pd();
    __m256d ps = _mm256_setzero_pd();
    for (double w : weights) {
      const __m256d wv = _mm256_set1_pd(w);
      pc = _mm256_fmadd_pd(wv, cn, pc);
      ps = _mm256_fmadd_pd(wv, sn, ps);
      const __m256d next_c = _mm256_fmsub_pd(cn, c1, _mm256_mul_pd(sn, s1));
      sn = _mm256_fmadd_pd(sn, c1, _mm256_mul_pd(cn, s1));
      cn = next_c;
    }
    _mm256_storeu_pd(cos_sum.data() + i, pc);
    _mm256_storeu_pd(sin_sum.data() + i, ps);
  }
  if (i < n) {
    scalar::trig_sums(weights, cos_t.subspan(i), sin_t.subspan(i), cos_sum.subspan(i),
                      sin_sum.subspan(i));
  }
}

void accumulate_shifted(std::span<const double> x, std::span<const double> ref,
                        std::span<double> sum, std::span<double> sumsq) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(ref.data() + i));
    _mm256_storeu_pd(sum.data() + i, _mm256_add_pd(_mm256_loadu_pd(sum.data() + i), d));
    _mm256_storeu_pd(sumsq.data() + i,
                     _mm256_fmadd_pd(d, d, _mm256_loadu_pd(sumsq.data() + i)));
  }
  for (; i < n; ++i) {
    const double d = x[i] - ref[i];
    sum[i] += d;
    sumsq[i] += d * d;
  }
}

}  // namespace prbdim::kernels::avx2
