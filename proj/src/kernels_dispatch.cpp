#include <atomic>
#include <cstdlib>
#include <string_view>

#include "prbdim/error.hpp"
#include "prbdim/kernels.hpp"

namespace prbdim::kernels {
namespace {

constexpr int kAuto = -1;
std::atomic<int> forced{kAuto};

bool cpu_has_avx2() noexcept {
#if defined(PRBDIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return has;
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (const char* env = std::getenv("PRBDIM_ISA")) {
    if (std::string_view(env) == "scalar") return Isa::scalar;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

Isa active_isa() noexcept {
  const int f = forced.load(std::memory_order_relaxed);
  if (f != kAuto) return static_cast<Isa>(f);
  static const Isa detected = detect();
  return detected;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("kernel variant '" + std::string(isa_name(isa)) +
                      "' is not available on this CPU/build");
  }
  forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() noexcept { forced.store(kAuto, std::memory_order_relaxed); }

#if defined(PRBDIM_HAVE_AVX2)
#define PRBDIM_DISPATCH(call) \
  (active_isa() == Isa::avx2 ? avx2::call : scalar::call)
#else
#define PRBDIM_DISPATCH(call) (scalar::call)
#endif

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot: length mismatch");
  return PRBDIM_DISPATCH(dot(a, b));
}

double chord_length_sum(std::span<const double> offsets, double inner, double outer) {
  return PRBDIM_DISPATCH(chord_length_sum(offsets, inner, outer));
}

void trig_sums(std::span<const double> weights, std::span<const double> cos_t,
               std::span<const double> sin_t, std::span<double> cos_sum,
               std::span<double> sin_sum) {
  if (sin_t.size() != cos_t.size() || cos_sum.size() != cos_t.size() ||
      sin_sum.size() != cos_t.size()) {
    throw DomainError("trig_sums: length mismatch");
  }
  PRBDIM_DISPATCH(trig_sums(weights, cos_t, sin_t, cos_sum, sin_sum));
}

void accumulate_shifted(std::span<const double> x, std::span<const double> ref,
                        std::span<double> sum, std::span<double> sumsq) {
  if (ref.size() != x.size() || sum.size() != x.size() || sumsq.size() != x.size()) {
    throw DomainError("accumulate_shifted: length mismatch");
  }
  PRBDIM_DISPATCH(accumulate_shifted(x, ref, sum, sumsq));
}

#undef PRBDIM_DISPATCH

}  // namespace prbdim::kernels
