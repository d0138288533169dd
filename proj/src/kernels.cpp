#include "seifert/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace seifert::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

struct Dispatch {
  std::string isa;
  PhaseSumFn phase;
  SumFn sum;
};

const Dispatch& dispatch() {
  static const Dispatch d = [] {
    const char* env = std::getenv("SEIFERT_VOLUMES_SIMD");
    const bool force_scalar = env && std::strcmp(env, "scalar") == 0;
    if (!force_scalar && avx2_supported())
      return Dispatch{"avx2", &avx2::weighted_phase_sum, &avx2::compensated_sum};
    return Dispatch{"scalar", &scalar::weighted_phase_sum, &scalar::compensated_sum};
  }();
  return d;
}

}  // namespace

const std::string& active_isa() { return dispatch().isa; }

std::complex<double> weighted_phase_sum(const std::int64_t* num, const double* weight, std::size_t n,
                                        std::int64_t den) {
  return dispatch().phase(num, weight, n, den);
}

double compensated_sum(const double* x, std::size_t n) { return dispatch().sum(x, n); }

}  // namespace seifert::kernels
