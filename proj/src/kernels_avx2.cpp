#include "kernels_detail.hpp"
#include "seifert/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace seifert::kernels::avx2 {

namespace {

inline void poly_sincos(__m256d x, __m256d& s, __m256d& c) {
  const __m256d x2 = _mm256_mul_pd(x, x);
  __m256d ps = _mm256_set1_pd(detail::kSin[7]);
  for (int k = 6; k >= 0; --k) ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(detail::kSin[k]));
  __m256d pc = _mm256_set1_pd(detail::kCos[8]);
  for (int k = 7; k >= 0; --k) pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(detail::kCos[k]));
  s = _mm256_mul_pd(x, ps);
  c = pc;
}

inline double hsum(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

std::complex<double> weighted_phase_sum(const std::int64_t* num, const double* weight, std::size_t n,
                                        std::int64_t den) {
  __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    alignas(32) double xs[4];
    alignas(32) std::int64_t quad[4];
    for (int j = 0; j < 4; ++j) {
      const auto red = detail::reduce(num[k + j], den);
      xs[j] = red.x;
      quad[j] = red.quadrant;
    }
    __m256d s, c;
    poly_sincos(_mm256_load_pd(xs), s, c);
    const __m256i q = _mm256_load_si256(reinterpret_cast<const __m256i*>(quad));
    // odd quadrants swap sine and cosine; quadrants 1, 2 negate cos, 2, 3 negate sin
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256d odd = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
    const __m256d rs = _mm256_blendv_pd(s, c, odd);
    const __m256d rc = _mm256_blendv_pd(c, s, odd);
    const __m256i q1 = _mm256_add_epi64(q, one);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d neg_s = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, two), two));
    const __m256d neg_c = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q1, two), two));
    const __m256d fs = _mm256_xor_pd(rs, _mm256_and_pd(neg_s, sign_mask));
    const __m256d fc = _mm256_xor_pd(rc, _mm256_and_pd(neg_c, sign_mask));
    const __m256d w = _mm256_loadu_pd(weight + k);
    re = _mm256_fmadd_pd(w, fc, re);
    im = _mm256_fmadd_pd(w, fs, im);
  }
  double r = hsum(re), i = hsum(im);
  for (; k < n; ++k) {
    double s, c;
    sincos_turns(num[k], den, s, c);
    r += weight[k] * c;
    i += weight[k] * s;
  }
  return {r, i};
}

double compensated_sum(const double* x, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d sum = _mm256_setzero_pd(), comp = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_loadu_pd(x + k);
    const __m256d t = _mm256_add_pd(sum, v);
    const __m256d big = _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(v, abs_mask), _CMP_GE_OQ);
    const __m256d a = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
    const __m256d b = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(b, a, big));
    sum = t;
  }
  alignas(32) double lanes[8];
  _mm256_store_pd(lanes, sum);
  _mm256_store_pd(lanes + 4, comp);
  double s = 0.0, c = 0.0;
  auto add = [&](double v) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  };
  for (int j = 0; j < 8; ++j) add(lanes[j]);
  for (; k < n; ++k) add(x[k]);
  return s + c;
}

}  // namespace seifert::kernels::avx2
