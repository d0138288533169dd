#pragma once

#include <cstdint>

namespace seifert::kernels::detail {

// Taylor coefficients on |x| <= pi/4, in powers of x^2.
inline constexpr double kSin[] = {1.0,
                                  -1.0 / 6.0,
                                  1.0 / 120.0,
                                  -1.0 / 5040.0,
                                  1.0 / 362880.0,
                                  -1.0 / 39916800.0,
                                  1.0 / 6227020800.0,
                                  -1.0 / 1307674368000.0};
inline constexpr double kCos[] = {1.0,
                                  -1.0 / 2.0,
                                  1.0 / 24.0,
                                  -1.0 / 720.0,
                                  1.0 / 40320.0,
                                  -1.0 / 3628800.0,
                                  1.0 / 479001600.0,
                                  -1.0 / 87178291200.0,
                                  1.0 / 20922789888000.0};
inline constexpr double kHalfPi = 1.57079632679489661923;

struct Reduced {
  double x;      // angle in [-pi/4, pi/4]
  int quadrant;  // 2 pi num / den = x + quadrant pi / 2 (mod 2 pi)
};

inline Reduced reduce(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  const std::int64_t q = (8 * r + den) / (2 * den);
  const std::int64_t rest = 4 * r - q * den;
  return {kHalfPi * static_cast<double>(rest) / static_cast<double>(den), static_cast<int>(q & 3)};
}

}  // namespace seifert::kernels::detail
