#include "kernels_detail.hpp"
#include "seifert/kernels.hpp"

#include <cmath>

namespace seifert::kernels {

namespace {

void poly_sincos(double x, double& s, double& c) {
  const double x2 = x * x;
  double ps = detail::kSin[7];
  for (int k = 6; k >= 0; --k) ps = ps * x2 + detail::kSin[k];
  double pc = detail::kCos[8];
  for (int k = 7; k >= 0; --k) pc = pc * x2 + detail::kCos[k];
  s = x * ps;
  c = pc;
}

}  // namespace

void sincos_turns(std::int64_t num, std::int64_t den, double& s, double& c) {
  const auto red = detail::reduce(num, den);
  double ps, pc;
  poly_sincos(red.x, ps, pc);
  switch (red.quadrant) {
    case 0: s = ps; c = pc; break;
    case 1: s = pc; c = -ps; break;
    case 2: s = -ps; c = -pc; break;
    default: s = -pc; c = ps; break;
  }
}

namespace scalar {

std::complex<double> weighted_phase_sum(const std::int64_t* num, const double* weight, std::size_t n,
                                        std::int64_t den) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double s, c;
    sincos_turns(num[k], den, s, c);
    re += weight[k] * c;
    im += weight[k] * s;
  }
  return {re, im};
}

double compensated_sum(const double* x, std::size_t n) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = sum + x[k];
    if (std::abs(sum) >= std::abs(x[k]))
      comp += (sum - t) + x[k];
    else
      comp += (x[k] - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace scalar
}  // namespace seifert::kernels
