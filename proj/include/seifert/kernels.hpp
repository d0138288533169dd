#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>

namespace seifert::kernels {

/// sum_k weight[k] exp(2 pi i num[k] / den). Phases are reduced exactly in
/// integer arithmetic before the polynomial sine/cosine; den > 0.
using PhaseSumFn = std::complex<double> (*)(const std::int64_t* num, const double* weight, std::size_t n,
                                            std::int64_t den);
/// Neumaier-compensated sum of x[0..n).
using SumFn = double (*)(const double* x, std::size_t n);

namespace scalar {
std::complex<double> weighted_phase_sum(const std::int64_t* num, const double* weight, std::size_t n,
                                        std::int64_t den);
double compensated_sum(const double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
/// Only callable when avx2_supported() is true.
std::complex<double> weighted_phase_sum(const std::int64_t* num, const double* weight, std::size_t n,
                                        std::int64_t den);
double compensated_sum(const double* x, std::size_t n);
}  // namespace avx2

bool avx2_supported();

/// "avx2" or "scalar". SEIFERT_VOLUMES_SIMD=scalar forces the reference path.
const std::string& active_isa();

std::complex<double> weighted_phase_sum(const std::int64_t* num, const double* weight, std::size_t n,
                                        std::int64_t den);
double compensated_sum(const double* x, std::size_t n);

/// sin and cos of 2 pi num / den with the same reduction and polynomials.
void sincos_turns(std::int64_t num, std::int64_t den, double& s, double& c);

}  // namespace seifert::kernels
