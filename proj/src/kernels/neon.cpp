// NEON variants (aarch64, where Advanced SIMD with float64 lanes is baseline).

#include <arm_neon.h>

#include "fockloss/kernels/kernels.hpp"

namespace fockloss::kernels::neon {

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const auto* yd = reinterpret_cast<const double*>(y);
  float64x2_t acc_same = vdupq_n_f64(0.0);   // xr*yr, xi*yi
  float64x2_t acc_cross = vdupq_n_f64(0.0);  // xr*yi, xi*yr
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    const float64x2_t yv = vld1q_f64(yd + 2 * i);
    acc_same = vfmaq_f64(acc_same, xv, yv);
    acc_cross = vfmaq_f64(acc_cross, xv, vextq_f64(yv, yv, 1));
  }
  const double re = vgetq_lane_f64(acc_same, 0) + vgetq_lane_f64(acc_same, 1);
  const double im = vgetq_lane_f64(acc_cross, 0) - vgetq_lane_f64(acc_cross, 1);
  return {re, im};
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace fockloss::kernels::neon
