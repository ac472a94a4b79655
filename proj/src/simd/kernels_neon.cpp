#include "mzk/simd.hpp"

#if defined(__ARM_NEON) && defined(__aarch64__)
#include <arm_neon.h>

namespace mzk::simd::neon {
namespace {

// One complex value per register: [re, im].
inline float64x2_t cmul(float64x2_t a, float64x2_t m) {
  const float64x2_t mr = vdupq_laneq_f64(m, 0);
  const float64x2_t mi = vdupq_laneq_f64(m, 1);
  const float64x2_t a_swap = vextq_f64(a, a, 1);
  const float64x2_t t1 = vmulq_f64(a, mr);
  const float64x2_t t2 = vmulq_f64(a_swap, mi);
  const float64x2_t sign = {-1.0, 1.0};
  return vaddq_f64(t1, vmulq_f64(t2, sign));
}

void mul(cplx* a, const cplx* m, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  const double* pm = reinterpret_cast<const double*>(m);
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(pa + 2 * i, cmul(vld1q_f64(pa + 2 * i), vld1q_f64(pm + 2 * i)));
}

void scale(cplx* a, const double* w, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(pa + 2 * i, vmulq_n_f64(vld1q_f64(pa + 2 * i), w[i]));
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  const float64x2_t va = {alpha.real(), alpha.imag()};
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(py + 2 * i, vaddq_f64(vld1q_f64(py + 2 * i), cmul(vld1q_f64(px + 2 * i), va)));
}

void cube_real(cplx* a, std::size_t n) { scalar::table.cube_real(a, n); }

double weighted_norm2(const cplx* a, const double* w, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(pa + 2 * i);
    acc = vaddq_f64(acc, vmulq_n_f64(vmulq_f64(v, v), w[i]));
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

const KernelTable kTable{mul, scale, axpy, cube_real, weighted_norm2};

}  // namespace

const KernelTable* const table = &kTable;

}  // namespace mzk::simd::neon

#else

namespace mzk::simd::neon {
const KernelTable* const table = nullptr;
}

#endif
