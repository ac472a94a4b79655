#include "mzk/simd.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

#define MZK_AVX2 __attribute__((target("avx2")))

namespace mzk::simd::avx2 {
namespace {

// Two complex values per register: [re0, im0, re1, im1].
MZK_AVX2 inline __m256d cmul(__m256d a, __m256d m) {
  const __m256d mr = _mm256_movedup_pd(m);
  const __m256d mi = _mm256_permute_pd(m, 0xF);
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, mr), _mm256_mul_pd(a_swap, mi));
}

MZK_AVX2 void mul(cplx* a, const cplx* m, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  const double* pm = reinterpret_cast<const double*>(m);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vm = _mm256_loadu_pd(pm + 2 * i);
    _mm256_storeu_pd(pa + 2 * i, cmul(va, vm));
  }
  if (i < n) scalar::table.mul(a + i, m + i, n - i);
}

MZK_AVX2 void scale(cplx* a, const double* w, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vw = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), vw));
  }
  if (i < n) scalar::table.scale(a + i, w + i, n - i);
}

MZK_AVX2 void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  const __m256d va = _mm256_set_pd(alpha.imag(), alpha.real(), alpha.imag(), alpha.real());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul(vx, va)));
  }
  if (i < n) scalar::table.axpy(y + i, alpha, x + i, n - i);
}

MZK_AVX2 void cube_real(cplx* a, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    const __m256d cube = _mm256_mul_pd(_mm256_mul_pd(v, v), v);
    _mm256_storeu_pd(pa + 2 * i, _mm256_blend_pd(cube, zero, 0xA));
  }
  if (i < n) scalar::table.cube_real(a + i, n - i);
}

MZK_AVX2 double weighted_norm2(const cplx* a, const double* w, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vw = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vw, _mm256_mul_pd(v, v)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  if (i < n) total += scalar::table.weighted_norm2(a + i, w + i, n - i);
  return total;
}

const KernelTable kTable{mul, scale, axpy, cube_real, weighted_norm2};

}  // namespace

const KernelTable* const table = &kTable;

}  // namespace mzk::simd::avx2

#else

namespace mzk::simd::avx2 {
const KernelTable* const table = nullptr;
}

#endif
