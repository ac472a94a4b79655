#include "mzk/simd.hpp"

namespace mzk::simd::scalar {
namespace {

// Complex products are spelled out so every ISA performs the same IEEE
// operations in the same order.
void mul(cplx* a, const cplx* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double mr = m[i].real(), mi = m[i].imag();
    a[i] = cplx(ar * mr - ai * mi, ai * mr + ar * mi);
  }
}

void scale(cplx* a, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] = cplx(a[i].real() * w[i], a[i].imag() * w[i]);
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const double pr = alpha.real(), pi = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + (xr * pr - xi * pi), y[i].imag() + (xi * pr + xr * pi));
  }
}

void cube_real(cplx* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = a[i].real();
    a[i] = cplx(r * r * r, 0.0);
  }
}

double weighted_norm2(const cplx* a, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
  return acc;
}

}  // namespace

const KernelTable table{mul, scale, axpy, cube_real, weighted_norm2};

}  // namespace mzk::simd::scalar
