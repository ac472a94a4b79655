#pragma once

#include <complex>
#include <cstddef>

// Hot elementwise kernels with a scalar reference path and vector variants
// picked once at startup. Setting MZK_SIMD=scalar in the environment forces
// the reference path.
namespace mzk::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();
// Throws ConfigError if the host cannot run `isa`.
void force_isa(Isa isa);

// a[i] *= m[i]
void mul(cplx* a, const cplx* m, std::size_t n);
// a[i] *= w[i]
void scale(cplx* a, const double* w, std::size_t n);
// y[i] += alpha * x[i]
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
// a[i] = (Re a[i])^3
void cube_real(cplx* a, std::size_t n);
// sum of w[i] * |a[i]|^2
double weighted_norm2(const cplx* a, const double* w, std::size_t n);

struct KernelTable {
  void (*mul)(cplx*, const cplx*, std::size_t);
  void (*scale)(cplx*, const double*, std::size_t);
  void (*axpy)(cplx*, cplx, const cplx*, std::size_t);
  void (*cube_real)(cplx*, std::size_t);
  double (*weighted_norm2)(const cplx*, const double*, std::size_t);
};

// Per-ISA tables, exposed for equivalence testing. Unsupported ISAs have a
// null table pointer.
const KernelTable* table_for(Isa isa);

namespace scalar {
extern const KernelTable table;
}
namespace avx2 {
extern const KernelTable* const table;
}
namespace neon {
extern const KernelTable* const table;
}

}  // namespace mzk::simd
