#include <atomic>
#include <cstdlib>
#include <cstring>

#include "mzk/errors.hpp"
#include "mzk/simd.hpp"

namespace mzk::simd {
namespace {

bool host_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2::table != nullptr && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  const char* env = std::getenv("MZK_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  if (host_has_avx2()) return Isa::avx2;
  if (neon::table != nullptr) return Isa::neon;
  return Isa::scalar;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> t{table_for(detect())};
  return t;
}

std::atomic<Isa>& active_tag() {
  static std::atomic<Isa> tag{detect()};
  return tag;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    default: return "scalar";
  }
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return host_has_avx2();
    case Isa::neon: return neon::table != nullptr;
  }
  return false;
}

const KernelTable* table_for(Isa isa) {
  if (!isa_supported(isa)) return nullptr;
  switch (isa) {
    case Isa::avx2: return avx2::table;
    case Isa::neon: return neon::table;
    default: return &scalar::table;
  }
}

Isa active_isa() { return active_tag().load(); }

void force_isa(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (!t) throw ConfigError(std::string("SIMD variant not available on this host: ") + isa_name(isa));
  active_table().store(t);
  active_tag().store(isa);
}

void mul(cplx* a, const cplx* m, std::size_t n) { active_table().load()->mul(a, m, n); }
void scale(cplx* a, const double* w, std::size_t n) { active_table().load()->scale(a, w, n); }
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  active_table().load()->axpy(y, alpha, x, n);
}
void cube_real(cplx* a, std::size_t n) { active_table().load()->cube_real(a, n); }
double weighted_norm2(const cplx* a, const double* w, std::size_t n) {
  return active_table().load()->weighted_norm2(a, w, n);
}

}  // namespace mzk::simd
