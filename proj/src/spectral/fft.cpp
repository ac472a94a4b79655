#include "mzk/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace mzk::fft {
namespace {

enum class Kind { two_d, strided, one_d };
using Key = std::tuple<Kind, int, int, int>;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::map<Key, fftw_plan>& plan_cache() {
  static std::map<Key, fftw_plan> cache;
  return cache;
}

fftw_plan get_plan(Kind kind, int a, int b, int sign) {
  const Key key{kind, a, b, sign};
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto& cache = plan_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const std::size_t total = static_cast<std::size_t>(a) * static_cast<std::size_t>(b);
  fftw_complex* buf = fftw_alloc_complex(total);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = nullptr;
  switch (kind) {
    case Kind::two_d:
      plan = fftw_plan_dft_2d(a, b, buf, buf, sign, flags);
      break;
    case Kind::strided: {
      int n = a;
      plan = fftw_plan_many_dft(1, &n, b, buf, nullptr, b, 1, buf, nullptr, b, 1, sign, flags);
      break;
    }
    case Kind::one_d:
      plan = fftw_plan_dft_1d(a, buf, buf, sign, flags);
      break;
  }
  fftw_free(buf);
  cache.emplace(key, plan);
  return plan;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void transform_2d(cplx* data, int n0, int n1, int sign) {
  fftw_plan p = get_plan(Kind::two_d, n0, n1, sign);
  fftw_execute_dft(p, as_fftw(data), as_fftw(data));
}

void transform_strided(cplx* data, int n, int howmany, int sign) {
  fftw_plan p = get_plan(Kind::strided, n, howmany, sign);
  fftw_execute_dft(p, as_fftw(data), as_fftw(data));
}

void transform_1d(cplx* data, int n, int sign) {
  fftw_plan p = get_plan(Kind::one_d, n, 1, sign);
  fftw_execute_dft(p, as_fftw(data), as_fftw(data));
}

}  // namespace mzk::fft
