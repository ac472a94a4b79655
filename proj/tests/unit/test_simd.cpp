#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "mzk/errors.hpp"
#include "mzk/rng.hpp"
#include "mzk/simd.hpp"

using namespace mzk;
using simd::cplx;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cplx> v(n);
  for (auto& c : v) c = cplx(rng.normal(), rng.normal());
  return v;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform() + 0.5;
  return v;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

std::vector<simd::Isa> vector_isas() {
  std::vector<simd::Isa> out;
  for (auto isa : {simd::Isa::avx2, simd::Isa::neon})
    if (simd::table_for(isa)) out.push_back(isa);
  return out;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar path is always available") {
    CHECK(simd::isa_supported(simd::Isa::scalar));
    CHECK(simd::table_for(simd::Isa::scalar) == &simd::scalar::table);
    CHECK(simd::isa_supported(simd::active_isa()));
  }

  TEST_CASE("forcing an unsupported isa is rejected") {
    for (auto isa : {simd::Isa::avx2, simd::Isa::neon})
      if (!simd::isa_supported(isa)) CHECK_THROWS_AS(simd::force_isa(isa), ConfigError);
  }

  TEST_CASE("elementwise kernels match the scalar reference bitwise") {
    const auto& ref = simd::scalar::table;
    for (auto isa : vector_isas()) {
      const simd::KernelTable& t = *simd::table_for(isa);
      CAPTURE(simd::isa_name(isa));
      for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1023u}) {
        CAPTURE(n);
        const auto a0 = random_complex(n, 1 + n), m = random_complex(n, 2 + n);
        const auto w = random_real(n, 3 + n);
        auto a = a0, b = a0;
        ref.mul(a.data(), m.data(), n);
        t.mul(b.data(), m.data(), n);
        CHECK(bitwise_equal(a, b));
        a = a0, b = a0;
        ref.scale(a.data(), w.data(), n);
        t.scale(b.data(), w.data(), n);
        CHECK(bitwise_equal(a, b));
        a = a0, b = a0;
        ref.axpy(a.data(), cplx(0.3, -1.7), m.data(), n);
        t.axpy(b.data(), cplx(0.3, -1.7), m.data(), n);
        CHECK(bitwise_equal(a, b));
        a = a0, b = a0;
        ref.cube_real(a.data(), n);
        t.cube_real(b.data(), n);
        CHECK(bitwise_equal(a, b));
      }
    }
  }

  TEST_CASE("weighted norm agrees with the scalar reference to rounding") {
    for (auto isa : vector_isas()) {
      const simd::KernelTable& t = *simd::table_for(isa);
      for (std::size_t n : {1u, 5u, 4096u}) {
        const auto a = random_complex(n, 10 + n);
        const auto w = random_real(n, 20 + n);
        const double r = simd::scalar::table.weighted_norm2(a.data(), w.data(), n);
        CHECK(t.weighted_norm2(a.data(), w.data(), n) == doctest::Approx(r).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("kernels compute the documented operations") {
    std::vector<cplx> a{cplx(1, 2), cplx(-3, 0.5), cplx(2, -1)};
    const std::vector<cplx> m{cplx(0, 1), cplx(2, 0), cplx(1, 1)};
    simd::mul(a.data(), m.data(), a.size());
    CHECK(a[0] == cplx(-2, 1));
    CHECK(a[1] == cplx(-6, 1));
    CHECK(a[2] == cplx(3, 1));
    simd::cube_real(a.data(), a.size());
    CHECK(a[0] == cplx(-8, 0));
    CHECK(a[2] == cplx(27, 0));
    const std::vector<double> w{1, 2, 3};
    CHECK(simd::weighted_norm2(a.data(), w.data(), 3) == doctest::Approx(64 + 2 * 216.0 * 216.0 + 3 * 729.0));
  }
}
