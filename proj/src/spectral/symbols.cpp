#include <algorithm>
#include <cmath>
#include <numbers>

#include "mzk/errors.hpp"
#include "mzk/fft.hpp"
#include "mzk/simd.hpp"
#include "mzk/spectral.hpp"

namespace mzk {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class T, class F>
std::vector<T> alias_averaged(const Grid& g, F&& m) {
  std::vector<T> out(g.size());
  for (int i = 0; i < g.nx; ++i) {
    const double x0 = g.xi[i];
    const int nxs = g.x_nyquist(i) ? 2 : 1;
    for (int j = 0; j < g.ny; ++j) {
      const int q0 = g.q[j];
      const int nqs = g.y_nyquist(j) ? 2 : 1;
      T acc{};
      for (int a = 0; a < nxs; ++a)
        for (int b = 0; b < nqs; ++b) acc += m(a ? -x0 : x0, b ? -q0 : q0);
      out[static_cast<std::size_t>(i) * g.ny + j] = acc / static_cast<double>(nxs * nqs);
    }
  }
  return out;
}

void require_same(const Grid& a, const Grid& b) {
  if (!a.same_shape(b)) throw ConfigError("fields live on different grids");
}

}  // namespace

double weighted_modulus(double xi, double q) { return std::sqrt(3.0 * xi * xi + q * q); }

SpectralField forward_transform(const PhysicalField& u) {
  const Grid& g = u.grid;
  for (double v : u.values)
    if (!std::isfinite(v)) throw DomainError("physical field contains non-finite values");
  SpectralField f(g);
  for (std::size_t n = 0; n < g.size(); ++n) f.coeffs[n] = cplx(u.values[n], 0.0);
  fft::transform_2d(f.coeffs.data(), g.nx, g.ny, -1);
  const double norm = 1.0 / static_cast<double>(g.size());
  for (auto& c : f.coeffs) c *= norm;
  return f;
}

double hermitian_defect(const SpectralField& f) {
  const Grid& g = f.grid;
  double peak = 0.0, defect = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const int ip = (g.nx - i) % g.nx;
    for (int j = 0; j < g.ny; ++j) {
      const int jp = (g.ny - j) % g.ny;
      const cplx c = f.coeffs[static_cast<std::size_t>(i) * g.ny + j];
      const cplx p = f.coeffs[static_cast<std::size_t>(ip) * g.ny + jp];
      peak = std::max(peak, std::abs(c));
      defect = std::max(defect, std::abs(c - std::conj(p)));
    }
  }
  return peak > 0.0 ? defect / peak : 0.0;
}

namespace {

std::vector<cplx> raw_inverse(const SpectralField& f) {
  std::vector<cplx> work = f.coeffs;
  fft::transform_2d(work.data(), f.grid.nx, f.grid.ny, +1);
  return work;
}

}  // namespace

double imaginary_residue(const SpectralField& f) {
  const auto work = raw_inverse(f);
  double peak = 0.0, im = 0.0;
  for (const auto& v : work) {
    peak = std::max(peak, std::abs(v));
    im = std::max(im, std::abs(v.imag()));
  }
  return peak > 0.0 ? im / peak : 0.0;
}

PhysicalField inverse_transform(const SpectralField& f) {
  if (hermitian_defect(f) > 1e-6)
    throw DomainError("spectral data violates Hermitian symmetry; inverse would not be real");
  const auto work = raw_inverse(f);
  PhysicalField u(f.grid);
  for (std::size_t n = 0; n < work.size(); ++n) u.values[n] = work[n].real();
  return u;
}

std::vector<cplx> symbol_table(const Grid& g, const Symbol& m) {
  return alias_averaged<cplx>(g, [&](double xi, int q) { return m(xi, q); });
}

std::vector<double> real_symbol_table(const Grid& g, const RealSymbol& m) {
  return alias_averaged<double>(g, [&](double xi, int q) { return m(xi, q); });
}

void apply_table(SpectralField& f, const std::vector<cplx>& table) {
  simd::mul(f.coeffs.data(), table.data(), f.coeffs.size());
}

void apply_table(SpectralField& f, const std::vector<double>& table) {
  simd::scale(f.coeffs.data(), table.data(), f.coeffs.size());
}

SpectralField apply_symbol(const SpectralField& f, const Symbol& m) {
  SpectralField out = f;
  apply_table(out, symbol_table(f.grid, m));
  return out;
}

SpectralField bessel_potential(const SpectralField& f, double s) {
  SpectralField out = f;
  apply_table(out, real_symbol_table(f.grid, [s](double xi, int q) {
                const double r = weighted_modulus(xi, q);
                return std::pow(1.0 + r * r, 0.5 * s);
              }));
  return out;
}

SpectralField riesz_potential(const SpectralField& f, double s) {
  if (s < 0.0 && std::abs(f.coeffs[0]) != 0.0)
    throw DomainError("Riesz potential of negative order needs mean-zero data");
  SpectralField out = f;
  apply_table(out, real_symbol_table(f.grid, [s](double xi, int q) {
                const double r = weighted_modulus(xi, q);
                return r == 0.0 ? 0.0 : std::pow(r, s);
              }));
  return out;
}

double sobolev_norm(const SpectralField& f, double s) {
  const auto w = real_symbol_table(f.grid, [s](double xi, int q) {
    return std::pow(1.0 + weighted_modulus(xi, q), 2.0 * s);
  });
  const double sum = simd::weighted_norm2(f.coeffs.data(), w.data(), f.coeffs.size());
  return std::sqrt(f.grid.lx * kTwoPi * sum);
}

double l2_norm(const SpectralField& f) {
  double sum = 0.0;
  for (const auto& c : f.coeffs) sum += std::norm(c);
  return std::sqrt(f.grid.lx * kTwoPi * sum);
}

double l2_norm(const PhysicalField& u) {
  double sum = 0.0;
  for (double v : u.values) sum += v * v;
  const double cell = u.grid.lx * kTwoPi / static_cast<double>(u.grid.size());
  return std::sqrt(sum * cell);
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same(a.grid, b.grid);
  SpectralField out = a;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] += b.coeffs[n];
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same(a.grid, b.grid);
  SpectralField out = a;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] -= b.coeffs[n];
  return out;
}

SpectralField operator*(double s, const SpectralField& a) {
  SpectralField out = a;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

double tail_fraction(const PhysicalField& u) {
  const Grid& g = u.grid;
  double total = 0.0, outside = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const bool far = std::abs(g.x(i) - 0.5 * g.lx) > 0.25 * g.lx;
    for (int j = 0; j < g.ny; ++j) {
      const double v2 = u.at(i, j) * u.at(i, j);
      total += v2;
      if (far) outside += v2;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

}  // namespace mzk
