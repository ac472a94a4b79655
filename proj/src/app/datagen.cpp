#include "mzk/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mzk/cutoff.hpp"
#include "mzk/errors.hpp"
#include "mzk/rng.hpp"

namespace mzk {
namespace {

double centre(const Grid& g, const DataParams& p) { return p.x0 < 0.0 ? 0.5 * g.lx : p.x0; }

template <class F>
SpectralField from_physical(const Grid& g, F&& u) {
  PhysicalField f(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) f.at(i, j) = u(g.x(i), g.y(j));
  // Nyquist modes are dropped so that every generated field is exactly band-limited;
  // the propagator is only a group off the Nyquist column.
  SpectralField s = forward_transform(f);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (g.x_nyquist(i) || g.y_nyquist(j)) s.coeffs[static_cast<std::size_t>(i) * g.ny + j] = cplx(0.0, 0.0);
  return s;
}

SpectralField dyadic_shell(const Grid& g, std::uint64_t seed, const DataParams& p) {
  if (p.shell < 1 || !is_dyadic(p.shell)) throw ConfigError("dyadic-shell needs a dyadic shell level");
  const DyadicInterval I = dyadic_interval(p.shell);
  SpectralField f(g);
  std::vector<char> done(g.size(), 0);
  SplitMix64 rng(seed);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (g.x_nyquist(i) || g.y_nyquist(j)) continue;
      const std::size_t n = static_cast<std::size_t>(i) * g.ny + j;
      if (done[n]) continue;
      const int k = g.kx(i), q = g.ky(j);
      const double r = weighted_modulus(g.xi[i], q);
      if (r < I.lo || r > I.hi) continue;
      const double re = rng.normal(), im = rng.normal();
      const std::size_t partner = g.index(-k, -q);
      if (partner == n) {
        f.coeffs[n] = cplx(p.amplitude * re, 0.0);
      } else {
        const cplx c = p.amplitude * cplx(re, im) / std::numbers::sqrt2;
        f.coeffs[n] = c;
        f.coeffs[partner] = std::conj(c);
        done[partner] = 1;
      }
      done[n] = 1;
    }
  return f;
}

SpectralField smooth(const Grid& g, std::uint64_t seed, const DataParams& p) {
  SplitMix64 rng(seed);
  double a[3], theta[3];
  for (int m = 0; m < 3; ++m) {
    a[m] = rng.normal();
    theta[m] = 2.0 * std::numbers::pi * rng.uniform();
  }
  const double x0 = centre(g, p), w = p.width;
  SpectralField f = from_physical(g, [&](double x, double y) {
    double sum = 0.0;
    for (int m = 0; m < 3; ++m) sum += a[m] * std::cos(m * y + theta[m]);
    return std::exp(-(x - x0) * (x - x0) / (2.0 * w * w)) * sum;
  });
  const double n = sobolev_norm(f, 1.0);
  if (n > 0.0) f = (p.h1_norm / n) * f;
  return f;
}

}  // namespace

const std::vector<std::string>& data_kinds() {
  static const std::vector<std::string> kinds{"zero", "soliton", "gaussian", "dyadic-shell", "smooth"};
  return kinds;
}

double soliton_profile(double x, double c, double x0) {
  return std::sqrt(2.0 * c) / std::cosh(std::sqrt(c) * (x - x0));
}

SpectralField generate_data(const std::string& kind, const Grid& g, std::uint64_t seed, const DataParams& p) {
  if (kind == "zero") return SpectralField(g);
  if (kind == "soliton") {
    if (!(p.speed > 0.0)) throw ConfigError("soliton speed must be positive");
    const double x0 = centre(g, p);
    return from_physical(g, [&](double x, double) { return p.amplitude * soliton_profile(x, p.speed, x0); });
  }
  if (kind == "gaussian") {
    const double x0 = centre(g, p), w = p.width;
    return from_physical(g, [&](double x, double y) {
      const double s = std::sin(0.5 * (y - std::numbers::pi));
      return p.amplitude * std::exp(-(x - x0) * (x - x0) / (w * w) - 2.0 * s * s);
    });
  }
  if (kind == "dyadic-shell") return dyadic_shell(g, seed, p);
  if (kind == "smooth") return smooth(g, seed, p);
  throw ConfigError("unknown data kind '" + kind + "'");
}

}  // namespace mzk
