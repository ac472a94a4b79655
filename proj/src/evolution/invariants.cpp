#include <cmath>
#include <numbers>

#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"

namespace mzk {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double mass(const SpectralField& f) {
  double sum = 0.0;
  for (const auto& c : f.coeffs) sum += std::norm(c);
  return f.grid.lx * kTwoPi * sum;
}

double energy(const SpectralField& f) {
  const Grid& g = f.grid;
  double grad = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const double k2 = g.xi[i] * g.xi[i] + static_cast<double>(g.q[j]) * g.q[j];
      grad += k2 * std::norm(f.coeffs[static_cast<std::size_t>(i) * g.ny + j]);
    }
  // u^4 has modes below 2*nx and 2*ny, so the padded rectangle rule is exact.
  PaddedTransform pad(g, 2);
  const cplx* u = pad.load(f);
  double quartic = 0.0;
  for (std::size_t n = 0; n < pad.size(); ++n) {
    const double v2 = u[n].real() * u[n].real();
    quartic += v2 * v2;
  }
  const double area = g.lx * kTwoPi;
  return area * 0.5 * grad - 0.25 * quartic * area / static_cast<double>(pad.size());
}

SpectralField rescale(const SpectralField& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("rescale factor must be positive");
  const bool up = lambda >= 1.0;
  const double mf = up ? lambda : 1.0 / lambda;
  const long m = std::lround(mf);
  if (m < 1 || std::abs(mf - static_cast<double>(m)) > 1e-12 * mf)
    throw ConfigError("rescale factor must be an integer or the reciprocal of one");
  if (m == 1) return f;
  const Grid& g = f.grid;
  int ny_out = up ? g.ny * static_cast<int>(m) : g.ny / static_cast<int>(m);
  if (!power_of_two(ny_out) || ny_out < 4 || (!up && g.ny % m != 0)) ny_out = g.ny;
  const Grid out_grid = make_grid(g.nx, ny_out, g.lx / lambda);
  SpectralField out(out_grid);

  double peak = 0.0;
  for (const auto& c : f.coeffs) peak = std::max(peak, std::abs(c));
  const double negligible = 1e-14 * peak;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const cplx c = f.coeffs[static_cast<std::size_t>(i) * g.ny + j];
      if (std::abs(c) <= negligible) continue;
      const int q = g.q[j];
      long q_out;
      if (up) {
        q_out = q * m;
      } else {
        if (q % m != 0) throw ConfigError("data y-period is incompatible with the rescale factor");
        q_out = q / m;
      }
      if (q_out <= -ny_out / 2 || q_out >= ny_out / 2 || g.y_nyquist(j))
        throw ConfigError("rescaled data does not fit the output grid");
      out.mode(g.kx(i), static_cast<int>(q_out)) = lambda * c;
    }
  return out;
}

PhysicalField rescale(const PhysicalField& u, double lambda) {
  return inverse_transform(rescale(forward_transform(u), lambda));
}

}  // namespace mzk
