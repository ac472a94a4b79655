#include <cmath>
#include <numbers>
#include <string>

#include "mzk/errors.hpp"
#include "mzk/spectral.hpp"

namespace mzk {
namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double Grid::dxi() const { return 2.0 * std::numbers::pi / lx; }

double Grid::y(int j) const { return 2.0 * std::numbers::pi * j / ny; }

std::size_t Grid::index(int k, int qq) const {
  const int i = k < 0 ? k + nx : k;
  const int j = qq < 0 ? qq + ny : qq;
  return static_cast<std::size_t>(i) * ny + j;
}

Grid make_grid(int nx, int ny, double lx) {
  if (!power_of_two(nx) || nx < 4)
    throw ConfigError("nx must be a power of two >= 4, got " + std::to_string(nx));
  if (!power_of_two(ny) || ny < 4)
    throw ConfigError("ny must be a power of two >= 4, got " + std::to_string(ny));
  if (!(lx > 0.0) || !std::isfinite(lx)) throw ConfigError("lx must be positive and finite");
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.lx = lx;
  g.xi.resize(nx);
  g.q.resize(ny);
  const double d = 2.0 * std::numbers::pi / lx;
  for (int i = 0; i < nx; ++i) g.xi[i] = d * g.kx(i);
  for (int j = 0; j < ny; ++j) g.q[j] = g.ky(j);
  return g;
}

}  // namespace mzk
