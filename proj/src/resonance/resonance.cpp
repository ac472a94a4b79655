#include <algorithm>
#include <cmath>
#include <limits>

#include "mzk/errors.hpp"
#include "mzk/resonance.hpp"
#include "mzk/spectral.hpp"

namespace mzk {

double resonance(const FrequencyPoint& p1, const FrequencyPoint& p2, const FrequencyPoint& p3) {
  const double xi = p1.xi + p2.xi + p3.xi;
  const double q = static_cast<double>(p1.q) + p2.q + p3.q;
  return dispersion_symbol(xi, q) - dispersion_symbol(p1.xi, p1.q) - dispersion_symbol(p2.xi, p2.q) -
         dispersion_symbol(p3.xi, p3.q);
}

double resonance_expanded(double xi, int qi, double xi1, int q1i, double xi2, int q2i) {
  const double q = qi, q1 = q1i, q2 = q2i;
  const double cubic = 3.0 * xi * xi * (xi1 + xi2) - 3.0 * xi * (xi1 * xi1 + 2.0 * xi1 * xi2 + xi2 * xi2) +
                       3.0 * xi1 * xi2 * (xi1 + xi2);
  const double mixed_xi = 2.0 * xi * q * (q1 + q2) - xi * (q1 * q1 + 2.0 * q1 * q2 + q2 * q2);
  const double mixed_xi1 = xi1 * q * q - 2.0 * xi1 * q * (q1 + q2) + 2.0 * xi1 * q1 * q2 + xi1 * q2 * q2;
  const double mixed_xi2 = xi2 * q * q - 2.0 * xi2 * q * (q1 + q2) + 2.0 * xi2 * q1 * q2 + xi2 * q1 * q1;
  return cubic + mixed_xi + mixed_xi1 + mixed_xi2;
}

double resonance_dxi1(const FrequencyPoint& p1, const FrequencyPoint& p2, const FrequencyPoint&,
                      double xi_total, int q_total) {
  const double xi3 = xi_total - p1.xi - p2.xi;
  const double q3 = static_cast<double>(q_total) - p1.q - p2.q;
  const double m3 = 3.0 * xi3 * xi3 + q3 * q3;
  const double m1 = 3.0 * p1.xi * p1.xi + static_cast<double>(p1.q) * p1.q;
  return m3 - m1;
}

double sublevel_measure_1d(const std::function<double(double)>& f, Interval J, Interval I, double h) {
  if (!(h > 0.0)) throw ConfigError("sublevel step must be positive");
  const long cells = static_cast<long>(std::floor(J.length() / h));
  double count = 0.0;
  for (long i = 0; i < cells; ++i) {
    const double x = J.lo + (static_cast<double>(i) + 0.5) * h;
    if (I.contains(f(x))) count += 1.0;
  }
  return count * h;
}

Sublevel2d sublevel_measure_2d(const Function2d& f, const Rectangle& A, Interval I, double h,
                               const Function2d& dfdx, const Function2d& dfdy) {
  if (!(h > 0.0)) throw ConfigError("sublevel step must be positive");
  const long nx = static_cast<long>(std::floor(A.x.length() / h));
  const long ny = static_cast<long>(std::floor(A.y.length() / h));
  const double fd = 1e-6 * std::max({1.0, A.x.length(), A.y.length()});
  auto dx = [&](double x, double y) {
    return dfdx ? dfdx(x, y) : (f(x + fd, y) - f(x - fd, y)) / (2.0 * fd);
  };
  auto dy = [&](double x, double y) {
    return dfdy ? dfdy(x, y) : (f(x, y + fd) - f(x, y - fd)) / (2.0 * fd);
  };
  Sublevel2d out;
  out.step = h;
  out.inf_dx = out.inf_dy = std::numeric_limits<double>::infinity();
  double count = 0.0;
  for (long i = 0; i < nx; ++i) {
    const double x = A.x.lo + (static_cast<double>(i) + 0.5) * h;
    for (long j = 0; j < ny; ++j) {
      const double y = A.y.lo + (static_cast<double>(j) + 0.5) * h;
      if (I.contains(f(x, y))) count += 1.0;
      out.inf_dx = std::min(out.inf_dx, std::abs(dx(x, y)));
      out.inf_dy = std::min(out.inf_dy, std::abs(dy(x, y)));
    }
  }
  out.counted = count * h * h;
  constexpr double kFlat = 1e-12;
  const double inf = std::numeric_limits<double>::infinity();
  const double via_x = out.inf_dx > kFlat ? A.y.length() / out.inf_dx : inf;
  const double via_y = out.inf_dy > kFlat ? A.x.length() / out.inf_dy : inf;
  const double best = std::min(via_x, via_y);
  out.bound = std::isinf(best) ? inf : I.length() * best;
  return out;
}

}  // namespace mzk
