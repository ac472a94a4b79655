#include "mzk/cutoff.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

namespace mzk {
namespace {

double bump(double x) {
  const double d = 1.0 - x * x;
  return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
}

// Cumulative integral of the bump on a uniform partition of [-1,1]; the
// step is evaluated by cubic Hermite interpolation using the exact
// derivative bump(x)/Z.
struct StepTable {
  static constexpr int kCells = 4096;
  double h = 2.0 / kCells;
  double inv_total = 0.0;
  std::vector<double> cumulative;

  StepTable() : cumulative(kCells + 1, 0.0) {
    using boost::math::quadrature::gauss_kronrod;
    for (int c = 0; c < kCells; ++c) {
      const double a = -1.0 + c * h;
      cumulative[c + 1] = cumulative[c] + gauss_kronrod<double, 21>::integrate(bump, a, a + h, 0);
    }
    inv_total = 1.0 / cumulative[kCells];
    for (auto& v : cumulative) v *= inv_total;
  }

  double eval(double x) const {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double pos = (x + 1.0) / h;
    int c = static_cast<int>(pos);
    if (c >= kCells) c = kCells - 1;
    const double s = pos - c;
    const double x0 = -1.0 + c * h;
    const double y0 = cumulative[c], y1 = cumulative[c + 1];
    const double d0 = bump(x0) * inv_total * h, d1 = bump(x0 + h) * inv_total * h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * d1;
  }
};

const StepTable& step_table() {
  static const StepTable table;
  return table;
}

}  // namespace

double smooth_step(double x) {
  // Evaluating the lower half only makes S(-x) = 1 - S(x) exact.
  if (x > 0.0) return 1.0 - step_table().eval(-x);
  return step_table().eval(x);
}

double eta(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return smooth_step(3.0 - 2.0 * a);
}

double chi(double r) {
  constexpr double lo = 1.25, hi = 1.6;
  const double a = std::abs(r);
  if (a <= lo) return 1.0;
  if (a >= hi) return 0.0;
  return smooth_step(1.0 - 2.0 * (a - lo) / (hi - lo));
}

double phi_dyadic(double r, double N) {
  if (N <= 1.0) return chi(r);
  return chi(r / N) - chi(2.0 * r / N);
}

double phi_at_most(double r, double M) { return chi(r / M); }

DyadicInterval dyadic_interval(double N) {
  if (N <= 1.0) return {0.0, 1.6};
  return {0.625 * N, 1.6 * N};
}

bool is_dyadic(double N) {
  if (!(N >= 1.0) || N > 1e15) return false;
  const double l = std::log2(N);
  return l == std::floor(l);
}

}  // namespace mzk
