#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace mzk {

struct FrequencyPoint {
  double xi = 0.0;
  int q = 0;
};

// omega(sum) - sum of omega over the three points.
double resonance(const FrequencyPoint& p1, const FrequencyPoint& p2, const FrequencyPoint& p3);

// The same quantity written as a polynomial in (xi, q, xi1, q1, xi2, q2) with
// xi3 = xi - xi1 - xi2 and q3 = q - q1 - q2 eliminated.
double resonance_expanded(double xi, int q, double xi1, int q1, double xi2, int q2);

// d/dxi1 of the resonance with xi3 eliminated: |(xi3,q3)|^2 - |(xi1,q1)|^2,
// where (xi3, q3) = (xi_total - xi1 - xi2, q_total - q1 - q2). p3 is not read.
double resonance_dxi1(const FrequencyPoint& p1, const FrequencyPoint& p2, const FrequencyPoint& p3,
                      double xi_total, int q_total);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi > lo ? hi - lo : 0.0; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Midpoint-rule measure of {x in J : f(x) in I}.
double sublevel_measure_1d(const std::function<double(double)>& f, Interval J, Interval I, double h);

struct Rectangle {
  Interval x;
  Interval y;
};

struct Sublevel2d {
  double counted = 0.0;
  // |I| * min(|A_y| / inf|df/dx|, |A_x| / inf|df/dy|); +inf when both infima vanish.
  double bound = 0.0;
  double inf_dx = 0.0;
  double inf_dy = 0.0;
  double step = 0.0;
};

using Function2d = std::function<double(double, double)>;

// Counts cells of step h whose midpoint maps into I. Partials default to
// centered differences; their infima come from a grid minimization.
Sublevel2d sublevel_measure_2d(const Function2d& f, const Rectangle& A, Interval I, double h,
                               const Function2d& dfdx = nullptr, const Function2d& dfdy = nullptr);

struct CountingConfig {
  int n1 = 1, n2 = 1, n3 = 1;
  int l1 = 1, l2 = 1, l3 = 1;
  double h = 0.05;
  double h_tau = 0.05;
  double tau = 0.0;
  double xi = 0.0;
  int q = 0;
  // Every constraint interval is widened by this amount on both sides
  // (lower ends clamped at 0); used to probe monotonicity.
  double widen = 0.0;
};

struct MeasureReport {
  CountingConfig config;
  double counted = 0.0;
  double trivial_bound = 0.0;
  std::optional<double> improved_bound;  // only under N1 >= 4 N3 or N3 >= 4 N1
  bool separated = false;
  std::uint64_t cells = 0;               // enumerated (q1, q2, xi1, xi2) cells
  // Set B only.
  double max_slice = 0.0;
  double slice_bound = 0.0;              // L_max N2 / (N1 v N3)^2
  std::uint64_t admissible_pairs = 0;
  double projection_bound = 0.0;         // max_slice * admissible_pairs
};

constexpr std::uint64_t kMaxCountingCells = 1000000000ULL;

// Lebesgue measure in (tau1, tau2, xi1, xi2) times counting in (q1, q2). The
// xi variables use the lattice (i + 1/2) h; the tau lattice (a + 1/2) h_tau
// is counted in closed form per (xi1, xi2, q1, q2).
MeasureReport count_set_A(const CountingConfig& cfg);
// Measure in (xi1, xi2) times counting in (q1, q2) of the moduli constraints
// plus |tau - omega1 - omega2 - omega3| <= 3 L_max.
MeasureReport count_set_B(const CountingConfig& cfg);

// #{(a, b) in Z^2 : a0 <= a <= a1, b0 <= b <= b1, c0 <= a + b <= c1}.
std::int64_t count_lattice_pairs(std::int64_t a0, std::int64_t a1, std::int64_t b0, std::int64_t b1,
                                 std::int64_t c0, std::int64_t c1);

// Number of enumerated cells count_set_A would visit, without counting.
std::uint64_t counting_cells(const CountingConfig& cfg);

}  // namespace mzk
