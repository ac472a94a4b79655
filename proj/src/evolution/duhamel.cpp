#include <cmath>

#include "mzk/bourgain.hpp"
#include "mzk/cutoff.hpp"
#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"
#include "mzk/parallel.hpp"
#include "mzk/simd.hpp"

namespace mzk {
namespace {

void add_scaled(SpectralField& acc, double w, const SpectralField& f) {
  simd::axpy(acc.coeffs.data(), cplx(w, 0.0), f.coeffs.data(), acc.coeffs.size());
}

// One direction of the cumulative rule; f(k) is the node k steps away.
template <class At, class Out>
void integrate_outward(std::size_t count, double h, const Grid& grid, At&& f, Out&& out) {
  for (std::size_t k = 1; k <= count; ++k) {
    SpectralField acc(grid);
    if (k == 1) {
      if (count >= 2) {
        add_scaled(acc, 5.0 * h / 12.0, f(0));
        add_scaled(acc, 8.0 * h / 12.0, f(1));
        add_scaled(acc, -h / 12.0, f(2));
      } else {
        add_scaled(acc, 0.5 * h, f(0));
        add_scaled(acc, 0.5 * h, f(1));
      }
    } else if (k % 2 == 0) {
      acc = out(k - 2);
      add_scaled(acc, h / 3.0, f(k - 2));
      add_scaled(acc, 4.0 * h / 3.0, f(k - 1));
      add_scaled(acc, h / 3.0, f(k));
    } else {
      acc = out(k - 3);
      add_scaled(acc, 3.0 * h / 8.0, f(k - 3));
      add_scaled(acc, 9.0 * h / 8.0, f(k - 2));
      add_scaled(acc, 9.0 * h / 8.0, f(k - 1));
      add_scaled(acc, 3.0 * h / 8.0, f(k));
    }
    out(k) = std::move(acc);
  }
}

std::size_t find_origin(const std::vector<double>& times, double& h) {
  if (times.size() < 3) throw ConfigError("Duhamel quadrature needs at least three time samples");
  h = times[1] - times[0];
  if (!(h > 0.0)) throw ConfigError("trajectory times must increase");
  for (std::size_t m = 1; m < times.size(); ++m)
    if (std::abs(times[m] - times[m - 1] - h) > 1e-9 * h)
      throw ConfigError("Duhamel quadrature needs uniformly spaced samples");
  for (std::size_t m = 0; m < times.size(); ++m)
    if (std::abs(times[m]) <= 1e-9 * h) return m;
  throw ConfigError("trajectory times must include t = 0");
}

}  // namespace

std::vector<SpectralField> cumulative_integral(const std::vector<SpectralField>& g, double h,
                                               std::size_t origin) {
  if (g.empty() || origin >= g.size()) throw ConfigError("bad quadrature origin");
  const Grid& grid = g[0].grid;
  std::vector<SpectralField> out(g.size(), SpectralField(grid));
  integrate_outward(
      g.size() - 1 - origin, h, grid, [&](std::size_t k) -> const SpectralField& { return g[origin + k]; },
      [&](std::size_t k) -> SpectralField& { return out[origin + k]; });
  integrate_outward(
      origin, -h, grid, [&](std::size_t k) -> const SpectralField& { return g[origin - k]; },
      [&](std::size_t k) -> SpectralField& { return out[origin - k]; });
  return out;
}

Trajectory duhamel_apply(const SpectralField& u0, const Trajectory& traj, double T) {
  if (!(T > 0.0)) throw ConfigError("Duhamel cutoff time must be positive");
  if (traj.states.size() != traj.times.size()) throw ConfigError("trajectory times/states mismatch");
  double h = 0.0;
  const std::size_t origin = find_origin(traj.times, h);
  std::size_t inside = 0;
  for (double t : traj.times)
    if (t >= -1e-12 && t <= T * (1.0 + 1e-12)) ++inside;
  if (inside < 64) throw ConfigError("Duhamel quadrature needs at least 64 samples in [0, T]");

  const Grid& grid = u0.grid;
  const std::size_t n = traj.times.size();
  std::vector<SpectralField> integrand(n, SpectralField(grid));
  parallel_for(n, [&](std::size_t m) {
    CubicTerm cubic(grid);
    cubic.eval(traj.states[m], integrand[m]);
    apply_table(integrand[m], propagator_table(grid, -traj.times[m]));
  });
  const auto integral = cumulative_integral(integrand, h, origin);

  Trajectory out;
  out.grid = grid;
  out.times = traj.times;
  out.states.assign(n, SpectralField(grid));
  parallel_for(n, [&](std::size_t m) {
    const double t = traj.times[m];
    SpectralField v(grid);
    add_scaled(v, eta(t), u0);
    add_scaled(v, -eta(t / T), integral[m]);
    apply_table(v, propagator_table(grid, t));
    out.states[m] = std::move(v);
  });
  return out;
}

std::vector<double> picard_times(double T, int samples_per_T) {
  if (!(T > 0.0) || samples_per_T < 64) throw ConfigError("Picard window needs T > 0 and >= 64 samples per T");
  const int nt = 4 * samples_per_T;
  std::vector<double> times(nt);
  for (int m = 0; m < nt; ++m) times[m] = -2.0 * T + static_cast<double>(m) * T / samples_per_T;
  times[nt / 2] = 0.0;
  return times;
}

Trajectory free_solution(const SpectralField& u0, const std::vector<double>& times) {
  Trajectory tr;
  tr.grid = u0.grid;
  tr.times = times;
  tr.states.assign(times.size(), SpectralField(u0.grid));
  parallel_for(times.size(), [&](std::size_t m) {
    tr.states[m] = eta(times[m]) * free_propagate(u0, times[m]);
  });
  return tr;
}

PicardResult picard_iterate(const SpectralField& u0, double T, int n_iter, const PicardOptions& opt) {
  if (n_iter < 2) throw ConfigError("Picard iteration needs n_iter >= 2");
  const auto times = picard_times(T, opt.samples_per_T);
  PicardResult res;
  res.iterates.push_back(free_solution(u0, times));
  const double b = 0.5 + opt.delta;
  for (int n = 0; n < n_iter; ++n) {
    res.iterates.push_back(duhamel_apply(u0, res.iterates.back(), T));
    const Trajectory& next = res.iterates[res.iterates.size() - 1];
    const Trajectory& prev = res.iterates[res.iterates.size() - 2];
    std::vector<SpectralField> diff(times.size());
    for (std::size_t m = 0; m < times.size(); ++m) diff[m] = next.states[m] - prev.states[m];
    res.diff_norms.push_back(xsb_norm(make_space_time(std::move(diff), 2.0 * T), opt.s, b));
  }
  int run = 0;
  bool all_zero = true;
  for (std::size_t n = 0; n + 1 < res.diff_norms.size(); ++n) {
    const double prev = res.diff_norms[n], next = res.diff_norms[n + 1];
    const double r = prev > 0.0 ? next / prev : 0.0;
    if (prev > 0.0) all_zero = false;
    res.ratios.push_back(r);
    run = r > 1.0 ? run + 1 : 0;
    if (run >= 3 && !res.diverged) {
      res.diverged = true;
      res.divergence_index = static_cast<int>(n + 1);
    }
  }
  res.converged = all_zero && res.diff_norms.front() == 0.0;
  return res;
}

}  // namespace mzk
