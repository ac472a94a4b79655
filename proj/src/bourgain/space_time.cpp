#include <cmath>
#include <numbers>

#include "mzk/bourgain.hpp"
#include "mzk/cutoff.hpp"
#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"
#include "mzk/fft.hpp"
#include "mzk/parallel.hpp"
#include "mzk/simd.hpp"

namespace mzk {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(i t omega_bar) with omega_bar the alias-averaged dispersion symbol, so
// the profile map stays unimodular on Nyquist modes too.
std::vector<cplx> phase_table(const Grid& g, double t) {
  const auto w = real_symbol_table(g, [](double xi, int q) { return dispersion_symbol(xi, q); });
  std::vector<cplx> out(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) out[n] = std::polar(1.0, t * w[n]);
  return out;
}

double sign_of_index(int l) { return (l % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double SpaceTimeField::sigma(int j) const { return std::numbers::pi * sigma_index(j) / t_window; }

SpaceTimeField make_space_time(std::vector<SpectralField> samples, double t_window) {
  const int nt = static_cast<int>(samples.size());
  if (nt < 4 || nt % 2 != 0) throw ConfigError("space-time field needs an even number (>= 4) of samples");
  if (!(t_window > 0.0)) throw ConfigError("time window must be positive");
  for (const auto& s : samples)
    if (!s.grid.same_shape(samples[0].grid)) throw ConfigError("time samples live on different grids");
  SpaceTimeField u;
  u.grid = samples[0].grid;
  u.t_window = t_window;
  u.nt = nt;
  u.time_samples = std::move(samples);
  refresh_tau(u);
  return u;
}

void refresh_tau(SpaceTimeField& u) {
  const std::size_t modes = u.grid.size();
  u.tau_coeffs.assign(modes * u.nt, cplx(0.0, 0.0));
  parallel_for(static_cast<std::size_t>(u.nt), [&](std::size_t m) {
    cplx* row = u.tau_coeffs.data() + m * modes;
    std::copy(u.time_samples[m].coeffs.begin(), u.time_samples[m].coeffs.end(), row);
    const auto phase = phase_table(u.grid, -u.time(static_cast<int>(m)));
    simd::mul(row, phase.data(), modes);
  });
  fft::transform_strided(u.tau_coeffs.data(), u.nt, static_cast<int>(modes), -1);
  parallel_for(static_cast<std::size_t>(u.nt), [&](std::size_t j) {
    const double f = sign_of_index(u.sigma_index(static_cast<int>(j))) / u.nt;
    cplx* row = u.tau_coeffs.data() + j * modes;
    for (std::size_t n = 0; n < modes; ++n) row[n] *= f;
  });
}

void refresh_samples(SpaceTimeField& u) {
  const std::size_t modes = u.grid.size();
  std::vector<cplx> work = u.tau_coeffs;
  for (int j = 0; j < u.nt; ++j) {
    const double f = sign_of_index(u.sigma_index(j));
    cplx* row = work.data() + static_cast<std::size_t>(j) * modes;
    for (std::size_t n = 0; n < modes; ++n) row[n] *= f;
  }
  fft::transform_strided(work.data(), u.nt, static_cast<int>(modes), +1);
  u.time_samples.assign(u.nt, SpectralField(u.grid));
  parallel_for(static_cast<std::size_t>(u.nt), [&](std::size_t m) {
    auto& c = u.time_samples[m].coeffs;
    std::copy(work.begin() + m * modes, work.begin() + (m + 1) * modes, c.begin());
    const auto phase = phase_table(u.grid, u.time(static_cast<int>(m)));
    simd::mul(c.data(), phase.data(), modes);
  });
}

SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (a.nt != b.nt || a.t_window != b.t_window || !a.grid.same_shape(b.grid))
    throw ConfigError("space-time fields have different shapes");
  SpaceTimeField out = a;
  for (int m = 0; m < a.nt; ++m) out.time_samples[m] = a.time_samples[m] - b.time_samples[m];
  for (std::size_t n = 0; n < out.tau_coeffs.size(); ++n) out.tau_coeffs[n] -= b.tau_coeffs[n];
  return out;
}

SpaceTimeField scaled(const SpaceTimeField& a, double s) {
  SpaceTimeField out = a;
  for (auto& f : out.time_samples)
    for (auto& c : f.coeffs) c *= s;
  for (auto& c : out.tau_coeffs) c *= s;
  return out;
}

SpectralField littlewood_paley(const SpectralField& f, double N) {
  if (!is_dyadic(N)) throw ConfigError("Littlewood-Paley level must be a dyadic integer");
  SpectralField out = f;
  apply_table(out, real_symbol_table(f.grid, [N](double xi, int q) {
                return phi_dyadic(weighted_modulus(xi, q), N);
              }));
  return out;
}

SpaceTimeField littlewood_paley(const SpaceTimeField& u, double N) {
  if (!is_dyadic(N)) throw ConfigError("Littlewood-Paley level must be a dyadic integer");
  const auto table = real_symbol_table(u.grid, [N](double xi, int q) {
    return phi_dyadic(weighted_modulus(xi, q), N);
  });
  SpaceTimeField out = u;
  const std::size_t modes = u.grid.size();
  for (auto& f : out.time_samples) apply_table(f, table);
  for (int j = 0; j < u.nt; ++j) simd::scale(out.tau_coeffs.data() + j * modes, table.data(), modes);
  return out;
}

SpaceTimeField modulation_project(const SpaceTimeField& u, double L) {
  if (!is_dyadic(L)) throw ConfigError("modulation level must be a dyadic integer");
  SpaceTimeField out = u;
  const std::size_t modes = u.grid.size();
  for (int j = 0; j < u.nt; ++j) {
    const double w = phi_dyadic(std::abs(u.sigma(j)), L);
    cplx* row = out.tau_coeffs.data() + static_cast<std::size_t>(j) * modes;
    for (std::size_t n = 0; n < modes; ++n) row[n] *= w;
  }
  refresh_samples(out);
  return out;
}

double xsb_norm(const SpaceTimeField& u, double s, double b) {
  const auto ws = real_symbol_table(u.grid, [s](double xi, int q) {
    return std::pow(1.0 + weighted_modulus(xi, q), 2.0 * s);
  });
  const std::size_t modes = u.grid.size();
  double sum = 0.0;
  for (int j = 0; j < u.nt; ++j) {
    const double wt = std::pow(1.0 + std::abs(u.sigma(j)), 2.0 * b);
    sum += wt * simd::weighted_norm2(u.tau_coeffs.data() + static_cast<std::size_t>(j) * modes, ws.data(), modes);
  }
  return std::sqrt(2.0 * u.t_window * u.grid.lx * kTwoPi * sum);
}

SpaceTimeField time_cutoff(const SpaceTimeField& u, double T) {
  if (!(T > 0.0)) throw ConfigError("cutoff time must be positive");
  SpaceTimeField out = u;
  for (int m = 0; m < u.nt; ++m) {
    const double w = eta(u.time(m) / T);
    for (auto& c : out.time_samples[m].coeffs) c *= w;
  }
  refresh_tau(out);
  return out;
}

SpaceTimeField windowed_free_flow(const SpectralField& u0, double t_window, int nt) {
  return sample_window(t_window, nt, [&](double t) { return eta(t) * free_propagate(u0, t); });
}

}  // namespace mzk
