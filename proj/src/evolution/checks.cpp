#include <algorithm>
#include <cmath>

#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"

namespace mzk {

ConservationCheck check_conservation(const SpectralField& u0, double t_end, double dt, int record_every) {
  ConservationCheck out;
  out.ledger = simulate(u0, t_end, dt, record_every).ledger;
  const auto& L = out.ledger;
  const double m0 = L.mass.front(), e0 = L.energy.front();
  for (std::size_t i = 0; i < L.times.size(); ++i) {
    out.mass_drift = std::max(out.mass_drift, std::abs(L.mass[i] - m0) / std::abs(m0));
    out.energy_drift = std::max(out.energy_drift, std::abs(L.energy[i] - e0) / std::abs(e0));
  }
  return out;
}

ScalingCheck check_scaling(const SpectralField& u0, double lambda, double t_end, double dt, int record_every) {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  const double l3 = lambda * lambda * lambda;
  const Trajectory u = simulate(u0, l3 * t_end, l3 * dt, record_every).trajectory;
  const Trajectory v = simulate(rescale(u0, lambda), t_end, dt, record_every).trajectory;
  if (u.states.size() != v.states.size()) throw DomainError("scaling runs recorded different step counts");
  ScalingCheck out;
  for (std::size_t i = 0; i < v.states.size(); ++i) {
    const SpectralField ref = rescale(u.states[i], lambda);
    const double n = l2_norm(ref);
    const double e = l2_norm(v.states[i] - ref);
    out.times.push_back(v.times[i]);
    out.rel_error.push_back(n > 0.0 ? e / n : e);
    out.max_rel_error = std::max(out.max_rel_error, out.rel_error.back());
  }
  return out;
}

}  // namespace mzk
