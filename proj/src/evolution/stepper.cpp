#include <cmath>
#include <string>

#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"
#include "mzk/simd.hpp"

namespace mzk {
namespace {

void resize_like(State& s, const State& like) {
  if (s.size() == like.size() && !s.empty() && s[0].grid.same_shape(like[0].grid)) return;
  s.clear();
  for (const auto& f : like) s.emplace_back(f.grid);
}

void copy_into(State& dst, const State& src) {
  for (std::size_t c = 0; c < src.size(); ++c) dst[c].coeffs = src[c].coeffs;
}

bool all_finite(const SpectralField& f) {
  for (const auto& c : f.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

IfRk4::IfRk4(const Grid& g, double dt)
    : dt_(dt), half_(propagator_table(g, 0.5 * dt)), full_(propagator_table(g, dt)) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
}

void IfRk4::advance(State& u, const RightHandSide& rhs) {
  resize_like(k1_, u);
  resize_like(k2_, u);
  resize_like(k3_, u);
  resize_like(k4_, u);
  resize_like(tmp_, u);
  const std::size_t n = u[0].coeffs.size();
  const cplx h(dt_, 0.0), h2(0.5 * dt_, 0.0);

  rhs(u, k1_);

  copy_into(tmp_, u);
  for (std::size_t c = 0; c < u.size(); ++c) {
    simd::axpy(tmp_[c].coeffs.data(), h2, k1_[c].coeffs.data(), n);
    simd::mul(tmp_[c].coeffs.data(), half_.data(), n);
  }
  rhs(tmp_, k2_);

  copy_into(tmp_, u);
  for (std::size_t c = 0; c < u.size(); ++c) {
    simd::mul(tmp_[c].coeffs.data(), half_.data(), n);
    simd::axpy(tmp_[c].coeffs.data(), h2, k2_[c].coeffs.data(), n);
  }
  rhs(tmp_, k3_);

  // k3 <- E(h/2) k3 is only needed in this form from here on.
  copy_into(tmp_, u);
  for (std::size_t c = 0; c < u.size(); ++c) {
    simd::mul(k3_[c].coeffs.data(), half_.data(), n);
    simd::mul(tmp_[c].coeffs.data(), full_.data(), n);
    simd::axpy(tmp_[c].coeffs.data(), h, k3_[c].coeffs.data(), n);
  }
  rhs(tmp_, k4_);

  const cplx w1(dt_ / 6.0, 0.0), w2(dt_ / 3.0, 0.0);
  for (std::size_t c = 0; c < u.size(); ++c) {
    cplx* uc = u[c].coeffs.data();
    simd::mul(uc, full_.data(), n);
    simd::mul(k1_[c].coeffs.data(), full_.data(), n);
    simd::axpy(uc, w1, k1_[c].coeffs.data(), n);
    simd::mul(k2_[c].coeffs.data(), half_.data(), n);
    simd::axpy(uc, w2, k2_[c].coeffs.data(), n);
    simd::axpy(uc, w2, k3_[c].coeffs.data(), n);
    simd::axpy(uc, w1, k4_[c].coeffs.data(), n);
  }
}

Stepper::Stepper(const Grid& g, double dt) : rk_(g, dt), cubic_(g) {}

void Stepper::advance(SpectralField& f) {
  if (state_.empty() || !state_[0].grid.same_shape(f.grid)) {
    state_.clear();
    state_.emplace_back(f.grid);
  }
  state_[0].coeffs.swap(f.coeffs);
  rk_.advance(state_, [this](const State& in, State& out) {
    cubic_.eval(in[0], out[0]);
    for (auto& c : out[0].coeffs) c = -c;
  });
  state_[0].coeffs.swap(f.coeffs);
}

SpectralField step(const SpectralField& f, double dt) {
  Stepper s(f.grid, dt);
  SpectralField out = f;
  s.advance(out);
  return out;
}

SimulationResult simulate(const SpectralField& u0, double t_end, double dt, int record_every) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw ConfigError("simulate needs dt > 0 and t_end > 0");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  long steps = std::lround(t_end / dt);
  if (steps < 1 || std::abs(steps * dt - t_end) > 1e-9 * t_end) steps = static_cast<long>(std::ceil(t_end / dt));
  const double h = t_end / static_cast<double>(steps);

  SimulationResult res;
  res.trajectory.grid = u0.grid;
  auto record = [&](double t, const SpectralField& f) {
    res.trajectory.times.push_back(t);
    res.trajectory.states.push_back(f);
    res.ledger.times.push_back(t);
    res.ledger.mass.push_back(mass(f));
    res.ledger.energy.push_back(energy(f));
  };

  SpectralField u = u0;
  record(0.0, u);
  Stepper stepper(u0.grid, h);
  for (long n = 1; n <= steps; ++n) {
    stepper.advance(u);
    if (!all_finite(u)) {
      const double last = (n - 1) * h;
      throw BlowUpError(last, "non-finite state after t = " + std::to_string(last));
    }
    if (n % record_every == 0 || n == steps) record(n == steps ? t_end : n * h, u);
  }
  return res;
}

}  // namespace mzk
