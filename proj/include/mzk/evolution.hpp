#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mzk/padded.hpp"
#include "mzk/spectral.hpp"

namespace mzk {

struct Trajectory {
  Grid grid;
  std::vector<double> times;
  std::vector<SpectralField> states;
};

struct ConservationLedger {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
};

// Table of exp(i t omega) in storage order (alias-averaged on Nyquist modes).
std::vector<cplx> propagator_table(const Grid& g, double t);
SpectralField free_propagate(const SpectralField& f, double t);

// Spectral d/dx(u^3) and its linearization 3 d/dx(u^2 v), both exact for
// the retained modes via 2x padding. Holds scratch; one instance per thread.
class CubicTerm {
 public:
  explicit CubicTerm(const Grid& g);
  void eval(const SpectralField& u, SpectralField& out);
  void eval_linearized(const SpectralField& u, const SpectralField& v, SpectralField& out);

 private:
  PaddedTransform pad_;
  std::vector<double> a_;
  std::vector<cplx> dx_;
};

SpectralField nonlinearity(const SpectralField& f);

using State = std::vector<SpectralField>;
using RightHandSide = std::function<void(const State& in, State& out)>;

// Lawson integrating-factor RK4 for d/dt c = i omega c + R(c), applied to
// every component of the state with the same linear part.
class IfRk4 {
 public:
  IfRk4(const Grid& g, double dt);
  void advance(State& state, const RightHandSide& rhs);
  double dt() const { return dt_; }

 private:
  double dt_;
  std::vector<cplx> half_;
  std::vector<cplx> full_;
  State k1_, k2_, k3_, k4_, tmp_;
};

// mZK stepper: one IF-RK4 step of c_t = i omega c - F[d/dx u^3].
class Stepper {
 public:
  Stepper(const Grid& g, double dt);
  void advance(SpectralField& f);
  double dt() const { return rk_.dt(); }

 private:
  IfRk4 rk_;
  CubicTerm cubic_;
  State state_;
};

SpectralField step(const SpectralField& f, double dt);

// 0.5 / max |omega| over the retained modes.
double default_dt(const Grid& g);

struct SimulationResult {
  Trajectory trajectory;
  ConservationLedger ledger;
};

// Steps with the largest dt' <= dt dividing t_end; records every
// `record_every` steps and at t_end. Throws BlowUpError on non-finite state.
SimulationResult simulate(const SpectralField& u0, double t_end, double dt, int record_every);

double mass(const SpectralField& f);
double energy(const SpectralField& f);

// u -> lambda u(lambda x, lambda y) for lambda = m or 1/m with m integer.
// Output grid: same nx, lx/lambda, ny scaled by lambda when that stays a
// power of two >= 4 (else unchanged). Throws ConfigError if an occupied mode
// has no image on the output grid.
SpectralField rescale(const SpectralField& f, double lambda);
PhysicalField rescale(const PhysicalField& u, double lambda);

struct ConservationCheck {
  ConservationLedger ledger;
  double mass_drift = 0.0;    // max |m(t) - m(0)| / |m(0)|
  double energy_drift = 0.0;  // max |E(t) - E(0)| / |E(0)|
};

ConservationCheck check_conservation(const SpectralField& u0, double t_end, double dt, int record_every);

struct ScalingCheck {
  std::vector<double> times;       // times of the rescaled run
  std::vector<double> rel_error;   // ||v(t) - (u)_lambda(t)|| / ||(u)_lambda(t)||
  double max_rel_error = 0.0;
};

// Runs u from u0 to lambda^3 t_end with step lambda^3 dt and v from
// rescale(u0, lambda) to t_end with step dt, comparing v against the rescaled
// u at every recorded time. Both runs take the same number of steps.
ScalingCheck check_scaling(const SpectralField& u0, double lambda, double t_end, double dt, int record_every);

// Integral from the origin node to every node of a uniform grid with step h,
// using composite Simpson, a 3/8 panel for odd counts and a three-point
// start for the first node. Runs outward in both directions.
std::vector<SpectralField> cumulative_integral(const std::vector<SpectralField>& g, double h,
                                               std::size_t origin);

// Phi(u0, u)(t) = eta(t) S(t) u0 - eta(t/T) S(t) int_0^t S(-t') d/dx(u^3)(t') dt'
// on the uniform times of `traj`, which must contain t = 0.
Trajectory duhamel_apply(const SpectralField& u0, const Trajectory& traj, double T);

struct PicardOptions {
  double s = 1.1;
  double delta = 0.05;
  int samples_per_T = 64;
};

struct PicardResult {
  std::vector<Trajectory> iterates;
  std::vector<double> diff_norms;  // ||u(n+1) - u(n)|| in X^{s,1/2+delta}
  std::vector<double> ratios;      // diff_norms[n+1] / diff_norms[n]
  bool converged = false;          // differences vanished identically
  bool diverged = false;           // ratio > 1 three times in a row
  int divergence_index = -1;
};

// Uniform times on [-2T, 2T) with samples_per_T nodes per unit T.
std::vector<double> picard_times(double T, int samples_per_T);
Trajectory free_solution(const SpectralField& u0, const std::vector<double>& times);
PicardResult picard_iterate(const SpectralField& u0, double T, int n_iter,
                            const PicardOptions& opt = {});

}  // namespace mzk
