#pragma once

#include <cstdint>
#include <vector>

#include "mzk/bourgain.hpp"
#include "mzk/evolution.hpp"

namespace mzk {

struct ProbeConfig {
  double s = 1.1;
  double delta = 0.05;
  double T = 0.1;
  double r = 0.1;
  std::uint64_t seed = 0;
  double dt = 1e-3;
  int record_every = 1;
};

// Throws ConfigError unless s > 1, 0 < delta < 1/6, T > 0, r >= 0, dt > 0.
void validate(const ProbeConfig& cfg);

// One report per Picard ratio: lhs = ||u(n+2)-u(n+1)||, rhs = ||u(n+1)-u(n)||.
// Label "verdict" is contractive, not-contractive or diverged.
std::vector<ProbeReport> contraction_probe(const SpectralField& u0, const ProbeConfig& cfg, int n_iter = 6);

// Largest T in the list (scanned upward) for which every Picard ratio is
// below 1; 0 when none is.
double largest_contractive_T(const SpectralField& u0, const ProbeConfig& cfg, const std::vector<double>& T_list,
                             int n_iter = 4);

struct TangentFlow {
  Trajectory u;
  Trajectory v;
};

// Solves u_t = -d_x Lap u - d_x(u^3) and v_t = -d_x Lap v - 3 d_x(u^2 v)
// together with the IF-RK4 stepper.
TangentFlow linearized_flow(const SpectralField& u0, const SpectralField& w, double t_end, double dt,
                            int record_every);

// max over recorded times of ||a(t) - b(t)||_{H^s}.
double sup_distance(const Trajectory& a, const Trajectory& b, double s);

// Per (direction, eps): lhs = sup_t ||S(u0+eps w) - S(u0)||_{H^s},
// rhs = eps ||w||_{H^s}. Ordered direction-major.
std::vector<ProbeReport> lipschitz_probe(const SpectralField& u0, const std::vector<SpectralField>& directions,
                                         const std::vector<double>& eps_list, const ProbeConfig& cfg);

// lhs = sup_t ||(S(u0+eps w) - S(u0))/eps - v||_{H^s}, rhs = sup_t ||v||_{H^s}.
ProbeReport derivative_probe(const SpectralField& u0, const SpectralField& w, double eps, const ProbeConfig& cfg);

// lhs = sup_t ||u(t)||_{H^s} on [0, T], rhs = ||u0||_{H^s}; parameter
// "modulus" = max over consecutive records of ||u(t+dt) - u(t)||_{H^s}.
ProbeReport persistence_check(const SpectralField& u0, const ProbeConfig& cfg);

}  // namespace mzk
