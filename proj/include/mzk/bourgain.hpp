#pragma once

#include <map>
#include <string>
#include <vector>

#include "mzk/spectral.hpp"

namespace mzk {

// Time samples u(t_m), t_m = -T_w + 2 T_w m / nt, and the temporal DFT of
// the interaction-frame profile p(t) = S(-t) u(t):
//   a_j = (1/nt) sum_m p(t_m) exp(-i sigma_j t_m),  sigma_j = pi l(j) / T_w,
// with l(j) in FFT order. sigma is the modulation tau - omega(xi,q).
// tau_coeffs[j * modes + n] pairs row j with spatial mode n.
struct SpaceTimeField {
  Grid grid;
  double t_window = 0.0;
  int nt = 0;
  std::vector<SpectralField> time_samples;
  std::vector<cplx> tau_coeffs;

  double time(int m) const { return -t_window + 2.0 * t_window * m / nt; }
  int sigma_index(int j) const { return j < nt / 2 ? j : j - nt; }
  double sigma(int j) const;
  // Node holding t = 0.
  int origin() const { return nt / 2; }
};

// nt must be an even number >= 4; all samples share one grid.
SpaceTimeField make_space_time(std::vector<SpectralField> samples, double t_window);
// Samples a callable t -> field on the window.
template <class F>
SpaceTimeField sample_window(double t_window, int nt, F&& at) {
  std::vector<SpectralField> samples;
  samples.reserve(nt);
  for (int m = 0; m < nt; ++m) samples.push_back(at(-t_window + 2.0 * t_window * m / nt));
  return make_space_time(std::move(samples), t_window);
}

void refresh_tau(SpaceTimeField& u);
void refresh_samples(SpaceTimeField& u);

SpaceTimeField operator-(const SpaceTimeField& a, const SpaceTimeField& b);
SpaceTimeField scaled(const SpaceTimeField& a, double s);

// phi_N(|(xi,q)|) multiplier.
SpectralField littlewood_paley(const SpectralField& f, double N);
SpaceTimeField littlewood_paley(const SpaceTimeField& u, double N);
// phi_L(|tau - omega|) multiplier on the modulation grid.
SpaceTimeField modulation_project(const SpaceTimeField& u, double L);

// sqrt(2 T_w lx 2pi sum_{j,n} <sigma_j>^(2b) <|(xi,q)|>^(2s) |a_{j,n}|^2),
// <x> = 1 + |x|.
double xsb_norm(const SpaceTimeField& u, double s, double b);

// Multiplies samples by eta(t/T) and recomputes the modulation coefficients.
SpaceTimeField time_cutoff(const SpaceTimeField& u, double T);

// Windowed free flow eta(t) S(t) u0 on the window.
SpaceTimeField windowed_free_flow(const SpectralField& u0, double t_window, int nt);

struct ProbeReport {
  std::map<std::string, double> parameters;
  std::map<std::string, std::string> labels;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// Sets ratio = lhs / rhs (0 when rhs is 0).
ProbeReport make_report(double lhs, double rhs, std::map<std::string, double> params = {});

// lhs = ||eta(t/T) u||_{X^{s,b'}}, rhs = T^(b-b') ||u||_{X^{s,b}} per T.
std::vector<ProbeReport> probe_time_localization(const SpaceTimeField& u, double s, double b, double bp,
                                                 const std::vector<double>& T_list);
// lhs = ||eta(t/T) int_0^t S(t-t') F(t') dt'||_{X^{s,b}},
// rhs = T^(1-b+b') ||F||_{X^{s,b'}}.
ProbeReport probe_inhomogeneous(const SpaceTimeField& F, double s, double b, double bp, double T);
// lhs = ||eta(t) S(t) u0||_{X^{s,b}}, rhs = ||u0||_{H^s}.
ProbeReport probe_homogeneous(const SpectralField& u0, double s, double b, double t_window, int nt);
// lhs = ||d/dx(u1 u2 u3)||_{X^{s,-1/2+3 delta}}, rhs = prod ||u_j||_{X^{s,1/2+delta}}.
// The product is formed on the 2x padded grid and truncated to the base
// grid; the discarded fraction is reported as parameter "truncation_loss".
ProbeReport probe_trilinear(const SpaceTimeField& u1, const SpaceTimeField& u2, const SpaceTimeField& u3,
                            double s, double delta);

// Least-squares slope of log(ratio) against log(N) over positive ratios.
double log_log_slope(const std::vector<double>& N, const std::vector<double>& ratio);

}  // namespace mzk
