#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mzk/spectral.hpp"

// Trilinear ratio for Gaussian wave packets on R x T, evaluated with
// continuous x-frequency. Each input is a windowed free flow
//   u(t) = eta(t / t_cut) S(t) f,  f = 2 Re[exp(i phase) exp(i q y) v(x)],
//   v^(xi) = g(xi - xi0),  g(k) = exp(-k^2 width^2 / 2) exp(-i k x0) phi_N(|(xi0 + k, q)|),
// and norms follow the same convention as xsb_norm on a periodic grid, so
// the ratio agrees with probe_trilinear on a grid wide enough to hold the
// packets. Packets separate at speed |(xi,q)|^2, so only the time interval on
// which all three overlap is sampled.
namespace mzk {

struct WavePacket {
  double xi = 0.0;
  int q = 1;  // never 0, so a packet and its conjugate sit on different rows
  double phase = 0.0;
  double x0 = 0.0;
  int shell = 1;
};

struct PacketShape {
  double width = 4.0;
  double t_cut = 0.25;
  double phi_floor = 0.3;  // minimum phi_N at the packet centre when drawing
  int time_pad = 64;       // sigma oversampling of the output spectrum (>= 2)
};

enum class Regime { LLL_L, HLL_H, HHL_L, HHL_H, HHH_L, HHH_H };

const std::array<Regime, 6>& all_regimes();
std::string regime_name(Regime r);  // e.g. "HLL->H"
Regime parse_regime(const std::string& name);
// Input shells (N1, N2, N3) at sweep level N.
std::array<int, 3> regime_shells(Regime r, int N);
// Output multiplier: 1 for LLL->L, 1 - chi(4r/N) for ->H, chi(r/2) for ->L.
double regime_output_multiplier(Regime r, int N, double modulus);

cplx packet_profile(const WavePacket& p, const PacketShape& shape, double k);

struct PacketTrilinear {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  // lhs^2 split by modulation: bin 0 holds |sigma| < 2, bin l >= 1 holds
  // [2^l, 2^(l+1)).
  std::vector<double> l_energy;
  int time_samples = 0;
};

using OutputMultiplier = std::function<double(double modulus)>;

// lhs = ||m(D) d/dx(u1 u2 u3)||_{X^{s,-1/2+3 delta}}, rhs = prod ||u_j||_{X^{s,1/2+delta}}.
PacketTrilinear packet_trilinear(const std::array<WavePacket, 3>& p, const OutputMultiplier& m, double s,
                                 double delta, const PacketShape& shape = {});

// Deterministic draw for (seed, sample, regime); the random stream does not
// depend on N. Low-output regimes pair frequencies so the sum is small.
std::array<WavePacket, 3> draw_packets(Regime r, int N, std::uint64_t seed, int sample,
                                       const PacketShape& shape = {});

// The packet as a field on a periodic grid, centred at lx/2 + x0.
SpectralField packet_field(const WavePacket& p, const Grid& g, const PacketShape& shape = {});

// "L1:0.5;L2:0.25;..." fractions of the total, up to the last bin above
// 1e-12 of the total.
std::string l_profile_string(const std::vector<double>& l_energy);

struct PacketSweepConfig {
  double s = 1.1;
  double delta = 0.05;
  int n_max = 64;
  int samples = 3;
  std::uint64_t seed = 0;
  PacketShape shape;
  std::vector<Regime> regimes;  // empty means all six
};

struct RegimeRow {
  Regime regime = Regime::LLL_L;
  int N = 0;
  std::array<int, 3> shells{};
  double lhs = 0.0;    // mean over samples
  double rhs = 0.0;    // mean over samples
  double ratio = 0.0;  // mean of per-sample ratios
  std::string l_profile;
  int samples = 0;
};

struct RegimeTrend {
  Regime regime = Regime::LLL_L;
  double slope = 0.0;  // least squares of log mean ratio on log N
  bool growth = false;  // slope > 0.1
};

struct PacketSweep {
  std::vector<RegimeRow> rows;
  std::vector<RegimeTrend> trends;
};

// N runs over 2, 4, ..., n_max. Parallel over (regime, N, sample).
PacketSweep packet_sweep(const PacketSweepConfig& cfg);

}  // namespace mzk
