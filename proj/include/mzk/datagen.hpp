#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzk/spectral.hpp"

namespace mzk {

struct DataParams {
  double amplitude = 1.0;
  double speed = 1.0;      // soliton speed c
  double x0 = -1.0;        // centre; negative means lx / 2
  double width = 4.0;      // x-width of gaussian and smooth bumps
  int shell = 8;           // dyadic level for dyadic-shell
  double h1_norm = 0.5;    // target H^1 norm for smooth
};

// zero, soliton, gaussian, dyadic-shell, smooth.
const std::vector<std::string>& data_kinds();

// sqrt(2c) sech(sqrt(c) (x - x0)).
double soliton_profile(double x, double c, double x0);

// soliton: amplitude * soliton_profile, independent of y.
// gaussian: amplitude * exp(-(x-x0)^2 / width^2 - 2 sin^2((y - pi)/2)).
// dyadic-shell: independent complex normals of unit variance times
//   amplitude on every non-Nyquist mode with |(xi,q)| in I_shell, made
//   Hermitian by pairing each mode with its reflection.
// smooth: exp(-(x-x0)^2 / (2 width^2)) sum_{m<3} a_m cos(m y + theta_m) with
//   normal a_m and uniform theta_m, rescaled to the requested H^1 norm.
// Deterministic in (kind, grid, seed, params). Throws ConfigError on an
// unknown kind.
SpectralField generate_data(const std::string& kind, const Grid& g, std::uint64_t seed, const DataParams& p = {});

}  // namespace mzk
