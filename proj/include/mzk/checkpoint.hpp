#pragma once

#include <string>

#include "mzk/spectral.hpp"

namespace mzk {

// Binary layout: "MZKC", u32 version, u32 nx, u32 ny, f64 lx, f64 t, then
// nx*ny complex values as little-endian f64 (re, im) pairs with k running
// from -nx/2 to nx/2-1 in the outer loop and q from -ny/2 to ny/2-1 inner.
constexpr unsigned kCheckpointVersion = 1;

struct Checkpoint {
  SpectralField field;
  double t = 0.0;
};

void write_checkpoint(const std::string& path, const SpectralField& f, double t);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace mzk
