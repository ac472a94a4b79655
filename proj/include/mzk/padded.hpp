#pragma once

#include <vector>

#include "mzk/spectral.hpp"

namespace mzk {

// Exact evaluation of trigonometric polynomials on a grid refined by an
// integer factor, and the matching truncating forward transform. Nyquist
// coefficients are split evenly over their aliases when embedded, so the
// padded field is real and agrees with the base field on base nodes.
// Instances hold scratch buffers and are not shareable across threads.
class PaddedTransform {
 public:
  explicit PaddedTransform(const Grid& g, int factor = 2);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  const Grid& base() const { return base_; }

  // Evaluates f on the padded grid into the internal complex buffer
  // (real parts hold u, imaginary parts are round-off) and returns it.
  cplx* load(const SpectralField& f);
  // Treats the internal buffer as padded physical values and transforms
  // back, keeping base modes with |k| < nx/2 and |q| < ny/2; base Nyquist
  // modes are set to zero.
  void store(SpectralField& out);
  cplx* buffer() { return work_.data(); }

  // Padded physical values, layout i * ny() + j.
  void to_physical(const SpectralField& f, std::vector<double>& out);
  // store() applied to the given real values.
  void to_spectral(const std::vector<double>& values, SpectralField& out);
  // Squared-coefficient mass of the last stored input that fell
  // outside the retained modes, relative to the total.
  double last_truncation_loss() const { return truncation_loss_; }

 private:
  Grid base_;
  int factor_;
  int nx_;
  int ny_;
  std::vector<cplx> work_;
  double truncation_loss_ = 0.0;
};

}  // namespace mzk
