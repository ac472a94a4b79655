#include "mzk/padded.hpp"

#include "mzk/errors.hpp"
#include "mzk/fft.hpp"

namespace mzk {

PaddedTransform::PaddedTransform(const Grid& g, int factor)
    : base_(g), factor_(factor), nx_(g.nx * factor), ny_(g.ny * factor), work_(size()) {
  if (factor < 1) throw ConfigError("padding factor must be >= 1");
}

cplx* PaddedTransform::load(const SpectralField& f) {
  std::fill(work_.begin(), work_.end(), cplx(0.0, 0.0));
  const Grid& g = base_;
  for (int i = 0; i < g.nx; ++i) {
    const int k = g.kx(i);
    const bool split_x = g.x_nyquist(i) && factor_ > 1;
    for (int j = 0; j < g.ny; ++j) {
      const cplx c = f.coeffs[static_cast<std::size_t>(i) * g.ny + j];
      if (c == cplx(0.0, 0.0)) continue;
      const int q = g.ky(j);
      const bool split_y = g.y_nyquist(j) && factor_ > 1;
      const double w = (split_x ? 0.5 : 1.0) * (split_y ? 0.5 : 1.0);
      for (int a = 0; a < (split_x ? 2 : 1); ++a) {
        const int kk = a ? -k : k;
        const int pi = kk < 0 ? kk + nx_ : kk;
        for (int b = 0; b < (split_y ? 2 : 1); ++b) {
          const int qq = b ? -q : q;
          const int pj = qq < 0 ? qq + ny_ : qq;
          work_[static_cast<std::size_t>(pi) * ny_ + pj] += w * c;
        }
      }
    }
  }
  fft::transform_2d(work_.data(), nx_, ny_, +1);
  return work_.data();
}

void PaddedTransform::to_physical(const SpectralField& f, std::vector<double>& out) {
  load(f);
  out.resize(size());
  for (std::size_t n = 0; n < work_.size(); ++n) out[n] = work_[n].real();
}

void PaddedTransform::to_spectral(const std::vector<double>& values, SpectralField& out) {
  for (std::size_t n = 0; n < work_.size(); ++n) work_[n] = cplx(values[n], 0.0);
  store(out);
}

void PaddedTransform::store(SpectralField& out) {
  for (auto& c : work_) c = cplx(c.real(), 0.0);
  fft::transform_2d(work_.data(), nx_, ny_, -1);
  const double norm = 1.0 / static_cast<double>(size());
  double total = 0.0;
  for (auto& c : work_) {
    c *= norm;
    total += std::norm(c);
  }
  const Grid& g = base_;
  if (!out.grid.same_shape(g)) out = SpectralField(g);
  double kept = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const int k = g.kx(i);
    const int pi = k < 0 ? k + nx_ : k;
    for (int j = 0; j < g.ny; ++j) {
      cplx& dst = out.coeffs[static_cast<std::size_t>(i) * g.ny + j];
      if (g.x_nyquist(i) || g.y_nyquist(j)) {
        dst = cplx(0.0, 0.0);
        continue;
      }
      const int q = g.ky(j);
      const int pj = q < 0 ? q + ny_ : q;
      dst = work_[static_cast<std::size_t>(pi) * ny_ + pj];
      kept += std::norm(dst);
    }
  }
  truncation_loss_ = total > 0.0 ? (total - kept) / total : 0.0;
}

}  // namespace mzk
