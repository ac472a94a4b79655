#include <cmath>

#include "mzk/evolution.hpp"
#include "mzk/simd.hpp"

namespace mzk {

std::vector<cplx> propagator_table(const Grid& g, double t) {
  return symbol_table(g, [t](double xi, int q) { return std::polar(1.0, t * dispersion_symbol(xi, q)); });
}

SpectralField free_propagate(const SpectralField& f, double t) {
  SpectralField out = f;
  if (t == 0.0) return out;
  apply_table(out, propagator_table(f.grid, t));
  return out;
}

CubicTerm::CubicTerm(const Grid& g) : pad_(g, 2) {
  dx_ = symbol_table(g, [](double xi, int) { return cplx(0.0, xi); });
}

void CubicTerm::eval(const SpectralField& u, SpectralField& out) {
  cplx* w = pad_.load(u);
  simd::cube_real(w, pad_.size());
  pad_.store(out);
  simd::mul(out.coeffs.data(), dx_.data(), out.coeffs.size());
}

void CubicTerm::eval_linearized(const SpectralField& u, const SpectralField& v, SpectralField& out) {
  pad_.to_physical(u, a_);
  cplx* w = pad_.load(v);
  for (std::size_t n = 0; n < a_.size(); ++n) w[n] = cplx(3.0 * a_[n] * a_[n] * w[n].real(), 0.0);
  pad_.store(out);
  simd::mul(out.coeffs.data(), dx_.data(), out.coeffs.size());
}

SpectralField nonlinearity(const SpectralField& f) {
  CubicTerm term(f.grid);
  SpectralField out(f.grid);
  term.eval(f, out);
  return out;
}

double default_dt(const Grid& g) {
  double peak = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) peak = std::max(peak, std::abs(dispersion_symbol(g.xi[i], g.q[j])));
  return peak > 0.0 ? 0.5 / peak : 1.0;
}

}  // namespace mzk
