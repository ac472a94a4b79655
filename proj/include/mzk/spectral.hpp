#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace mzk {

using cplx = std::complex<double>;

// Discretization of R x T: x has period lx, y has period 2*pi.
// Mode storage is FFT order: index i holds k = i for i < nx/2 and k = i - nx
// otherwise; likewise for q. Flat index is i * ny + j.
struct Grid {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  std::vector<double> xi;  // xi[i] = 2*pi*k(i)/lx
  std::vector<int> q;      // q[j]

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  double dxi() const;
  int kx(int i) const { return i < nx / 2 ? i : i - nx; }
  int ky(int j) const { return j < ny / 2 ? j : j - ny; }
  // Storage index of signed wavenumbers; both must lie in [-n/2, n/2).
  std::size_t index(int k, int qq) const;
  double x(int i) const { return lx * i / nx; }
  double y(int j) const;
  bool x_nyquist(int i) const { return i == nx / 2; }
  bool y_nyquist(int j) const { return j == ny / 2; }
  bool same_shape(const Grid& o) const { return nx == o.nx && ny == o.ny && lx == o.lx; }
};

// Throws ConfigError unless nx, ny are powers of two >= 4 and lx > 0.
Grid make_grid(int nx, int ny, double lx);

struct PhysicalField {
  Grid grid;
  std::vector<double> values;  // values[i * ny + j] = u(x_i, y_j)

  PhysicalField() = default;
  explicit PhysicalField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.ny + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.ny + j]; }
};

struct SpectralField {
  Grid grid;
  std::vector<cplx> coeffs;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size(), cplx(0.0, 0.0)) {}
  cplx& mode(int k, int qq) { return coeffs[grid.index(k, qq)]; }
  cplx mode(int k, int qq) const { return coeffs[grid.index(k, qq)]; }
};

SpectralField forward_transform(const PhysicalField& u);
// Throws DomainError when Hermitian symmetry is violated above 1e-6 relative.
PhysicalField inverse_transform(const SpectralField& f);

// max |c(k,q) - conj c(-k,-q)| / max |c|, pairing Nyquist modes with themselves.
double hermitian_defect(const SpectralField& f);
// Largest |Im u| relative to max |u| after an unchecked inverse transform.
double imaginary_residue(const SpectralField& f);

inline double dispersion_symbol(double xi, double q) { return xi * xi * xi + xi * q * q; }
double weighted_modulus(double xi, double q);

using Symbol = std::function<cplx(double xi, int q)>;
using RealSymbol = std::function<double(double xi, int q)>;

// Multiplier tables in storage order. On Nyquist rows/columns the symbol is
// averaged over the alias set {+-nx/2} x {+-ny/2}, so symbols with
// m(-xi,-q) = conj m(xi,q) map Hermitian data to Hermitian data.
std::vector<cplx> symbol_table(const Grid& g, const Symbol& m);
std::vector<double> real_symbol_table(const Grid& g, const RealSymbol& m);

SpectralField apply_symbol(const SpectralField& f, const Symbol& m);
void apply_table(SpectralField& f, const std::vector<cplx>& table);
void apply_table(SpectralField& f, const std::vector<double>& table);

// Multiplier (1 + |(xi,q)|^2)^(s/2).
SpectralField bessel_potential(const SpectralField& f, double s);
// Multiplier |(xi,q)|^s; the zero mode maps to 0 for s > 0. For s < 0 a
// nonzero mean is a DomainError.
SpectralField riesz_potential(const SpectralField& f, double s);

// sqrt(lx * 2*pi * sum (1 + |(xi,q)|)^(2s) |c|^2).
double sobolev_norm(const SpectralField& f, double s);
double l2_norm(const SpectralField& f);
// Rectangle-rule L2 norm over [0,lx) x [0,2*pi).
double l2_norm(const PhysicalField& u);

// Elementwise helpers on fields sharing a grid.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);

// Fraction of squared L2 mass outside the central half of the x-period.
double tail_fraction(const PhysicalField& u);

}  // namespace mzk
