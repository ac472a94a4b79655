#include "mzk/packets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>

#include "mzk/bourgain.hpp"
#include "mzk/cutoff.hpp"
#include "mzk/errors.hpp"
#include "mzk/fft.hpp"
#include "mzk/parallel.hpp"
#include "mzk/rng.hpp"

namespace mzk {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Profiles are kept on |k| <= kSupport / width; exp(-32) relative amplitude.
constexpr double kSupport = 8.0;
const double kOutSupport = std::sqrt(3.0) * kSupport;
// Frequency box used to bound the resonance spread.
constexpr double kBandBox = 6.0;
// Complex values held by the padded temporal transform at once.
constexpr std::size_t kScratchBudget = std::size_t(1) << 23;

double omega(double xi, double q) { return xi * xi * xi + xi * q * q; }
double modulus(double xi, double q) { return std::sqrt(3.0 * xi * xi + q * q); }

std::size_t pow2_at_least(double x) {
  std::size_t n = 1;
  while (static_cast<double>(n) < x) n <<= 1;
  return n;
}

// Smallest 2^a 3^b 5^c 7^d >= n.
std::size_t fast_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return m;
  }
}

std::int64_t wrap(std::int64_t m, std::int64_t n) {
  const std::int64_t r = m % n;
  return r < 0 ? r + n : r;
}

// Integral of <sigma>^(2b) |E^(sigma)|^2 over sigma for E = eta(t / t_cut).
double window_energy(double t_cut, double b) {
  const int n = 1024, pad = 128;
  const double dt = 4.0 * t_cut / n;
  std::vector<cplx> e(static_cast<std::size_t>(n) * pad, cplx(0.0, 0.0));
  for (int k = 0; k < n; ++k) e[k] = eta((-2.0 * t_cut + k * dt) / t_cut);
  const int nf = n * pad;
  fft::transform_1d(e.data(), nf, -1);
  const double dsigma = kTwoPi / (nf * dt);
  double sum = 0.0;
  for (int l = 0; l < nf; ++l) {
    const double sigma = (l < nf / 2 ? l : l - nf) * dsigma;
    sum += std::pow(1.0 + std::abs(sigma), 2.0 * b) * std::norm(dt * e[l]);
  }
  return sum * dsigma;
}

// Integral of <|(xi0+k, q)|>^(2s) |g(k)|^2 dk.
double profile_energy(const WavePacket& p, const PacketShape& shape, double s) {
  const int n = 4001;
  const double half = kSupport / shape.width, dk = 2.0 * half / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = -half + i * dk;
    sum += std::pow(1.0 + modulus(p.xi + k, p.q), 2.0 * s) * std::norm(packet_profile(p, shape, k));
  }
  return sum * dk;
}

struct Component {
  int q = 0;
  std::int64_t m0 = 0;  // lattice index of values[0]
  std::vector<cplx> values;
  std::vector<double> omegas;
};

struct Combo {
  std::array<int, 3> comp{};
  int q_out = 0;
  std::int64_t lo = 0, hi = 0;  // output lattice range
};

struct Group {
  int q_out = 0;
  std::vector<int> combos;
  std::vector<std::int64_t> columns;  // output lattice indices with nonzero weight
  std::vector<double> weight;         // xi^2 <|(xi,q)|>^(2s) m^2 per column
  double h_ref = 0.0;
};

struct Track {
  double x0, speed, xi;
};

double spread(const Track& tr, double t, double w) {
  const double a = 6.0 * tr.xi * t / w, c = 6.0 * t / (w * w);
  return std::sqrt(w * w + a * a + c * c);
}

bool overlapping(const std::array<Track, 3>& tr, double t, double w) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double d = std::abs((tr[i].x0 - tr[i].speed * t) - (tr[j].x0 - tr[j].speed * t));
      if (d > kSupport * (spread(tr[i], t, w) + spread(tr[j], t, w))) return false;
    }
  return true;
}

int l_bin(double sigma) {
  const double a = std::abs(sigma);
  return a < 2.0 ? 0 : static_cast<int>(std::floor(std::log2(a)));
}

}  // namespace

const std::array<Regime, 6>& all_regimes() {
  static const std::array<Regime, 6> r{Regime::LLL_L, Regime::HLL_H, Regime::HHL_L,
                                       Regime::HHL_H, Regime::HHH_L, Regime::HHH_H};
  return r;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::LLL_L: return "LLL->L";
    case Regime::HLL_H: return "HLL->H";
    case Regime::HHL_L: return "HHL->L";
    case Regime::HHL_H: return "HHL->H";
    case Regime::HHH_L: return "HHH->L";
    case Regime::HHH_H: return "HHH->H";
  }
  return "?";
}

Regime parse_regime(const std::string& name) {
  for (Regime r : all_regimes())
    if (regime_name(r) == name) return r;
  throw ConfigError("unknown regime '" + name + "'");
}

std::array<int, 3> regime_shells(Regime r, int N) {
  switch (r) {
    case Regime::LLL_L: return {1, 1, 1};
    case Regime::HLL_H: return {N, 1, 1};
    case Regime::HHL_L:
    case Regime::HHL_H: return {N, N, 1};
    case Regime::HHH_L:
    case Regime::HHH_H: return {N, N, N};
  }
  return {1, 1, 1};
}

double regime_output_multiplier(Regime r, int N, double mod) {
  switch (r) {
    case Regime::LLL_L: return 1.0;
    case Regime::HHL_L:
    case Regime::HHH_L: return chi(mod / 2.0);
    default: return 1.0 - chi(4.0 * mod / N);
  }
}

cplx packet_profile(const WavePacket& p, const PacketShape& shape, double k) {
  const double w = shape.width;
  const double amp = std::exp(-0.5 * k * k * w * w) * phi_dyadic(modulus(p.xi + k, p.q), p.shell);
  return std::polar(amp, -k * p.x0);
}

PacketTrilinear packet_trilinear(const std::array<WavePacket, 3>& p, const OutputMultiplier& mult, double s,
                                 double delta, const PacketShape& shape) {
  if (!(s > 1.0)) throw ConfigError("packet probe needs s > 1");
  if (!(delta > 0.0 && delta < 1.0 / 6.0)) throw ConfigError("packet probe needs 0 < delta < 1/6");
  if (!(shape.width > 0.0) || !(shape.t_cut > 0.0) || shape.time_pad < 2)
    throw ConfigError("bad packet shape");
  for (const auto& w : p)
    if (w.q == 0 || !is_dyadic(w.shell)) throw ConfigError("packets need q != 0 and a dyadic shell");

  const double b_in = 0.5 + delta, b_out = -0.5 + 3.0 * delta;
  const double tc = shape.t_cut, w = shape.width;
  PacketTrilinear res;

  const double e_in = window_energy(tc, b_in);
  res.rhs = 1.0;
  for (const auto& wp : p) res.rhs *= std::sqrt(2.0 * e_in * profile_energy(wp, shape, s) / kTwoPi);

  std::array<Track, 3> tracks;
  for (int j = 0; j < 3; ++j) tracks[j] = {p[j].x0, modulus(p[j].xi, p[j].q) * modulus(p[j].xi, p[j].q), p[j].xi};

  // Interval on which the three packets overlap.
  const int nscan = 4001;
  const double tscan = 4.0 * tc / (nscan - 1);
  int first = -1, last = -1;
  for (int i = 0; i < nscan; ++i)
    if (overlapping(tracks, -2.0 * tc + i * tscan, w)) {
      if (first < 0) first = i;
      last = i;
    }
  if (first < 0) return res;
  double ta = -2.0 * tc + std::max(first - 1, 0) * tscan;
  double tb = -2.0 * tc + std::min(last + 1, nscan - 1) * tscan;

  for (int attempt = 0;; ++attempt) {
    // Spatial period must hold all three packets at every sampled time.
    double span = 0.0;
    for (int i = 0; i <= 256; ++i) {
      const double t = ta + (tb - ta) * i / 256.0;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo, sd = 0.0;
      for (const auto& tr : tracks) {
        const double x = tr.x0 - tr.speed * t;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        sd = std::max(sd, spread(tr, t, w));
      }
      span = std::max(span, hi - lo + 2.0 * kSupport * sd);
    }
    // Images sit one period away, so a period of span keeps every pair kSupport
    // spreads apart.
    const double period = static_cast<double>(pow2_at_least(std::max(span, 64.0)));
    const double dk = kTwoPi / period;
    const double half = kSupport / w;

    std::array<Component, 6> comps;
    std::int64_t total_len = 0;
    for (int j = 0; j < 3; ++j) {
      std::int64_t longest = 0;
      for (int e = 0; e < 2; ++e) {
        const double sign = e == 0 ? 1.0 : -1.0;
        const double centre = sign * p[j].xi;
        Component& c = comps[2 * j + e];
        c.q = e == 0 ? p[j].q : -p[j].q;
        c.m0 = static_cast<std::int64_t>(std::ceil((centre - half) / dk));
        const auto m1 = static_cast<std::int64_t>(std::floor((centre + half) / dk));
        const cplx amp = std::polar(1.0, p[j].phase);
        for (std::int64_t m = c.m0; m <= m1; ++m) {
          const double xi = m * dk;
          const cplx v = e == 0 ? amp * packet_profile(p[j], shape, xi - p[j].xi)
                                : std::conj(amp * packet_profile(p[j], shape, -xi - p[j].xi));
          c.values.push_back(v);
          c.omegas.push_back(omega(xi, c.q));
        }
        longest = std::max<std::int64_t>(longest, static_cast<std::int64_t>(c.values.size()));
      }
      total_len += longest;
    }
    const auto nk = static_cast<std::int64_t>(pow2_at_least(static_cast<double>(total_len + 4)));

    // Sign combinations grouped by output row; only outputs with nonzero weight matter.
    std::vector<Combo> combos;
    std::vector<Group> groups;
    for (int mask = 0; mask < 8; ++mask) {
      Combo cb;
      for (int j = 0; j < 3; ++j) {
        cb.comp[j] = 2 * j + ((mask >> j) & 1);
        const Component& c = comps[cb.comp[j]];
        cb.q_out += c.q;
        cb.lo += c.m0;
        cb.hi += c.m0 + static_cast<std::int64_t>(c.values.size()) - 1;
      }
      bool relevant = false;
      for (std::int64_t m = cb.lo; m <= cb.hi && !relevant; ++m)
        relevant = mult(modulus(m * dk, cb.q_out)) != 0.0;
      if (!relevant) continue;
      auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.q_out == cb.q_out; });
      if (it == groups.end()) {
        groups.push_back({});
        groups.back().q_out = cb.q_out;
        it = groups.end() - 1;
      }
      it->combos.push_back(static_cast<int>(combos.size()));
      combos.push_back(cb);
    }
    if (groups.empty()) return res;

    double half_bw = 0.0;
    std::vector<double> h_mid(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      Group& g = groups[gi];
      // The product of three Gaussians of width 1/w has width sqrt(3)/w, so the
      // same exp(-kSupport^2/2) cut keeps |k_out| <= sqrt(3) kSupport / w.
      std::vector<std::int64_t> cols;
      for (int ci : g.combos) {
        double centre = 0.0;
        for (int j = 0; j < 3; ++j) centre += (combos[ci].comp[j] & 1) ? -p[j].xi : p[j].xi;
        for (std::int64_t m = combos[ci].lo; m <= combos[ci].hi; ++m)
          if (std::abs(m * dk - centre) <= kOutSupport / w && mult(modulus(m * dk, g.q_out)) != 0.0)
            cols.push_back(m);
      }
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      g.columns = cols;
      for (std::int64_t m : cols) {
        const double xi = m * dk, mod = modulus(xi, g.q_out), mm = mult(mod);
        g.weight.push_back(xi * xi * std::pow(1.0 + mod, 2.0 * s) * mm * mm);
      }
      double hmin = std::numeric_limits<double>::infinity(), hmax = -hmin;
      const int nb = 9;
      for (int ci : g.combos) {
        const Combo& cb = combos[ci];
        std::array<double, 3> centre, qq;
        for (int j = 0; j < 3; ++j) {
          const int e = cb.comp[j] & 1;
          centre[j] = e == 0 ? p[j].xi : -p[j].xi;
          qq[j] = comps[cb.comp[j]].q;
        }
        for (int a = 0; a < nb; ++a)
          for (int b = 0; b < nb; ++b)
            for (int c = 0; c < nb; ++c) {
              const std::array<double, 3> k{kBandBox / w * (2.0 * a / (nb - 1) - 1.0),
                                            kBandBox / w * (2.0 * b / (nb - 1) - 1.0),
                                            kBandBox / w * (2.0 * c / (nb - 1) - 1.0)};
              double xo = 0.0, h = 0.0;
              for (int j = 0; j < 3; ++j) {
                xo += centre[j] + k[j];
                h -= omega(centre[j] + k[j], qq[j]);
              }
              h += omega(xo, g.q_out);
              hmin = std::min(hmin, h);
              hmax = std::max(hmax, h);
            }
      }
      h_mid[gi] = 0.5 * (hmin + hmax);
      half_bw = std::max(half_bw, 0.5 * (hmax - hmin));
    }
    half_bw += 80.0 / tc;

    const auto n0 = static_cast<std::int64_t>(
        std::max<std::size_t>(16, pow2_at_least(4.0 * tc * 1.5 * half_bw / std::numbers::pi)));
    const double dt = 4.0 * tc / static_cast<double>(n0);
    const auto ma = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((ta + 2.0 * tc) / dt)));
    const auto mb = std::min<std::int64_t>(n0, static_cast<std::int64_t>(std::ceil((tb + 2.0 * tc) / dt)));
    const auto rows = static_cast<std::size_t>(mb - ma + 1);
    const std::size_t ncorr = fast_size(2 * rows);
    const std::size_t nfft = fast_size(static_cast<std::size_t>(shape.time_pad) * rows);
    const double dsigma = kTwoPi / (static_cast<double>(nfft) * dt);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) groups[gi].h_ref = std::round(h_mid[gi] / dsigma) * dsigma;

    std::vector<std::vector<cplx>> acc(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      acc[gi].assign(rows * groups[gi].columns.size(), cplx(0.0, 0.0));

    // Column lookup per combo: output offset -> column or -1.
    std::vector<std::vector<int>> colmap(combos.size());
    std::vector<int> combo_group(combos.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
      for (int ci : groups[gi].combos) {
        combo_group[ci] = static_cast<int>(gi);
        const Combo& cb = combos[ci];
        auto& map = colmap[ci];
        map.assign(static_cast<std::size_t>(cb.hi - cb.lo + 1), -1);
        const auto& cols = groups[gi].columns;
        for (std::int64_t m = cb.lo; m <= cb.hi; ++m) {
          auto it = std::lower_bound(cols.begin(), cols.end(), m);
          if (it != cols.end() && *it == m) map[m - cb.lo] = static_cast<int>(it - cols.begin());
        }
      }

    const double conv_scale = dk * dk / static_cast<double>(nk);
    parallel_for(rows, [&](std::size_t r) {
      const double t = -2.0 * tc + static_cast<double>(ma + static_cast<std::int64_t>(r)) * dt;
      const double e = eta(t / tc);
      const double window = e * e * e;
      if (window == 0.0) return;
      std::array<std::vector<cplx>, 6> phys;
      for (int ci = 0; ci < 6; ++ci) {
        const Component& c = comps[ci];
        phys[ci].assign(nk, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < c.values.size(); ++i)
          phys[ci][wrap(c.m0 + static_cast<std::int64_t>(i), nk)] = c.values[i] * std::polar(1.0, t * c.omegas[i]);
        fft::transform_1d(phys[ci].data(), static_cast<int>(nk), +1);
      }
      std::vector<cplx> prod(nk);
      for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const Combo& cb = combos[ci];
        const Group& g = groups[combo_group[ci]];
        for (std::int64_t n = 0; n < nk; ++n) prod[n] = phys[cb.comp[0]][n] * phys[cb.comp[1]][n] * phys[cb.comp[2]][n];
        fft::transform_1d(prod.data(), static_cast<int>(nk), -1);
        cplx* row = acc[combo_group[ci]].data() + r * g.columns.size();
        for (std::int64_t m = cb.lo; m <= cb.hi; ++m) {
          const int col = colmap[ci][m - cb.lo];
          if (col < 0) continue;
          const double phase = -t * (omega(m * dk, g.q_out) - g.h_ref);
          row[col] += prod[wrap(m, nk)] * conv_scale * window * std::polar(1.0, phase);
        }
      }
    });

    // Endpoint check: the product must have died out where sampling stops.
    double peak = 0.0, edge_a = 0.0, edge_b = 0.0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const std::size_t nc = groups[gi].columns.size();
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < nc; ++c) {
          const double a = std::abs(acc[gi][r * nc + c]);
          peak = std::max(peak, a);
          if (r == 0) edge_a = std::max(edge_a, a);
          if (r + 1 == rows) edge_b = std::max(edge_b, a);
        }
    }
    const double tol = 1e-7 * peak;
    const bool grow_a = edge_a > tol && ma > 0, grow_b = edge_b > tol && mb < n0;
    if ((grow_a || grow_b) && attempt < 8) {
      const double ext = 0.25 * (tb - ta) + 4.0 * dt;
      if (grow_a) ta = std::max(-2.0 * tc, ta - ext);
      if (grow_b) tb = std::min(2.0 * tc, tb + ext);
      continue;
    }

    double total = 0.0;
    std::vector<double> bins;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& g = groups[gi];
      const std::size_t nc = g.columns.size();
      if (nc == 0) continue;
      // sum_c weight_c |A_c(sigma)|^2 is the transform of the weighted
      // autocorrelation R(d), |d| < rows. A transform of length >= 2 rows - 1
      // recovers R without wrap-around; R is then resampled on the fine
      // sigma grid by one long transform. Column blocks bound the scratch.
      const std::size_t block = std::clamp<std::size_t>(kScratchBudget / ncorr, 1, nc);
      std::vector<cplx> scratch(ncorr * block);
      std::vector<cplx> power(ncorr, cplx(0.0, 0.0));
      for (std::size_t c0 = 0; c0 < nc; c0 += block) {
        const std::size_t nb = std::min(block, nc - c0);
        std::fill(scratch.begin(), scratch.end(), cplx(0.0, 0.0));
        for (std::size_t r = 0; r < rows; ++r)
          std::copy_n(acc[gi].data() + r * nc + c0, nb, scratch.data() + r * nb);
        fft::transform_strided(scratch.data(), static_cast<int>(ncorr), static_cast<int>(nb), -1);
        for (std::size_t l = 0; l < ncorr; ++l) {
          double sum = 0.0;
          for (std::size_t c = 0; c < nb; ++c) sum += g.weight[c0 + c] * std::norm(scratch[l * nb + c]);
          power[l] += sum;
        }
      }
      fft::transform_1d(power.data(), static_cast<int>(ncorr), +1);
      std::vector<cplx> fine(nfft, cplx(0.0, 0.0));
      const auto lag = static_cast<std::int64_t>(rows) - 1;
      for (std::int64_t d = -lag; d <= lag; ++d)
        fine[wrap(d, static_cast<std::int64_t>(nfft))] = power[wrap(d, static_cast<std::int64_t>(ncorr))];
      fft::transform_1d(fine.data(), static_cast<int>(nfft), -1);
      const double scale = dt * dt / static_cast<double>(ncorr);
      for (std::size_t l = 0; l < nfft; ++l) {
        const auto li = static_cast<std::int64_t>(l) - (l < (nfft + 1) / 2 ? 0 : static_cast<std::int64_t>(nfft));
        const double sigma = static_cast<double>(li) * dsigma - g.h_ref;
        const double ws = std::pow(1.0 + std::abs(sigma), 2.0 * b_out);
        const double contrib = ws * fine[l].real() * scale * dsigma * dk;
        total += contrib;
        const auto bin = static_cast<std::size_t>(l_bin(sigma));
        if (bins.size() <= bin) bins.resize(bin + 1, 0.0);
        bins[bin] += contrib;
      }
    }
    const double norm = std::pow(kTwoPi, -5.0);
    for (double& x : bins) x *= norm;
    res.lhs = std::sqrt(total * norm);
    res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
    res.l_energy = std::move(bins);
    res.time_samples = static_cast<int>(rows);
    return res;
  }
}

namespace {

std::optional<WavePacket> shell_packet(SplitMix64& rng, int N, const PacketShape& shape) {
  for (int tries = 0; tries < 1000; ++tries) {
    const double lo = N == 1 ? 0.0 : 5.0 * N / 8.0, hi = 8.0 * N / 5.0;
    const int qmax = static_cast<int>(std::floor(hi));
    const int q = static_cast<int>(rng.integer(-qmax, qmax));
    const double u = rng.uniform(), side = rng.uniform();
    const double phase = kTwoPi * rng.uniform(), x0 = (rng.uniform() - 0.5) * shape.width;
    if (q == 0) continue;
    const double a2 = std::max(lo * lo - q * q, 0.0) / 3.0, b2 = (hi * hi - q * q) / 3.0;
    if (b2 <= a2) continue;
    const double xi = (side < 0.5 ? -1.0 : 1.0) * std::sqrt(a2 + u * (b2 - a2));
    if (phi_dyadic(modulus(xi, q), N) < shape.phi_floor) continue;
    return WavePacket{xi, q, phase, x0, N};
  }
  return std::nullopt;
}

// A packet in shell N near the frequency (xi, q).
std::optional<WavePacket> paired_packet(SplitMix64& rng, double xi, int q, int N, const PacketShape& shape) {
  for (int tries = 0; tries < 200; ++tries) {
    const double dxi = rng.uniform() - 0.5;
    const int dq = static_cast<int>(rng.integer(-1, 1));
    const double phase = kTwoPi * rng.uniform(), x0 = (rng.uniform() - 0.5) * shape.width;
    const WavePacket wp{xi + dxi, q + dq, phase, x0, N};
    if (wp.q == 0 || phi_dyadic(modulus(wp.xi, wp.q), N) < shape.phi_floor) continue;
    return wp;
  }
  return std::nullopt;
}

std::size_t regime_index(Regime r) {
  const auto& all = all_regimes();
  return static_cast<std::size_t>(std::find(all.begin(), all.end(), r) - all.begin());
}

}  // namespace

std::array<WavePacket, 3> draw_packets(Regime r, int N, std::uint64_t seed, int sample, const PacketShape& shape) {
  if (!is_dyadic(N) || N < 1) throw ConfigError("sweep level N must be dyadic");
  SplitMix64 rng(SplitMix64::stream(seed, static_cast<std::uint64_t>(sample), regime_index(r)));
  const auto shells = regime_shells(r, N);
  for (int tries = 0; tries < 1000; ++tries) {
    auto a = shell_packet(rng, shells[0], shape);
    if (!a) continue;
    if (r == Regime::HHL_L) {
      auto b = paired_packet(rng, -a->xi, -a->q, shells[1], shape);
      auto c = shell_packet(rng, shells[2], shape);
      if (b && c) return {*a, *b, *c};
      continue;
    }
    auto b = shell_packet(rng, shells[1], shape);
    if (!b) continue;
    if (r == Regime::HHH_L) {
      auto c = paired_packet(rng, -(a->xi + b->xi), -(a->q + b->q), shells[2], shape);
      if (c) return {*a, *b, *c};
      continue;
    }
    auto c = shell_packet(rng, shells[2], shape);
    if (c) return {*a, *b, *c};
  }
  throw DomainError("could not draw packets for regime " + regime_name(r));
}

SpectralField packet_field(const WavePacket& p, const Grid& g, const PacketShape& shape) {
  if (p.q == 0 || std::abs(p.q) >= g.ny / 2) throw ConfigError("packet row does not fit the grid");
  SpectralField f(g);
  const cplx amp = std::polar(1.0, p.phase);
  const double centre = 0.5 * g.lx;
  for (int k = -g.nx / 2 + 1; k < g.nx / 2; ++k) {
    const double xi = kTwoPi * k / g.lx;
    const cplx a = amp * packet_profile(p, shape, xi - p.xi) * std::polar(1.0 / g.lx, -xi * centre);
    f.mode(k, p.q) = a;
    f.mode(-k, -p.q) = std::conj(a);
  }
  return f;
}

std::string l_profile_string(const std::vector<double>& l_energy) {
  double total = 0.0;
  for (double e : l_energy) total += e;
  std::string out;
  if (total <= 0.0) return out;
  std::size_t last = 0;
  for (std::size_t i = 0; i < l_energy.size(); ++i)
    if (l_energy[i] > 1e-12 * total) last = i + 1;
  char buf[64];
  for (std::size_t i = 0; i < last; ++i) {
    std::snprintf(buf, sizeof buf, "%sL%llu:%.3g", i ? ";" : "", 1ULL << i, l_energy[i] / total);
    out += buf;
  }
  return out;
}

PacketSweep packet_sweep(const PacketSweepConfig& cfg) {
  if (cfg.n_max < 2 || !is_dyadic(cfg.n_max)) throw ConfigError("nmax must be a power of two >= 2");
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  if (!(cfg.s > 1.0)) throw ConfigError("s must exceed 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0 / 6.0)) throw ConfigError("delta must lie in (0, 1/6)");
  const std::vector<Regime> regimes =
      cfg.regimes.empty() ? std::vector<Regime>(all_regimes().begin(), all_regimes().end()) : cfg.regimes;
  std::vector<int> levels;
  for (int N = 2; N <= cfg.n_max; N *= 2) levels.push_back(N);

  const std::size_t nl = levels.size(), ns = static_cast<std::size_t>(cfg.samples);
  std::vector<PacketTrilinear> runs(regimes.size() * nl * ns);
  parallel_for(runs.size(), [&](std::size_t idx) {
    const Regime r = regimes[idx / (nl * ns)];
    const int N = levels[(idx / ns) % nl];
    const int sample = static_cast<int>(idx % ns);
    const auto packets = draw_packets(r, N, cfg.seed, sample, cfg.shape);
    runs[idx] = packet_trilinear(
        packets, [&](double m) { return regime_output_multiplier(r, N, m); }, cfg.s, cfg.delta, cfg.shape);
  });

  PacketSweep out;
  for (std::size_t ri = 0; ri < regimes.size(); ++ri) {
    std::vector<double> xs, ys;
    for (std::size_t li = 0; li < nl; ++li) {
      RegimeRow row;
      row.regime = regimes[ri];
      row.N = levels[li];
      row.shells = regime_shells(row.regime, row.N);
      row.samples = cfg.samples;
      std::vector<double> bins;
      for (std::size_t k = 0; k < ns; ++k) {
        const PacketTrilinear& pt = runs[(ri * nl + li) * ns + k];
        row.lhs += pt.lhs / ns;
        row.rhs += pt.rhs / ns;
        row.ratio += pt.ratio / ns;
        if (bins.size() < pt.l_energy.size()) bins.resize(pt.l_energy.size(), 0.0);
        for (std::size_t b = 0; b < pt.l_energy.size(); ++b) bins[b] += pt.l_energy[b];
      }
      row.l_profile = l_profile_string(bins);
      xs.push_back(row.N);
      ys.push_back(row.ratio);
      out.rows.push_back(row);
    }
    RegimeTrend tr;
    tr.regime = regimes[ri];
    tr.slope = log_log_slope(xs, ys);
    tr.growth = tr.slope > 0.1;
    out.trends.push_back(tr);
  }
  return out;
}

}  // namespace mzk
