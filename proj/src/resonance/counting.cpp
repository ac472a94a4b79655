#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mzk/cutoff.hpp"
#include "mzk/errors.hpp"
#include "mzk/parallel.hpp"
#include "mzk/resonance.hpp"
#include "mzk/spectral.hpp"

namespace mzk {
namespace {

using i64 = std::int64_t;

// Sum over a in [lo, hi] of max(0, alpha + beta a), beta in {-1, 0, 1}.
i64 sum_positive_linear(i64 lo, i64 hi, i64 alpha, int beta) {
  if (lo > hi) return 0;
  if (beta == 0) return alpha > 0 ? (hi - lo + 1) * alpha : 0;
  if (beta > 0) lo = std::max(lo, 1 - alpha);
  else hi = std::min(hi, alpha - 1);
  if (lo > hi) return 0;
  const i64 n = hi - lo + 1;
  const i64 first = alpha + beta * lo, last = alpha + beta * hi;
  return (first + last) * n / 2;
}

struct Bands {
  std::array<Interval, 2> piece;
  int count = 0;
};

// {sigma : |sigma| in [lo, hi]} as one or two closed intervals.
Bands symmetric_band(Interval r) {
  Bands b;
  if (r.lo <= 0.0) {
    b.piece[0] = {-r.hi, r.hi};
    b.count = 1;
  } else {
    b.piece[0] = {-r.hi, -r.lo};
    b.piece[1] = {r.lo, r.hi};
    b.count = 2;
  }
  return b;
}

Interval widened(double level, double w) {
  const DyadicInterval d = dyadic_interval(level);
  return {std::max(0.0, d.lo - w), d.hi + w};
}

bool in_modulus(double xi, int q, Interval r) {
  const double m = weighted_modulus(xi, q);
  return m >= r.lo && m <= r.hi;
}

// Lattice points (i + 1/2) h with |(xi, q)| in r.
std::vector<double> xi_lattice(int q, Interval r, double h) {
  std::vector<double> out;
  const double top2 = r.hi * r.hi - static_cast<double>(q) * q;
  if (top2 < 0.0) return out;
  const double b = std::sqrt(top2 / 3.0);
  const i64 i0 = static_cast<i64>(std::floor(-b / h - 0.5)) - 1;
  const i64 i1 = static_cast<i64>(std::ceil(b / h - 0.5)) + 1;
  for (i64 i = i0; i <= i1; ++i) {
    const double xi = (static_cast<double>(i) + 0.5) * h;
    if (in_modulus(xi, q, r)) out.push_back(xi);
  }
  return out;
}

struct Prepared {
  Interval n1, n2, n3, l1, l2, l3;
  int q1max, q2max;
  double lmax;
};

Prepared prepare(const CountingConfig& c) {
  for (int v : {c.n1, c.n2, c.n3, c.l1, c.l2, c.l3})
    if (!is_dyadic(v)) throw ConfigError("counting levels must be dyadic integers");
  if (!(c.h > 0.0) || !(c.h_tau > 0.0)) throw ConfigError("counting steps must be positive");
  if (c.widen < 0.0) throw ConfigError("interval widening must be non-negative");
  Prepared p{widened(c.n1, c.widen), widened(c.n2, c.widen), widened(c.n3, c.widen),
             widened(c.l1, c.widen), widened(c.l2, c.widen), widened(c.l3, c.widen),
             0, 0, static_cast<double>(std::max({c.l1, c.l2, c.l3}))};
  p.q1max = static_cast<int>(std::floor(p.n1.hi));
  p.q2max = static_cast<int>(std::floor(p.n2.hi));
  return p;
}

void fill_bounds(MeasureReport& r) {
  const auto& c = r.config;
  std::array<double, 3> N{double(c.n1), double(c.n2), double(c.n3)};
  std::array<double, 3> L{double(c.l1), double(c.l2), double(c.l3)};
  std::sort(N.begin(), N.end());
  std::sort(L.begin(), L.end());
  r.trivial_bound = L[0] * L[1] * N[0] * N[0] * N[1] * N[1];
  r.separated = c.n1 >= 4 * c.n3 || c.n3 >= 4 * c.n1;
  const double big = std::max(c.n1, c.n3);
  if (r.separated)
    r.improved_bound = N[0] * N[1] * double(c.l1) * c.l2 * c.l3 * c.n2 / (big * big);
}

template <class SliceFn>
std::vector<double> for_each_slice(const CountingConfig& cfg, const Prepared& p, SliceFn&& slice) {
  const std::size_t rows = static_cast<std::size_t>(2 * p.q1max + 1);
  std::vector<double> per_row(rows, 0.0);
  parallel_for(rows, [&](std::size_t r) {
    const int q1 = static_cast<int>(r) - p.q1max;
    const auto xs1 = xi_lattice(q1, p.n1, cfg.h);
    double acc = 0.0;
    for (int q2 = -p.q2max; q2 <= p.q2max; ++q2) {
      const int q3 = cfg.q - q1 - q2;
      if (std::abs(q3) > p.n3.hi) continue;
      acc += slice(q1, q2, q3, xs1);
    }
    per_row[r] = acc;
  });
  return per_row;
}

}  // namespace

i64 count_lattice_pairs(i64 a0, i64 a1, i64 b0, i64 b1, i64 c0, i64 c1) {
  if (a0 > a1 || b0 > b1 || c0 > c1) return 0;
  // For a <= p the upper end is b1, else c1 - a; for a >= r the lower end is
  // b0, else c0 - a.
  const i64 p = c1 - b1, r = c0 - b0;
  std::array<i64, 4> cuts{a0, a1 + 1, std::clamp(p + 1, a0, a1 + 1), std::clamp(r, a0, a1 + 1)};
  std::sort(cuts.begin(), cuts.end());
  i64 total = 0;
  for (int s = 0; s + 1 < 4; ++s) {
    const i64 lo = cuts[s], hi = cuts[s + 1] - 1;
    if (lo > hi) continue;
    const bool upper_const = lo <= p;
    const bool lower_const = lo >= r;
    i64 alpha = 1;
    int beta = 0;
    if (upper_const) alpha += b1;
    else alpha += c1, beta -= 1;
    if (lower_const) alpha -= b0;
    else alpha -= c0, beta += 1;
    total += sum_positive_linear(lo, hi, alpha, beta);
  }
  return total;
}

std::uint64_t counting_cells(const CountingConfig& cfg) {
  const Prepared p = prepare(cfg);
  std::uint64_t cells = 0;
  for (int q1 = -p.q1max; q1 <= p.q1max; ++q1) {
    const auto n1 = xi_lattice(q1, p.n1, cfg.h).size();
    for (int q2 = -p.q2max; q2 <= p.q2max; ++q2) {
      if (std::abs(cfg.q - q1 - q2) > p.n3.hi) continue;
      cells += n1 * xi_lattice(q2, p.n2, cfg.h).size();
    }
  }
  return cells;
}

namespace {

void guard(const CountingConfig& cfg, MeasureReport& r) {
  r.cells = counting_cells(cfg);
  if (r.cells > kMaxCountingCells)
    throw ConfigError("counting grid has " + std::to_string(r.cells) + " cells, above the 1e9 limit");
}

}  // namespace

MeasureReport count_set_A(const CountingConfig& cfg) {
  const Prepared p = prepare(cfg);
  MeasureReport rep;
  rep.config = cfg;
  guard(cfg, rep);
  const Bands s1 = symmetric_band(p.l1), s2 = symmetric_band(p.l2), s3 = symmetric_band(p.l3);
  const double ht = cfg.h_tau;
  auto single = [ht](double lo, double hi, i64& a, i64& b) {
    a = static_cast<i64>(std::ceil(lo / ht - 0.5));
    b = static_cast<i64>(std::floor(hi / ht - 0.5));
  };
  auto paired = [ht](double lo, double hi, i64& a, i64& b) {
    a = static_cast<i64>(std::ceil(lo / ht - 1.0));
    b = static_cast<i64>(std::floor(hi / ht - 1.0));
  };
  const auto rows = for_each_slice(cfg, p, [&](int q1, int q2, int q3, const std::vector<double>& xs1) {
    const auto xs2 = xi_lattice(q2, p.n2, cfg.h);
    i64 points = 0;
    for (double xi1 : xs1) {
      const double w1 = dispersion_symbol(xi1, q1);
      for (double xi2 : xs2) {
        const double xi3 = cfg.xi - xi1 - xi2;
        if (!in_modulus(xi3, q3, p.n3)) continue;
        const double w2 = dispersion_symbol(xi2, q2);
        const double w3 = dispersion_symbol(xi3, q3);
        for (int i = 0; i < s1.count; ++i) {
          i64 a0, a1;
          single(w1 + s1.piece[i].lo, w1 + s1.piece[i].hi, a0, a1);
          for (int j = 0; j < s2.count; ++j) {
            i64 b0, b1;
            single(w2 + s2.piece[j].lo, w2 + s2.piece[j].hi, b0, b1);
            for (int k = 0; k < s3.count; ++k) {
              i64 c0, c1;
              paired(cfg.tau - w3 + s3.piece[k].lo, cfg.tau - w3 + s3.piece[k].hi, c0, c1);
              points += count_lattice_pairs(a0, a1, b0, b1, c0, c1);
            }
          }
        }
      }
    }
    return static_cast<double>(points);
  });
  double total = 0.0;
  for (double v : rows) total += v;
  rep.counted = total * cfg.h * cfg.h * ht * ht;
  fill_bounds(rep);
  return rep;
}

MeasureReport count_set_B(const CountingConfig& cfg) {
  const Prepared p = prepare(cfg);
  MeasureReport rep;
  rep.config = cfg;
  guard(cfg, rep);
  const double band = 3.0 * p.lmax + cfg.widen;
  const std::size_t rows_n = static_cast<std::size_t>(2 * p.q1max + 1);
  std::vector<double> row_max(rows_n, 0.0);
  std::vector<std::uint64_t> row_pairs(rows_n, 0);
  const auto rows = for_each_slice(cfg, p, [&](int q1, int q2, int q3, const std::vector<double>& xs1) {
    row_pairs[static_cast<std::size_t>(q1 + p.q1max)] += 1;
    const auto xs2 = xi_lattice(q2, p.n2, cfg.h);
    double cells = 0.0;
    for (double xi1 : xs1) {
      const double w1 = dispersion_symbol(xi1, q1);
      for (double xi2 : xs2) {
        const double xi3 = cfg.xi - xi1 - xi2;
        if (!in_modulus(xi3, q3, p.n3)) continue;
        const double r = cfg.tau - w1 - dispersion_symbol(xi2, q2) - dispersion_symbol(xi3, q3);
        if (std::abs(r) <= band) cells += 1.0;
      }
    }
    const double m = cells * cfg.h * cfg.h;
    double& mx = row_max[static_cast<std::size_t>(q1 + p.q1max)];
    mx = std::max(mx, m);
    return m;
  });
  double total = 0.0;
  for (double v : rows) total += v;
  rep.counted = total;
  for (double v : row_max) rep.max_slice = std::max(rep.max_slice, v);
  for (auto v : row_pairs) rep.admissible_pairs += v;
  rep.projection_bound = rep.max_slice * static_cast<double>(rep.admissible_pairs);
  fill_bounds(rep);
  const double big = std::max(cfg.n1, cfg.n3);
  rep.slice_bound = p.lmax * cfg.n2 / (big * big);
  if (rep.separated) {
    std::array<double, 3> N{double(cfg.n1), double(cfg.n2), double(cfg.n3)};
    std::sort(N.begin(), N.end());
    rep.improved_bound = p.lmax * N[0] * N[1] * cfg.n2 / (big * big);
  }
  return rep;
}

}  // namespace mzk
