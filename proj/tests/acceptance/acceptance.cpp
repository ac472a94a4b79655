// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mzk/bourgain.hpp"
#include "mzk/datagen.hpp"
#include "mzk/evolution.hpp"
#include "mzk/packets.hpp"
#include "mzk/resonance.hpp"
#include "mzk/rng.hpp"
#include "mzk/spectral.hpp"
#include "mzk/wellposedness.hpp"

using namespace mzk;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// --- 1. transforms -------------------------------------------------------

Outcome transforms() {
  const std::vector<std::pair<int, int>> shapes = {{8, 4}, {16, 8}, {32, 16}, {64, 32}, {128, 64}};
  SplitMix64 rng(2024);
  double worst_trip = 0.0, worst_parseval = 0.0;
  for (int n = 0; n < 100; ++n) {
    const auto [nx, ny] = shapes[static_cast<std::size_t>(n) % shapes.size()];
    const Grid g = make_grid(nx, ny, 5.0 + n);
    PhysicalField u(g);
    for (double& v : u.values) v = rng.normal();
    const SpectralField f = forward_transform(u);
    const PhysicalField back = inverse_transform(f);
    double diff = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      diff = std::max(diff, std::abs(back.values[i] - u.values[i]));
      mag = std::max(mag, std::abs(u.values[i]));
    }
    worst_trip = std::max(worst_trip, diff / mag);
    worst_parseval = std::max(worst_parseval, std::abs(l2_norm(f) - l2_norm(u)) / l2_norm(u));
  }
  return {worst_trip <= 1e-12 && worst_parseval <= 1e-10,
          "round trip " + fmt("%.2e", worst_trip) + ", Parseval " + fmt("%.2e", worst_parseval)};
}

// --- 2. conservation -----------------------------------------------------

Outcome conservation() {
  const Grid g = make_grid(256, 32, 64 * kPi);
  DataParams p;
  p.h1_norm = 0.5;
  const ConservationCheck c = check_conservation(generate_data("smooth", g, 0, p), 1.0, 1e-3, 10);
  return {c.mass_drift <= 1e-9 && c.energy_drift <= 1e-7,
          "mass drift " + fmt("%.2e", c.mass_drift) + ", energy drift " + fmt("%.2e", c.energy_drift)};
}

// --- 3. soliton ----------------------------------------------------------

// u_t + u_xxx + (u^3)_x at (x, 0) for u = A sqrt(2) sech(x - t), by finite differences.
double reduced_residual(double amplitude, double x) {
  auto u = [&](double xx, double t) { return amplitude * soliton_profile(xx - t, 1.0, 0.0); };
  const double h = 1e-2, k = 1e-3;
  const double ut = (-u(x, 2 * k) + 8 * u(x, k) - 8 * u(x, -k) + u(x, -2 * k)) / (12 * k);
  const double uxxx = (-u(x + 3 * h, 0) + 8 * u(x + 2 * h, 0) - 13 * u(x + h, 0) + 13 * u(x - h, 0) -
                       8 * u(x - 2 * h, 0) + u(x - 3 * h, 0)) /
                      (8 * h * h * h);
  auto cube = [&](double xx) { return std::pow(u(xx, 0), 3); };
  const double cx = (-cube(x + 2 * h) + 8 * cube(x + h) - 8 * cube(x - h) + cube(x - 2 * h)) / (12 * h);
  return ut + uxxx + cx;
}

Outcome soliton() {
  double residual = 0.0, control = 0.0;
  for (double x = -10.0; x <= 10.0; x += 0.05) {
    residual = std::max(residual, std::abs(reduced_residual(1.0, x)));
    control = std::max(control, std::abs(reduced_residual(1.2, x)));
  }
  const bool certified = residual < 1e-6 && control > 1e-2;
  const Grid g = make_grid(512, 8, 64 * kPi);
  const SpectralField u0 = generate_data("soliton", g, 0);
  const SpectralField u1 = simulate(u0, 1.0, 1e-3, 1000).trajectory.states.back();
  DataParams moved;
  moved.x0 = 0.5 * g.lx + 1.0;
  const SpectralField exact = generate_data("soliton", g, 0, moved);
  const double err = l2_norm(u1 - exact) / l2_norm(exact);
  return {certified && err < 1e-4, "oracle residual " + fmt("%.1e", residual) + " (control " +
                                       fmt("%.1e", control) + "), shape error " + fmt("%.2e", err)};
}

// --- 4. scaling ----------------------------------------------------------

Outcome scaling() {
  const Grid g = make_grid(128, 8, 64 * kPi);
  const ScalingCheck s = check_scaling(generate_data("smooth", g, 0), 2.0, 0.05, 1e-4, 50);
  return {s.max_rel_error <= 1e-6, "max relative L2 error " + fmt("%.2e", s.max_rel_error)};
}

// --- 5. resonance --------------------------------------------------------

Outcome resonance_identities() {
  SplitMix64 rng(5);
  double worst_poly = 0.0, worst_deriv = 0.0;
  for (int n = 0; n < 1000; ++n) {
    std::array<FrequencyPoint, 3> p;
    for (auto& x : p) x = {20.0 * (2.0 * rng.uniform() - 1.0), static_cast<int>(rng.integer(-20, 20))};
    const double xi = p[0].xi + p[1].xi + p[2].xi;
    const int q = p[0].q + p[1].q + p[2].q;
    const double h = resonance(p[0], p[1], p[2]);
    const double e = resonance_expanded(xi, q, p[0].xi, p[0].q, p[1].xi, p[1].q);
    worst_poly = std::max(worst_poly, std::abs(e - h) / std::max(1.0, std::abs(h)));
    const double step = 1e-4;
    auto H = [&](double x1) { return resonance_expanded(xi, q, x1, p[0].q, p[1].xi, p[1].q); };
    const double fd = (H(p[0].xi + step) - H(p[0].xi - step)) / (2 * step);
    const double an = resonance_dxi1(p[0], p[1], p[2], xi, q);
    worst_deriv = std::max(worst_deriv, std::abs(fd - an) / std::max(1.0, std::abs(an)));
  }
  return {worst_poly <= 1e-6 && worst_deriv <= 1e-6,
          "expanded " + fmt("%.1e", worst_poly) + ", derivative " + fmt("%.1e", worst_deriv)};
}

// --- 6. measures ---------------------------------------------------------

Outcome measures() {
  struct Target {
    int n1, n2, n3;
    double xi;
    int q;
    double tau;
  };
  std::vector<Target> targets;
  for (int n : {1, 2, 4, 8, 16}) targets.push_back({n, n, n, 0.0, 0, 0.0});
  targets.push_back({16, 16, 1, 0.0, 0, 0.0});
  targets.push_back({4, 4, 1, 0.0, 0, 0.0});
  targets.push_back({1, 16, 16, 0.0, 0, 0.0});
  targets.push_back({16, 1, 1, 9.0, 1, 729.0});
  double C = 0.0;
  std::string worst;
  int configs = 0, violations = 0;
  for (const Target& t : targets)
    for (int l : {1, 4, 16}) {
      CountingConfig c;
      c.n1 = t.n1;
      c.n2 = t.n2;
      c.n3 = t.n3;
      c.l1 = c.l2 = c.l3 = l;
      c.xi = t.xi;
      c.q = t.q;
      c.tau = t.tau;
      // Coarsen the xi lattice until the enumeration fits the budget.
      while (counting_cells(c) > 20000000ULL) c.h *= 2.0;
      const MeasureReport r = count_set_A(c);
      ++configs;
      auto consider = [&](double ratio, const char* which) {
        if (ratio > C) {
          C = ratio;
          worst = std::string(which) + " at N=(" + std::to_string(c.n1) + "," + std::to_string(c.n2) + "," +
                  std::to_string(c.n3) + ") L=" + std::to_string(l);
        }
      };
      consider(r.counted / r.trivial_bound, "trivial");
      if (r.improved_bound) consider(r.counted / *r.improved_bound, "improved");
      CountingConfig wide = c;
      wide.widen = 0.25;
      if (count_set_A(wide).counted < r.counted) ++violations;
    }
  return {configs >= 20 && C <= 50.0 && violations == 0,
          std::to_string(configs) + " configs, fitted C " + fmt("%.3g", C) + " (" + worst + "), " +
              std::to_string(violations) + " monotonicity violations"};
}

// --- 7. trilinear sweep --------------------------------------------------

Outcome trilinear() {
  PacketSweepConfig cfg;
  cfg.s = 1.1;
  cfg.delta = 0.05;
  cfg.n_max = 64;
  const PacketSweep sw = packet_sweep(cfg);
  double worst = -1e300;
  std::string name;
  for (const auto& t : sw.trends)
    if (t.slope > worst) {
      worst = t.slope;
      name = regime_name(t.regime);
    }
  return {sw.trends.size() == 6 && worst <= 0.1, "largest slope " + fmt("%.3f", worst) + " (" + name + ")"};
}

// --- 8. contraction ------------------------------------------------------

Outcome contraction() {
  const Grid g = make_grid(64, 8, 16 * kPi);
  const double s = 1.1, r = 0.1, T = 0.1;
  SpectralField u0 = generate_data("smooth", g, 0);
  u0 = (r / sobolev_norm(u0, s)) * u0;
  PicardOptions opt;
  opt.s = s;
  opt.delta = 0.05;
  const PicardResult res = picard_iterate(u0, T, 6, opt);
  double worst_ratio = 0.0;
  for (std::size_t n = 1; n < res.ratios.size(); ++n) worst_ratio = std::max(worst_ratio, res.ratios[n]);
  const Trajectory& fp = res.iterates.back();
  const double dt = T / opt.samples_per_T;
  const SimulationResult sim = simulate(u0, T, dt, 1);
  double mismatch = 0.0;
  for (std::size_t m = 0; m < fp.times.size(); ++m) {
    const double t = fp.times[m];
    if (t < -1e-12 || t > T + 1e-12) continue;
    const auto k = static_cast<std::size_t>(std::lround(t / dt));
    mismatch = std::max(mismatch, l2_norm(fp.states[m] - sim.trajectory.states[k]));
  }
  return {!res.diverged && worst_ratio < 0.5 && mismatch <= 1e-6,
          "max ratio after iterate 1 " + fmt("%.2e", worst_ratio) + ", fixed point vs simulate " +
              fmt("%.2e", mismatch)};
}

// --- 9. Lipschitz and derivative -----------------------------------------

Outcome lipschitz() {
  const Grid g = make_grid(64, 8, 16 * kPi);
  ProbeConfig pc;
  SpectralField u0 = generate_data("smooth", g, 0);
  u0 = (pc.r / sobolev_norm(u0, pc.s)) * u0;
  const std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<SpectralField> dirs;
  for (std::uint64_t d = 0; d < 2; ++d) {
    const SpectralField w = generate_data("smooth", g, SplitMix64::stream(0, 1, d));
    dirs.push_back((1.0 / sobolev_norm(w, pc.s)) * w);
  }
  const auto reps = lipschitz_probe(u0, dirs, eps, pc);
  double spread = 0.0, slope_dev = 0.0;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    double lo = 1e300, hi = 0.0;
    for (std::size_t e = 0; e < eps.size(); ++e) {
      lo = std::min(lo, reps[d * eps.size() + e].ratio);
      hi = std::max(hi, reps[d * eps.size() + e].ratio);
    }
    spread = std::max(spread, (hi - lo) / lo);
    std::vector<double> mismatch;
    for (double e : eps) mismatch.push_back(derivative_probe(u0, dirs[d], e, pc).lhs);
    slope_dev = std::max(slope_dev, std::abs(log_log_slope(eps, mismatch) - 1.0));
  }
  return {spread < 0.1 && slope_dev <= 0.2,
          "ratio spread " + fmt("%.2e", spread) + ", |mismatch slope - 1| " + fmt("%.3f", slope_dev)};
}

// --- 10. determinism -----------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every regular file under dir, keyed by relative path.
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out.emplace_back(fs::relative(e.path(), dir).string(), slurp(e.path()));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism() {
  const std::vector<std::string> runs = {
      "simulate --nx 64 --ny 8 --t-end 0.05 --record-every 10 --seed 3 --out sim",
      "picard --nx 32 --ny 8 --seed 3 --t-sweep 0.05,0.1 --out picard.csv",
      "lipschitz --nx 32 --ny 8 --t 0.05 --eps 0.01,0.001 --seed 3 --out lipschitz.csv",
      "persistence --nx 64 --ny 8 --t 0.1 --seed 3 --out persistence.json",
      "probe-trilinear --nmax 8 --samples 2 --seed 3 --out trilinear.csv",
      "probe-linear --kind inhomogeneous --nx 32 --ny 8 --nt 32 --seed 3 --out linear.csv",
      "verify-measures --set B --n1 4 --n2 4 --n3 1 --l1 4 --l2 4 --l3 4 --out measures.json",
      "check-conservation --nx 64 --ny 8 --t-end 0.05 --seed 3 --out conservation.csv",
      "check-scaling --nx 64 --ny 8 --t-end 0.01 --seed 3 --out scaling.csv"};
  const fs::path root = fs::temp_directory_path() / "mzk_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::vector<std::pair<std::string, std::string>>> snaps;
  for (const char* threads : {"2", "2", "1"}) {
    const fs::path dir = root / ("run" + std::to_string(snaps.size()));
    fs::create_directories(dir);
    for (const auto& r : runs) {
      const std::string cmd =
          "cd '" + dir.string() + "' && " + MZK_CLI_PATH + " --threads " + threads + " " + r + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + r};
    }
    snaps.push_back(snapshot(dir));
  }
  const bool same = snaps[0] == snaps[1] && snaps[0] == snaps[2];
  return {same && snaps[0].size() >= runs.size(),
          std::to_string(runs.size()) + " subcommands, " + std::to_string(snaps[0].size()) +
              " files; rerun identical: " + (snaps[0] == snaps[1] ? "yes" : "no") +
              ", --threads 1 identical: " + (snaps[0] == snaps[2] ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;  // stated runtime bound; 0 when none is stated
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"transform correctness", 10, transforms},
      {"conservation", 60, conservation},
      {"soliton fidelity", 60, soliton},
      {"scaling symmetry", 120, scaling},
      {"resonance identities", 5, resonance_identities},
      {"measure bounds", 300, measures},
      {"trilinear probe", 300, trilinear},
      {"contraction", 60, contraction},
      {"Lipschitz/derivative probes", 120, lipschitz},
      {"determinism", 0, determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = criteria[i].limit_s == 0 || secs < criteria[i].limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %2zu: %s  %s: %s [%.1f s%s]\n", i + 1, pass ? "PASS" : "FAIL", criteria[i].name,
                o.detail.c_str(), secs, in_time ? "" : ", over the time limit");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
