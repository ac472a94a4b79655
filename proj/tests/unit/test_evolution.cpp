#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mzk/cutoff.hpp"
#include "mzk/datagen.hpp"
#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"

using namespace mzk;
constexpr double kPi = std::numbers::pi;

namespace {

// Residual of u_t + u_xxx + (u^3)_x for u(x,t) = A sqrt(2) sech(x - t), by
// sixth-order-in-time / fourth-order-in-space finite differences.
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

SpectralField smooth_data(const Grid& g, double h1 = 0.5, std::uint64_t seed = 3) {
  DataParams p;
  p.h1_norm = h1;
  return generate_data("smooth", g, seed, p);
}

}  // namespace

TEST_SUITE("evolution") {
  TEST_CASE("soliton formula solves the reduced equation (residual oracle)") {
    double worst = 0.0, wrong = 0.0;
    for (double x = -10.0; x <= 10.0; x += 0.05) {
      worst = std::max(worst, std::abs(reduced_residual(1.0, x)));
      wrong = std::max(wrong, std::abs(reduced_residual(1.2, x)));
    }
    CHECK(worst < 1e-6);
    CHECK(wrong > 1e-2);
  }

  TEST_CASE("soliton travels at unit speed over a short time") {
    const Grid g = make_grid(256, 4, 32 * kPi);
    const SpectralField u0 = generate_data("soliton", g, 0);
    const double t = 0.25;
    const SpectralField u = simulate(u0, t, 1e-3, 1000).trajectory.states.back();
    DataParams p;
    p.x0 = 0.5 * g.lx + t;
    const SpectralField exact = generate_data("soliton", g, 0, p);
    CHECK(l2_norm(u - exact) / l2_norm(exact) < 1e-5);
  }

  TEST_CASE("free propagation is a unitary group") {
    const Grid g = make_grid(32, 8, 20.0);
    const SpectralField f = smooth_data(g);
    const SpectralField a = free_propagate(free_propagate(f, 0.3), 0.4);
    const SpectralField b = free_propagate(f, 0.7);
    CHECK(l2_norm(a - b) < 1e-14 * l2_norm(f));
    CHECK(l2_norm(free_propagate(b, -0.7) - f) < 1e-14 * l2_norm(f));
  }

  TEST_CASE("zero data stays zero and x-independent data is stationary") {
    const Grid g = make_grid(32, 8, 20.0);
    const SpectralField z(g);
    CHECK(l2_norm(step(z, 0.01)) == 0.0);
    SpectralField f(g);
    f.mode(0, 1) = cplx(0.3, 0.1);
    f.mode(0, -1) = cplx(0.3, -0.1);
    f.mode(0, 2) = cplx(0.05, 0);
    f.mode(0, -2) = cplx(0.05, 0);
    const auto res = simulate(f, 0.5, 0.01, 10);
    for (const auto& s : res.trajectory.states) CHECK(l2_norm(s - f) < 1e-12 * l2_norm(f));
  }

  TEST_CASE("mass and energy of known fields") {
    const Grid g = make_grid(16, 8, 2 * kPi);
    PhysicalField u(g);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) u.at(i, j) = std::sin(g.x(i));
    const SpectralField f = forward_transform(u);
    CHECK(mass(f) == doctest::Approx(2 * kPi * kPi));
    CHECK(energy(f) == doctest::Approx(5 * kPi * kPi / 8).epsilon(1e-12));
  }

  TEST_CASE("integrating-factor RK4 converges at fourth order") {
    const Grid g = make_grid(64, 8, 16 * kPi);
    const SpectralField u0 = smooth_data(g, 6.0);
    const double t = 1.0;
    const SpectralField ref = simulate(u0, t, 1.0 / 1024, 10000).trajectory.states.back();
    std::vector<double> err;
    for (double dt : {1.0 / 16, 1.0 / 32, 1.0 / 64})
      err.push_back(l2_norm(simulate(u0, t, dt, 1000).trajectory.states.back() - ref));
    const double r1 = std::log2(err[0] / err[1]), r2 = std::log2(err[1] / err[2]);
    CAPTURE(err[0]);
    CAPTURE(err[2]);
    CHECK(r1 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(r2 == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("conservation over a short run") {
    const Grid g = make_grid(64, 16, 16 * kPi);
    const ConservationCheck c = check_conservation(smooth_data(g), 0.2, 1e-3, 20);
    CHECK(c.mass_drift < 1e-10);
    CHECK(c.energy_drift < 1e-8);
    CHECK(c.ledger.times.size() == 11);
  }

  TEST_CASE("simulate records on schedule and divides the interval") {
    const Grid g = make_grid(16, 4, 10.0);
    const auto res = simulate(smooth_data(g), 0.1, 0.03, 2);
    // dt shrinks to 0.025; records at steps 2 and 4 plus t = 0.
    REQUIRE(res.trajectory.times.size() == 3);
    CHECK(res.trajectory.times.back() == 0.1);
    CHECK(res.trajectory.times[1] == doctest::Approx(0.05));
  }

  TEST_CASE("blow-up is reported with the last finite time") {
    const Grid g = make_grid(32, 4, 8.0);
    DataParams p;
    p.amplitude = 40.0;
    const SpectralField u0 = generate_data("soliton", g, 0, p);
    bool thrown = false;
    try {
      simulate(u0, 10.0, 0.05, 1);
    } catch (const BlowUpError& e) {
      thrown = true;
      CHECK(e.last_finite_time() >= 0.0);
      CHECK(e.last_finite_time() < 10.0);
    }
    CHECK(thrown);
  }

  TEST_CASE("rescale") {
    const Grid g = make_grid(32, 8, 20.0);
    const SpectralField f = smooth_data(g);
    CHECK(l2_norm(rescale(f, 1.0) - f) == 0.0);
    CHECK_THROWS_AS(rescale(f, 1.5), ConfigError);
    const SpectralField up = rescale(f, 2.0);
    CHECK(up.grid.ny == 16);
    CHECK(up.grid.lx == doctest::Approx(10.0));
    const SpectralField back = rescale(up, 0.5);
    CHECK(back.grid.same_shape(g));
    CHECK(l2_norm(back - f) < 1e-15 * l2_norm(f));
    // lambda u(lambda x, lambda y) with the y period kept at 2 pi: ||.||^2 picks up lambda.
    CHECK(l2_norm(up) == doctest::Approx(std::sqrt(2.0) * l2_norm(f)).epsilon(1e-13));
  }

  TEST_CASE("two-run scaling comparison") {
    const Grid g = make_grid(64, 8, 16 * kPi);
    const ScalingCheck s = check_scaling(smooth_data(g), 2.0, 0.02, 1e-4, 50);
    CHECK(s.times.size() == 5);
    CHECK(s.max_rel_error < 1e-10);
  }

  TEST_CASE("cumulative integral is exact for quadratics in both directions") {
    const Grid g = make_grid(4, 4, 1.0);
    const double h = 0.1;
    for (int n : {9, 10, 11}) {
      for (std::size_t origin : {std::size_t(0), std::size_t(4), std::size_t(n - 1)}) {
        std::vector<SpectralField> vals;
        for (int m = 0; m < n; ++m) {
          const double t = (static_cast<double>(m) - static_cast<double>(origin)) * h;
          SpectralField f(g);
          f.mode(1, 0) = cplx(t * t, 0);
          f.mode(-1, 0) = cplx(t * t, 0);
          vals.push_back(f);
        }
        const auto integ = cumulative_integral(vals, h, origin);
        for (int m = 0; m < n; ++m) {
          const double t = (static_cast<double>(m) - static_cast<double>(origin)) * h;
          CHECK(integ[m].mode(1, 0).real() == doctest::Approx(t * t * t / 3).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("Duhamel map of the zero trajectory is the windowed free flow") {
    const Grid g = make_grid(16, 4, 10.0);
    const SpectralField u0 = smooth_data(g);
    const auto times = picard_times(0.1, 64);
    Trajectory zero;
    zero.grid = g;
    zero.times = times;
    zero.states.assign(times.size(), SpectralField(g));
    const Trajectory out = duhamel_apply(u0, zero, 0.1);
    for (std::size_t m = 0; m < times.size(); ++m) {
      const SpectralField expect = eta(times[m]) * free_propagate(u0, times[m]);
      CHECK(l2_norm(out.states[m] - expect) < 1e-15);
    }
  }

  TEST_CASE("Picard iteration converges to the time-stepped solution") {
    const Grid g = make_grid(32, 8, 10 * kPi);
    const SpectralField u0 = smooth_data(g, 0.5);
    const double T = 0.1;
    PicardOptions opt;
    opt.samples_per_T = 256;
    const PicardResult res = picard_iterate(u0, T, 6, opt);
    CHECK_FALSE(res.diverged);
    for (std::size_t n = 1; n < res.ratios.size(); ++n)
      if (res.diff_norms[n] > 1e-14) CHECK(res.ratios[n] < 0.5);
    const Trajectory& fp = res.iterates.back();
    const SimulationResult sim = simulate(u0, T, T / 256, 1);
    for (std::size_t m = 0; m < fp.times.size(); ++m) {
      const double t = fp.times[m];
      if (t < -1e-12 || t > T + 1e-12) continue;
      const auto k = static_cast<std::size_t>(std::lround(t / (T / 256)));
      CHECK(l2_norm(fp.states[m] - sim.trajectory.states[k]) < 1e-6);
    }
  }

  TEST_CASE("Picard iteration of zero data converges immediately") {
    const Grid g = make_grid(16, 4, 10.0);
    const PicardResult res = picard_iterate(SpectralField(g), 0.1, 3);
    CHECK(res.converged);
    CHECK_FALSE(res.diverged);
  }
}
