#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mzk/bourgain.hpp"
#include "mzk/cutoff.hpp"
#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"
#include "mzk/packets.hpp"

using namespace mzk;
constexpr double kPi = std::numbers::pi;

namespace {

SpaceTimeField dense_packet(const WavePacket& p, const Grid& g, const PacketShape& shape, double tw, int nt) {
  const SpectralField f = packet_field(p, g, shape);
  return sample_window(tw, nt, [&](double t) { return eta(t / shape.t_cut) * free_propagate(f, t); });
}

}  // namespace

TEST_SUITE("packets") {
  TEST_CASE("regime names round trip") {
    for (Regime r : all_regimes()) CHECK(parse_regime(regime_name(r)) == r);
    CHECK(regime_name(Regime::HLL_H) == "HLL->H");
    CHECK_THROWS_AS(parse_regime("HHHH"), ConfigError);
  }

  TEST_CASE("regime shells and output multipliers") {
    CHECK(regime_shells(Regime::LLL_L, 16) == std::array<int, 3>{1, 1, 1});
    CHECK(regime_shells(Regime::HLL_H, 16) == std::array<int, 3>{16, 1, 1});
    CHECK(regime_shells(Regime::HHL_L, 16) == std::array<int, 3>{16, 16, 1});
    CHECK(regime_shells(Regime::HHH_H, 16) == std::array<int, 3>{16, 16, 16});
    CHECK(regime_output_multiplier(Regime::LLL_L, 16, 100.0) == 1.0);
    CHECK(regime_output_multiplier(Regime::HLL_H, 16, 0.5) == 0.0);
    CHECK(regime_output_multiplier(Regime::HLL_H, 16, 7.0) == 1.0);
    CHECK(regime_output_multiplier(Regime::HHH_L, 16, 2.0) == 1.0);
    CHECK(regime_output_multiplier(Regime::HHH_L, 16, 3.3) == 0.0);
  }

  TEST_CASE("draws are deterministic and sit on their shells") {
    const PacketShape shape;
    for (Regime r : all_regimes())
      for (int N : {2, 16}) {
        const auto a = draw_packets(r, N, 9, 1, shape);
        const auto b = draw_packets(r, N, 9, 1, shape);
        const auto shells = regime_shells(r, N);
        for (int j = 0; j < 3; ++j) {
          CHECK(a[j].xi == b[j].xi);
          CHECK(a[j].phase == b[j].phase);
          CHECK(a[j].q != 0);
          CHECK(a[j].shell == shells[j]);
          CHECK(phi_dyadic(weighted_modulus(a[j].xi, a[j].q), shells[j]) >= shape.phi_floor);
        }
        const auto c = draw_packets(r, N, 9, 2, shape);
        CHECK(c[0].phase != a[0].phase);
      }
  }

  TEST_CASE("low-output draws have small frequency sums") {
    for (int sample = 0; sample < 4; ++sample) {
      const auto p = draw_packets(Regime::HHH_L, 32, 4, sample);
      CHECK(std::abs(weighted_modulus(p[0].xi + p[1].xi + p[2].xi, p[0].q + p[1].q + p[2].q)) < 2.0);
      const auto h = draw_packets(Regime::HHL_L, 32, 4, sample);
      CHECK(std::abs(h[0].q + h[1].q) <= 1);
    }
  }

  TEST_CASE("L-profile formatting") {
    CHECK(l_profile_string({1.0, 1.0, 2.0}) == "L1:0.25;L2:0.25;L4:0.5");
    CHECK(l_profile_string({0.0, 3.0, 1e-20}) == "L1:0;L2:1");
    CHECK(l_profile_string({}).empty());
  }

  TEST_CASE("packet ratio is invariant under amplitude-free symmetries") {
    const auto p = draw_packets(Regime::HLL_H, 4, 1, 0);
    auto mult = [](double r) { return regime_output_multiplier(Regime::HLL_H, 4, r); };
    const PacketTrilinear a = packet_trilinear(p, mult, 1.1, 0.05);
    CHECK(a.lhs > 0.0);
    CHECK(a.ratio == doctest::Approx(a.lhs / a.rhs));
    double sum = 0.0;
    for (double e : a.l_energy) sum += e;
    CHECK(sum == doctest::Approx(a.lhs * a.lhs).epsilon(1e-10));
    // Translating the real field by d moves x0 and rotates each carrier by -xi0 d.
    auto q = p;
    for (auto& w : q) {
      w.x0 += 3.0;
      w.phase -= 3.0 * w.xi;
    }
    const PacketTrilinear b = packet_trilinear(q, mult, 1.1, 0.05);
    CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-10));
    // Moving x0 alone is not a symmetry once sign combinations interfere.
    auto r = p;
    for (auto& w : r) w.x0 += 3.0;
    CHECK(std::abs(packet_trilinear(r, mult, 1.1, 0.05).ratio / a.ratio - 1.0) > 1e-4);
  }

  TEST_CASE("packet engine agrees with the dense grid probe") {
    // The dense grid resolves sigma in steps of pi / tw; tw = 8 keeps its own
    // quadrature error near 0.1% on rhs and 0.3% on lhs.
    const PacketShape shape;
    const Grid g = make_grid(512, 8, 64 * kPi);
    const double tw = 8.0;
    const int nt = 4096;
    for (int sample = 0; sample < 2; ++sample) {
      const auto p = draw_packets(Regime::LLL_L, 2, 5, sample, shape);
      const PacketTrilinear fast = packet_trilinear(p, [](double) { return 1.0; }, 1.1, 0.05, shape);
      const SpaceTimeField u1 = dense_packet(p[0], g, shape, tw, nt);
      const SpaceTimeField u2 = dense_packet(p[1], g, shape, tw, nt);
      const SpaceTimeField u3 = dense_packet(p[2], g, shape, tw, nt);
      const ProbeReport dense = probe_trilinear(u1, u2, u3, 1.1, 0.05);
      CAPTURE(sample);
      CAPTURE(dense.parameters.at("truncation_loss"));
      CHECK(dense.parameters.at("truncation_loss") < 1e-8);
      CHECK(fast.rhs == doctest::Approx(dense.rhs).epsilon(3e-3));
      CHECK(fast.lhs == doctest::Approx(dense.lhs).epsilon(5e-3));
    }
  }

  TEST_CASE("LLL sweep has zero slope under common random numbers") {
    PacketSweepConfig cfg;
    cfg.n_max = 8;
    cfg.samples = 1;
    cfg.regimes = {Regime::LLL_L};
    const PacketSweep sw = packet_sweep(cfg);
    REQUIRE(sw.rows.size() == 3);
    REQUIRE(sw.trends.size() == 1);
    CHECK(std::abs(sw.trends[0].slope) < 1e-10);
    CHECK_FALSE(sw.trends[0].growth);
    CHECK(sw.rows[0].ratio == sw.rows[2].ratio);
  }

  TEST_CASE("sweep validates its configuration") {
    PacketShape bad;
    bad.time_pad = 1;
    CHECK_THROWS_AS(packet_trilinear(draw_packets(Regime::LLL_L, 2, 0, 0), [](double) { return 1.0; }, 1.1, 0.05, bad),
                    ConfigError);
    PacketSweepConfig cfg;
    cfg.n_max = 12;
    CHECK_THROWS_AS(packet_sweep(cfg), ConfigError);
    cfg.n_max = 4;
    cfg.samples = 0;
    CHECK_THROWS_AS(packet_sweep(cfg), ConfigError);
  }
}
