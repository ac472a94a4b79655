#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "mzk/cli.hpp"
#include "mzk/cutoff.hpp"
#include "mzk/datagen.hpp"
#include "mzk/errors.hpp"
#include "mzk/report.hpp"
#include "mzk/rng.hpp"

using namespace mzk;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mzk_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

int run(const std::vector<std::string>& args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(MZK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("documented simulate command parses") {
    std::ostringstream out;
    const auto cfg = parse_config({"simulate", "--nx", "256", "--ny", "32", "--lx", "201.06", "--dt", "1e-3",
                                   "--t-end", "1.0"},
                                  out);
    REQUIRE(cfg.has_value());
    CHECK(cfg->subcommand == "simulate");
    CHECK(cfg->params.at("nx") == "256");
    CHECK(cfg->params.at("t-end") == "1.0");
    CHECK(cfg->out == "out");
  }

  TEST_CASE("malformed and out-of-range values are usage errors") {
    std::ostringstream out;
    CHECK_THROWS_AS(parse_config({"simulate", "--nx", "100"}, out), ConfigError);
    CHECK_THROWS_AS(parse_config({"simulate", "--dt", "abc"}, out), ConfigError);
    CHECK_THROWS_AS(parse_config({"probe-trilinear", "--delta", "0.2"}, out), ConfigError);
    CHECK_THROWS_AS(parse_config({"picard", "--s", "1"}, out), ConfigError);
    CHECK_THROWS_AS(parse_config({"simulate", "--bogus", "1"}, out), ConfigError);
    CHECK_THROWS_AS(parse_config({"frobnicate"}, out), ConfigError);
    CHECK_THROWS_AS(parse_config({}, out), ConfigError);
    CHECK(run({"simulate", "--nx", "100"}) == kExitUsage);
  }

  TEST_CASE("config file values, range checks and overrides") {
    const fs::path dir = scratch_dir("config");
    spit(dir / "bad.ini", "[probe-trilinear]\ndelta = 0.3\n");
    std::ostringstream out;
    CHECK_THROWS_AS(parse_config({"--config", (dir / "bad.ini").string(), "probe-trilinear"}, out), ConfigError);
    spit(dir / "extra.ini", "[simulate]\ncolour = blue\n");
    CHECK_THROWS_AS(parse_config({"--config", (dir / "extra.ini").string(), "simulate"}, out), ConfigError);
    spit(dir / "ok.ini", "[simulate]\nnx = 64\nny = 8\n");
    const auto from_file = parse_config({"--config", (dir / "ok.ini").string(), "simulate"}, out);
    REQUIRE(from_file.has_value());
    CHECK(from_file->params.at("nx") == "64");
    CHECK(from_file->params.at("ny") == "8");
    const auto overridden = parse_config({"--config", (dir / "ok.ini").string(), "simulate", "--nx", "128"}, out);
    REQUIRE(overridden.has_value());
    CHECK(overridden->params.at("nx") == "128");
    CHECK(overridden->params.at("ny") == "8");
  }

  TEST_CASE("help prints and succeeds") {
    std::ostringstream out;
    CHECK_FALSE(parse_config({"--help"}, out).has_value());
    CHECK(out.str().find("probe-trilinear") != std::string::npos);
    std::ostringstream sub;
    CHECK_FALSE(parse_config({"verify-measures", "--help"}, sub).has_value());
    CHECK(sub.str().find("--htau") != std::string::npos);
  }

  TEST_CASE("every subcommand is registered") {
    const auto& names = subcommand_names();
    for (const char* n : {"simulate", "picard", "lipschitz", "persistence", "probe-trilinear", "probe-linear",
                          "verify-measures", "check-conservation", "check-scaling"})
      CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }

  TEST_CASE("generated data is deterministic and supported where promised") {
    const Grid g = make_grid(64, 32, 20.0);
    CHECK(l2_norm(generate_data("zero", g, 3)) == 0.0);
    DataParams p;
    p.shell = 8;
    const SpectralField a = generate_data("dyadic-shell", g, 11, p);
    const SpectralField b = generate_data("dyadic-shell", g, 11, p);
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.coeffs != generate_data("dyadic-shell", g, 12, p).coeffs);
    const DyadicInterval I = dyadic_interval(8);
    std::size_t inside = 0;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const cplx c = a.mode(g.kx(i), g.ky(j));
        const double r = weighted_modulus(g.xi[i], g.q[j]);
        if (r < I.lo || r > I.hi) CHECK(c == cplx(0, 0));
        else if (c != cplx(0, 0)) ++inside;
      }
    CHECK(inside > 10);
    CHECK(hermitian_defect(a) == 0.0);
    CHECK(sobolev_norm(generate_data("smooth", g, 5), 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(generate_data("plaid", g, 0), ConfigError);
  }

  TEST_CASE("SplitMix64 reproduces its published outputs") {
    SplitMix64 r(0);
    CHECK(r.next() == 0xe220a8397b1dcdafULL);
    CHECK(r.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(r.next() == 0x06c45d188009454fULL);
    SplitMix64 u(99);
    for (int n = 0; n < 1000; ++n) {
      const double x = u.uniform();
      CHECK((x >= 0.0 && x < 1.0));
      const auto k = u.integer(-3, 3);
      CHECK((k >= -3 && k <= 3));
    }
    CHECK(SplitMix64::stream(1, 2, 3) == SplitMix64::stream(1, 2, 3));
    CHECK(SplitMix64::stream(1, 2, 3) != SplitMix64::stream(1, 3, 2));
  }

  TEST_CASE("report emission") {
    const fs::path dir = scratch_dir("report");
    emit_report({}, ReportFormat::csv, (dir / "empty.csv").string(), {"a", "b"});
    CHECK(slurp(dir / "empty.csv") == "a,b\n");

    ConservationLedger ledger;
    ledger.times = {0.5};
    ledger.mass = {1.25};
    ledger.energy = {-0.1};
    write_ledger_csv(ledger, (dir / "ledger.csv").string());
    CHECK(slurp(dir / "ledger.csv") == "t,mass,energy\n0.5,1.25,-0.10000000000000001\n");

    ProbeReport r = make_report(1.0 / 3.0, 2.0, {{"N", 4.0}});
    r.labels["verdict"] = "ok";
    emit_report({r}, ReportFormat::csv, (dir / "r.csv").string());
    CHECK(slurp(dir / "r.csv") == "N,verdict,lhs,rhs,ratio\n4,ok,0.33333333333333331,2,0.16666666666666666\n");

    emit_report({r}, ReportFormat::json, (dir / "r.json").string());
    const auto j = nlohmann::json::parse(slurp(dir / "r.json"));
    REQUIRE(j.is_array());
    CHECK(j[0]["lhs"].get<double>() == 1.0 / 3.0);
    CHECK(j[0]["ratio"].get<double>() == 1.0 / 6.0);
    CHECK(j[0]["verdict"] == "ok");
    CHECK(slurp(dir / "r.json").find("0.33333333333333331") != std::string::npos);

    CHECK(format_for_path("x/y.json") == ReportFormat::json);
    CHECK(format_for_path("x/y.csv") == ReportFormat::csv);
    CHECK(format_double(0.1) == "0.10000000000000001");
  }

  TEST_CASE("write failures raise IoError naming the path") {
    const fs::path dir = scratch_dir("io");
    spit(dir / "file", "x");
    const std::string bad = (dir / "file" / "sub" / "r.csv").string();
    try {
      write_text(bad, "x");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find(bad) != std::string::npos);
    }
  }

  TEST_CASE("exit codes") {
    const fs::path dir = scratch_dir("exit");
    CHECK(run({"verify-measures", "--out", (dir / "m.json").string()}) == kExitOk);
    CHECK(fs::exists(dir / "m.json"));
    CHECK(run({"simulate", "--nx", "100"}) == kExitUsage);
    std::string err;
    CHECK(run({"simulate", "--nx", "32", "--ny", "4", "--lx", "8", "--dt", "0.05", "--t-end", "10", "--init",
               "builtin:soliton", "--amplitude", "40", "--out", (dir / "blow").string()},
              &err) == kExitNumerical);
    CHECK(err.find("last finite time") != std::string::npos);
    spit(dir / "file", "x");
    CHECK(run({"verify-measures", "--out", (dir / "file" / "m.json").string()}) == kExitIo);
    CHECK(run({"simulate", "--nx", "16", "--ny", "4", "--init", (dir / "missing.mzkc").string(), "--out",
               (dir / "o").string()}) == kExitIo);
  }

  TEST_CASE("binary reruns are bitwise identical across thread counts") {
    const fs::path dir = scratch_dir("determinism");
    for (const char* tag : {"a", "b", "c"}) {
      const std::string threads = std::string(tag) == "c" ? "1" : "2";
      const std::string out = (dir / tag).string();
      REQUIRE(run_binary("--threads " + threads + " lipschitz --nx 32 --ny 8 --t 0.05 --eps 0.01,0.001 --out " +
                         out + "_lip.csv") == 0);
      REQUIRE(run_binary("--threads " + threads + " probe-trilinear --nmax 4 --samples 1 --out " + out +
                         "_tri.csv") == 0);
      REQUIRE(run_binary("--threads " + threads + " simulate --nx 32 --ny 8 --t-end 0.05 --record-every 10 --out " +
                         out + "_sim") == 0);
    }
    for (const char* f : {"_lip.csv", "_tri.csv", "_tri_slopes.csv", "_sim/ledger.csv", "_sim/state_00005.mzkc"}) {
      CAPTURE(f);
      const std::string a = slurp((dir / "a").string() + f), b = slurp((dir / "b").string() + f),
                        c = slurp((dir / "c").string() + f);
      CHECK_FALSE(a.empty());
      CHECK(a == b);
      CHECK(a == c);
    }
  }
}
