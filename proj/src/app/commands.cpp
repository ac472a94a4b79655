#include "mzk/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "mzk/bourgain.hpp"
#include "mzk/checkpoint.hpp"
#include "mzk/cutoff.hpp"
#include "mzk/datagen.hpp"
#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"
#include "mzk/packets.hpp"
#include "mzk/parallel.hpp"
#include "mzk/report.hpp"
#include "mzk/resonance.hpp"
#include "mzk/rng.hpp"
#include "mzk/wellposedness.hpp"

namespace mzk {
namespace {

// ---- value checks shared by the parser and the command bodies ----

std::optional<double> to_real(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> to_int(const std::string& s) {
  long long v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

using Check = std::function<std::string(const std::string&)>;

Check real_check(std::function<bool(double)> ok = nullptr, std::string what = "") {
  return [ok, what](const std::string& s) -> std::string {
    const auto v = to_real(s);
    if (!v) return "'" + s + "' is not a real number";
    if (ok && !ok(*v)) return "'" + s + "' must be " + what;
    return {};
  };
}

Check int_check(std::function<bool(long long)> ok = nullptr, std::string what = "") {
  return [ok, what](const std::string& s) -> std::string {
    const auto v = to_int(s);
    if (!v) return "'" + s + "' is not an integer";
    if (ok && !ok(*v)) return "'" + s + "' must be " + what;
    return {};
  };
}

Check list_check(Check item) {
  return [item](const std::string& s) -> std::string {
    const auto items = split_list(s);
    if (items.empty()) return "empty list";
    for (const auto& i : items)
      if (auto e = item(i); !e.empty()) return e;
    return {};
  };
}

Check choice_check(std::vector<std::string> choices) {
  return [choices](const std::string& s) -> std::string {
    for (const auto& c : choices)
      if (c == s) return {};
    std::string all;
    for (const auto& c : choices) all += (all.empty() ? "" : ", ") + c;
    return "'" + s + "' is not one of " + all;
  };
}

const Check kAny = [](const std::string&) { return std::string(); };
const Check kReal = real_check();
const Check kOptReal = [](const std::string& v) { return v.empty() ? std::string() : kReal(v); };
const Check kPositive = real_check([](double v) { return v > 0.0; }, "positive");
const Check kNonNegative = real_check([](double v) { return v >= 0.0; }, "non-negative");
const Check kS = real_check([](double v) { return v > 1.0; }, "greater than 1");
const Check kDelta = real_check([](double v) { return v > 0.0 && v < 1.0 / 6.0; }, "in (0, 1/6)");
const Check kInt = int_check();
const Check kCount = int_check([](long long v) { return v >= 1; }, "at least 1");
const Check kUnsigned = int_check([](long long v) { return v >= 0; }, "non-negative");
const Check kPow2 = int_check([](long long v) { return v >= 4 && v <= (1LL << 24) && (v & (v - 1)) == 0; },
                              "a power of two >= 4");
const Check kDyadic = int_check([](long long v) { return v >= 1 && v <= (1LL << 20) && (v & (v - 1)) == 0; },
                                "a power of two");
const Check kTime = real_check([](double v) { return v > 0.0 && v <= 1.0; }, "in (0, 1]");

struct OptionDef {
  std::string name;
  std::string fallback;
  Check check;
  std::string help;
};

struct CommandDef {
  std::string name;
  std::string help;
  std::vector<OptionDef> options;
};

const std::string kLx64Pi = "201.06192982974676";
const std::string kLx16Pi = "50.26548245743669";

std::vector<OptionDef> grid_options(const std::string& nx, const std::string& ny, const std::string& lx) {
  return {{"nx", nx, kPow2, "x modes (power of two)"},
          {"ny", ny, kPow2, "y modes (power of two)"},
          {"lx", lx, kPositive, "x period"}};
}

std::vector<OptionDef> with_default(std::vector<OptionDef> opts, const std::string& name, const std::string& v) {
  for (auto& o : opts)
    if (o.name == name) o.fallback = v;
  return opts;
}

std::vector<OptionDef> join(std::vector<OptionDef> a, const std::vector<OptionDef>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<CommandDef>& commands() {
  static const std::vector<CommandDef> defs = [] {
    const std::vector<OptionDef> data = {
        {"init", "builtin:smooth", kAny, "builtin:<zero|soliton|gaussian|dyadic-shell|smooth> or checkpoint path"},
        {"amplitude", "1", kReal, "amplitude of builtin data"},
        {"width", "4", kPositive, "x-width of gaussian/smooth data"},
        {"shell", "8", kDyadic, "dyadic level of dyadic-shell data"},
        {"h1-norm", "0.5", kPositive, "H^1 norm of smooth data"}};
    const std::vector<OptionDef> wp = {{"s", "1.1", kS, "Sobolev index"},
                                       {"delta", "0.05", kDelta, "b = 1/2 + delta"},
                                       {"t", "0.1", kPositive, "time T"},
                                       {"r", "0.1", kNonNegative, "data radius in H^s"},
                                       {"seed", "0", kUnsigned, "random seed"}};
    std::vector<CommandDef> c;
    c.push_back({"simulate", "Integrate the equation and write a ledger and checkpoints",
                 join(join(grid_options("256", "32", kLx64Pi),
                           {{"dt", "0.001", kPositive, "time step"},
                            {"t-end", "1", kPositive, "final time"},
                            {"record-every", "100", kCount, "steps between records"},
                            {"seed", "0", kUnsigned, "random seed"},
                            {"out", "out", kAny, "output directory"}}),
                      with_default(data, "init", "builtin:soliton"))});
    c.push_back({"picard", "Contraction of the Duhamel map",
                 join(join(join(grid_options("64", "8", kLx16Pi), wp),
                           {{"iterations", "6", kCount, "Picard iterations"},
                            {"t-sweep", "", kAny, "comma list of T for the largest contractive T"},
                            {"out", "picard.csv", kAny, "report path (.csv or .json)"}}),
                      data)});
    c.push_back({"lipschitz", "Lipschitz and derivative probes of the data-to-solution map",
                 join(join(join(grid_options("64", "8", kLx16Pi), wp),
                           {{"dt", "0.001", kPositive, "time step"},
                            {"eps", "0.1,0.01,0.001,0.0001", list_check(kPositive), "comma list of eps"},
                            {"directions", "2", kCount, "random directions"},
                            {"out", "lipschitz.csv", kAny, "report path"}}),
                      data)});
    c.push_back({"persistence", "sup_t ||u(t)||_{H^s} and modulus of continuity",
                 join(join(join(grid_options("256", "8", kLx64Pi), with_default(wp, "t", "1")),
                           {{"dt", "0.001", kPositive, "time step"},
                            {"out", "persistence.csv", kAny, "report path"}}),
                      with_default(with_default(data, "init", "builtin:soliton"), "amplitude", "0.1"))});
    c.push_back({"probe-trilinear", "Trilinear ratio sweep over interaction regimes",
                 {{"s", "1.1", kS, "Sobolev index"},
                  {"delta", "0.05", kDelta, "modulation exponent offset"},
                  {"nmax", "64", kDyadic, "largest dyadic level"},
                  {"samples", "3", kCount, "random packet triples per level"},
                  {"seed", "0", kUnsigned, "random seed"},
                  {"regimes", "", kAny, "comma list of regimes (default all)"},
                  {"width", "4", kPositive, "packet width"},
                  {"t-cut", "0.25", kPositive, "time cutoff scale"},
                  {"out", "trilinear.csv", kAny, "report path"}}});
    c.push_back({"probe-linear", "Homogeneous, inhomogeneous and time-localization probes",
                 join(grid_options("64", "8", kLx16Pi),
                      {{"kind", "homogeneous", choice_check({"homogeneous", "inhomogeneous", "localization"}),
                        "probe kind"},
                       {"s", "1.1", kReal, "Sobolev index"},
                       {"b", "", kOptReal, "modulation exponent b (0.3 for localization, else 0.55)"},
                       {"bp", "", kOptReal, "modulation exponent b' (0.1 for localization, else -0.35)"},
                       {"t-list", "0.1,0.2,0.4,0.8,1", list_check(kTime), "comma list of T"},
                       {"nt", "64", kPow2, "time samples"},
                       {"window", "2", kPositive, "half-width of the time window"},
                       {"shell", "4", kDyadic, "dyadic level of the random data"},
                       {"samples", "1", kCount, "random data sets"},
                       {"seed", "0", kUnsigned, "random seed"},
                       {"out", "linear.csv", kAny, "report path"}})});
    c.push_back({"verify-measures", "Count the sets A or B and compare with the bounds",
                 {{"set", "A", choice_check({"A", "B"}), "which set"},
                  {"n1", "1", kDyadic, "N1"}, {"n2", "1", kDyadic, "N2"}, {"n3", "1", kDyadic, "N3"},
                  {"l1", "1", kDyadic, "L1"}, {"l2", "1", kDyadic, "L2"}, {"l3", "1", kDyadic, "L3"},
                  {"tau", "0", kReal, "tau"}, {"xi", "0", kReal, "xi"}, {"q", "0", kInt, "q"},
                  {"h", "0.05", kPositive, "xi step"}, {"htau", "0.05", kPositive, "tau step"},
                  {"out", "measures.json", kAny, "report path"}}});
    c.push_back({"check-conservation", "Mass and energy drift of a run",
                 join(join(grid_options("256", "32", kLx64Pi),
                           {{"dt", "0.001", kPositive, "time step"},
                            {"t-end", "1", kPositive, "final time"},
                            {"record-every", "10", kCount, "steps between records"},
                            {"seed", "0", kUnsigned, "random seed"},
                            {"out", "conservation.csv", kAny, "ledger path"}}),
                      data)});
    c.push_back({"check-scaling", "Two-run comparison under u -> lambda u(lambda^3 t, lambda x)",
                 join(join(grid_options("128", "8", kLx64Pi),
                           {{"lambda", "2", kCount, "integer scaling factor"},
                            {"dt", "0.0001", kPositive, "time step of the rescaled run"},
                            {"t-end", "0.05", kPositive, "final time of the rescaled run"},
                            {"record-every", "50", kCount, "steps between records"},
                            {"seed", "0", kUnsigned, "random seed"},
                            {"out", "scaling.csv", kAny, "report path"}}),
                      data)});
    return c;
  }();
  return defs;
}

// ---- typed access ----

const std::string& raw(const RunConfig& c, const std::string& key) {
  auto it = c.params.find(key);
  if (it == c.params.end()) throw ConfigError("missing parameter '" + key + "'");
  return it->second;
}

double real(const RunConfig& c, const std::string& key) {
  const auto v = to_real(raw(c, key));
  if (!v) throw ConfigError("parameter '" + key + "' is not a real number");
  return *v;
}

long long integer(const RunConfig& c, const std::string& key) {
  const auto v = to_int(raw(c, key));
  if (!v) throw ConfigError("parameter '" + key + "' is not an integer");
  return *v;
}

std::vector<double> real_list(const RunConfig& c, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(raw(c, key))) {
    const auto v = to_real(item);
    if (!v) throw ConfigError("parameter '" + key + "' has a malformed entry '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

Grid grid_from(const RunConfig& c) {
  return make_grid(static_cast<int>(integer(c, "nx")), static_cast<int>(integer(c, "ny")), real(c, "lx"));
}

DataParams data_params(const RunConfig& c) {
  DataParams p;
  p.amplitude = real(c, "amplitude");
  p.width = real(c, "width");
  p.shell = static_cast<int>(integer(c, "shell"));
  p.h1_norm = real(c, "h1-norm");
  return p;
}

SpectralField initial_data(const RunConfig& c, const Grid& g, double* t0 = nullptr) {
  const std::string& init = raw(c, "init");
  const std::string prefix = "builtin:";
  if (init.rfind(prefix, 0) == 0) return generate_data(init.substr(prefix.size()), g, c.seed, data_params(c));
  Checkpoint cp = read_checkpoint(init);
  if (t0) *t0 = cp.t;
  return cp.field;
}

// Data rescaled to H^s norm r (zero stays zero).
SpectralField ball_data(const RunConfig& c, const Grid& g, double s) {
  SpectralField u0 = initial_data(c, g);
  const double r = real(c, "r"), n = sobolev_norm(u0, s);
  return n > 0.0 ? (r / n) * u0 : u0;
}

ProbeConfig probe_config(const RunConfig& c) {
  ProbeConfig p;
  p.s = real(c, "s");
  p.delta = real(c, "delta");
  p.T = real(c, "t");
  p.r = real(c, "r");
  p.seed = c.seed;
  if (c.params.count("dt")) p.dt = real(c, "dt");
  return p;
}

std::string stem_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + suffix + (ext.empty() ? ".csv" : ext);
}

// ---- commands ----

void cmd_simulate(const RunConfig& c, std::ostream& out) {
  const Grid g = grid_from(c);
  const SpectralField u0 = initial_data(c, g);
  const SimulationResult res = simulate(u0, real(c, "t-end"), real(c, "dt"), static_cast<int>(integer(c, "record-every")));
  std::filesystem::path dir(c.out);
  write_ledger_csv(res.ledger, (dir / "ledger.csv").string());
  for (std::size_t i = 0; i < res.trajectory.states.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "state_%05zu.mzkc", i);
    write_checkpoint((dir / name).string(), res.trajectory.states[i], res.trajectory.times[i]);
  }
  out << "simulate: " << res.trajectory.states.size() << " records written to " << c.out << "\n";
}

void cmd_picard(const RunConfig& c, std::ostream& out) {
  const ProbeConfig pc = probe_config(c);
  const Grid g = grid_from(c);
  const SpectralField u0 = ball_data(c, g, pc.s);
  const auto reports = contraction_probe(u0, pc, static_cast<int>(integer(c, "iterations")));
  emit_report(reports, format_for_path(c.out), c.out);
  out << "picard: " << (reports.empty() ? "no ratios" : reports.front().labels.at("verdict")) << "\n";
  if (!raw(c, "t-sweep").empty()) {
    const double best = largest_contractive_T(u0, pc, real_list(c, "t-sweep"));
    out << "picard: largest contractive T = " << format_double(best) << "\n";
  }
}

void cmd_lipschitz(const RunConfig& c, std::ostream& out) {
  const ProbeConfig pc = probe_config(c);
  const Grid g = grid_from(c);
  const SpectralField u0 = ball_data(c, g, pc.s);
  std::vector<SpectralField> dirs;
  DataParams dp = data_params(c);
  for (long long d = 0; d < integer(c, "directions"); ++d) {
    SpectralField w = generate_data("smooth", g, SplitMix64::stream(c.seed, 1, static_cast<std::uint64_t>(d)), dp);
    dirs.push_back((1.0 / sobolev_norm(w, pc.s)) * w);
  }
  const auto eps = real_list(c, "eps");
  std::vector<ProbeReport> reports = lipschitz_probe(u0, dirs, eps, pc);
  for (auto& r : reports) r.labels["probe"] = "lipschitz";
  for (std::size_t d = 0; d < dirs.size(); ++d)
    for (double e : eps) {
      ProbeReport r = derivative_probe(u0, dirs[d], e, pc);
      r.parameters["direction"] = static_cast<double>(d);
      r.labels["probe"] = "derivative";
      reports.push_back(std::move(r));
    }
  emit_report(reports, format_for_path(c.out), c.out);
  out << "lipschitz: " << reports.size() << " rows written to " << c.out << "\n";
}

void cmd_persistence(const RunConfig& c, std::ostream& out) {
  ProbeConfig pc = probe_config(c);
  const Grid g = grid_from(c);
  SpectralField u0 = initial_data(c, g);
  if (pc.r > 0.0) {
    const double n = sobolev_norm(u0, pc.s);
    if (n > 0.0) u0 = (pc.r / n) * u0;
  }
  const ProbeReport r = persistence_check(u0, pc);
  emit_report({r}, format_for_path(c.out), c.out);
  out << "persistence: " << r.labels.at("verdict") << ", sup = " << format_double(r.lhs) << "\n";
}

void cmd_probe_trilinear(const RunConfig& c, std::ostream& out) {
  PacketSweepConfig pc;
  pc.s = real(c, "s");
  pc.delta = real(c, "delta");
  pc.n_max = static_cast<int>(integer(c, "nmax"));
  pc.samples = static_cast<int>(integer(c, "samples"));
  pc.seed = c.seed;
  pc.shape.width = real(c, "width");
  pc.shape.t_cut = real(c, "t-cut");
  for (const auto& name : split_list(raw(c, "regimes"))) pc.regimes.push_back(parse_regime(name));
  const PacketSweep sweep = packet_sweep(pc);
  std::vector<ProbeReport> rows;
  for (const auto& row : sweep.rows) {
    ProbeReport r;
    r.parameters = {{"N1", row.shells[0]}, {"N2", row.shells[1]}, {"N3", row.shells[2]},
                    {"samples", row.samples}};
    r.labels = {{"regime", regime_name(row.regime)}, {"L-profile", row.l_profile}};
    r.lhs = row.lhs;
    r.rhs = row.rhs;
    r.ratio = row.ratio;
    rows.push_back(std::move(r));
  }
  emit_report(rows, format_for_path(c.out), c.out,
              {"regime", "N1", "N2", "N3", "L-profile", "lhs", "rhs", "ratio", "samples"});
  std::vector<ProbeReport> trends;
  for (const auto& t : sweep.trends) {
    ProbeReport r;
    r.parameters = {{"slope", t.slope}};
    r.labels = {{"regime", regime_name(t.regime)}, {"verdict", t.growth ? "growth" : "bounded"}};
    trends.push_back(std::move(r));
    out << "probe-trilinear: " << regime_name(t.regime) << " slope " << format_double(t.slope) << " "
        << (t.growth ? "growth" : "bounded") << "\n";
  }
  emit_report(trends, format_for_path(c.out), stem_path(c.out, "_slopes"), {"regime", "slope", "verdict"});
}

void cmd_probe_linear(const RunConfig& c, std::ostream& out) {
  const Grid g = grid_from(c);
  const std::string kind = raw(c, "kind");
  const bool loc = kind == "localization";
  const double s = real(c, "s"), window = real(c, "window");
  const double b = raw(c, "b").empty() ? (loc ? 0.3 : 0.55) : real(c, "b");
  const double bp = raw(c, "bp").empty() ? (loc ? 0.1 : -0.35) : real(c, "bp");
  const int nt = static_cast<int>(integer(c, "nt"));
  DataParams dp;
  dp.shell = static_cast<int>(integer(c, "shell"));
  std::vector<ProbeReport> reports;
  for (long long k = 0; k < integer(c, "samples"); ++k) {
    const SpectralField u0 = generate_data("dyadic-shell", g, SplitMix64::stream(c.seed, 2, k), dp);
    std::vector<ProbeReport> batch;
    if (kind == "homogeneous") {
      batch.push_back(probe_homogeneous(u0, s, b, window, nt));
    } else if (kind == "localization") {
      batch = probe_time_localization(windowed_free_flow(u0, window, nt), s, b, bp, real_list(c, "t-list"));
    } else {
      const SpaceTimeField F = windowed_free_flow(u0, window, nt);
      for (double T : real_list(c, "t-list")) batch.push_back(probe_inhomogeneous(F, s, b, bp, T));
    }
    for (auto& r : batch) {
      r.parameters["sample"] = static_cast<double>(k);
      r.labels["kind"] = kind;
      reports.push_back(std::move(r));
    }
  }
  emit_report(reports, format_for_path(c.out), c.out);
  out << "probe-linear: " << reports.size() << " rows written to " << c.out << "\n";
}

void cmd_verify_measures(const RunConfig& c, std::ostream& out) {
  CountingConfig cc;
  cc.n1 = static_cast<int>(integer(c, "n1"));
  cc.n2 = static_cast<int>(integer(c, "n2"));
  cc.n3 = static_cast<int>(integer(c, "n3"));
  cc.l1 = static_cast<int>(integer(c, "l1"));
  cc.l2 = static_cast<int>(integer(c, "l2"));
  cc.l3 = static_cast<int>(integer(c, "l3"));
  cc.tau = real(c, "tau");
  cc.xi = real(c, "xi");
  cc.q = static_cast<int>(integer(c, "q"));
  cc.h = real(c, "h");
  cc.h_tau = real(c, "htau");
  const std::string set = raw(c, "set");
  const MeasureReport r = set == "A" ? count_set_A(cc) : count_set_B(cc);
  write_measure_json(r, set, c.out);
  out << "verify-measures: counted " << format_double(r.counted) << ", trivial bound "
      << format_double(r.trivial_bound) << "\n";
}

void cmd_check_conservation(const RunConfig& c, std::ostream& out) {
  const Grid g = grid_from(c);
  const ConservationCheck chk = check_conservation(initial_data(c, g), real(c, "t-end"), real(c, "dt"),
                                                   static_cast<int>(integer(c, "record-every")));
  write_ledger_csv(chk.ledger, c.out);
  out << "check-conservation: mass drift " << format_double(chk.mass_drift) << ", energy drift "
      << format_double(chk.energy_drift) << "\n";
}

void cmd_check_scaling(const RunConfig& c, std::ostream& out) {
  const Grid g = grid_from(c);
  const ScalingCheck chk = check_scaling(initial_data(c, g), static_cast<double>(integer(c, "lambda")),
                                         real(c, "t-end"), real(c, "dt"),
                                         static_cast<int>(integer(c, "record-every")));
  std::ostringstream os;
  os << "t,rel_error\n";
  for (std::size_t i = 0; i < chk.times.size(); ++i)
    os << format_double(chk.times[i]) << ',' << format_double(chk.rel_error[i]) << '\n';
  write_text(c.out, os.str());
  out << "check-scaling: max relative L2 error " << format_double(chk.max_rel_error) << "\n";
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : commands()) n.push_back(c.name);
    return n;
  }();
  return names;
}

std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app("Numerical toolkit for the modified Zakharov-Kuznetsov equation on R x T", "mzk");
  app.set_config("--config", "", "key = value file with one [subcommand] section per subcommand");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  std::vector<std::vector<std::string>> values;
  std::vector<CLI::App*> subs;
  const auto& defs = commands();
  values.resize(defs.size());
  for (std::size_t ci = 0; ci < defs.size(); ++ci) {
    CLI::App* sub = app.add_subcommand(defs[ci].name, defs[ci].help);
    sub->allow_config_extras(CLI::config_extras_mode::error);
    sub->set_help_flag("--help", "Print this help message and exit");
    subs.push_back(sub);
    values[ci].resize(defs[ci].options.size());
    for (std::size_t oi = 0; oi < defs[ci].options.size(); ++oi) {
      const OptionDef& od = defs[ci].options[oi];
      values[ci][oi] = od.fallback;
      const Check check = od.check;
      sub->add_option("--" + od.name, values[ci][oi], od.help)
          ->capture_default_str()
          ->check(CLI::Validator([check](std::string& s) { return check(s); }, "", od.name));
    }
  }

  std::vector<std::string> storage{"mzk"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (msg.empty()) msg = e.get_name();
    throw ConfigError(msg);
  }

  RunConfig cfg;
  cfg.threads = threads;
  for (std::size_t ci = 0; ci < defs.size(); ++ci) {
    if (!subs[ci]->parsed()) continue;
    cfg.subcommand = defs[ci].name;
    for (std::size_t oi = 0; oi < defs[ci].options.size(); ++oi)
      cfg.params[defs[ci].options[oi].name] = values[ci][oi];
  }
  if (auto it = cfg.params.find("seed"); it != cfg.params.end())
    cfg.seed = static_cast<std::uint64_t>(*to_int(it->second));
  if (auto it = cfg.params.find("out"); it != cfg.params.end()) cfg.out = it->second;
  return cfg;
}

void execute(const RunConfig& c, std::ostream& out) {
  static const std::map<std::string, void (*)(const RunConfig&, std::ostream&)> table = {
      {"simulate", cmd_simulate},
      {"picard", cmd_picard},
      {"lipschitz", cmd_lipschitz},
      {"persistence", cmd_persistence},
      {"probe-trilinear", cmd_probe_trilinear},
      {"probe-linear", cmd_probe_linear},
      {"verify-measures", cmd_verify_measures},
      {"check-conservation", cmd_check_conservation},
      {"check-scaling", cmd_check_scaling}};
  auto it = table.find(c.subcommand);
  if (it == table.end()) throw ConfigError("unknown subcommand '" + c.subcommand + "'");
  set_thread_count(c.threads);
  it->second(c, out);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_config(args, out);
    if (!cfg) return kExitOk;
    execute(*cfg, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BlowUpError& e) {
    err << "numerical failure: " << e.what() << " (last finite time " << format_double(e.last_finite_time())
        << ")\n";
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace mzk
