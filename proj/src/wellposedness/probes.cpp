#include "mzk/wellposedness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mzk/errors.hpp"
#include "mzk/parallel.hpp"

namespace mzk {
namespace {

long step_count(double t_end, double dt) {
  long n = std::lround(t_end / dt);
  if (n < 1 || std::abs(n * dt - t_end) > 1e-9 * t_end) n = static_cast<long>(std::ceil(t_end / dt));
  return n;
}

}  // namespace

void validate(const ProbeConfig& cfg) {
  if (!(cfg.s > 1.0)) throw ConfigError("probe needs s > 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0 / 6.0)) throw ConfigError("probe needs 0 < delta < 1/6");
  if (!(cfg.T > 0.0)) throw ConfigError("probe needs T > 0");
  if (!(cfg.r >= 0.0)) throw ConfigError("probe needs r >= 0");
  if (!(cfg.dt > 0.0)) throw ConfigError("probe needs dt > 0");
  if (cfg.record_every < 1) throw ConfigError("record_every must be >= 1");
}

std::vector<ProbeReport> contraction_probe(const SpectralField& u0, const ProbeConfig& cfg, int n_iter) {
  validate(cfg);
  const double norm0 = sobolev_norm(u0, cfg.s);
  if (norm0 > cfg.r * (1.0 + 1e-12)) throw ConfigError("initial data lies outside the ball of radius r");
  const PicardResult res = picard_iterate(u0, cfg.T, n_iter, {cfg.s, cfg.delta, 64});
  // The first ratio compares against the free solution and is not judged.
  bool contractive = true;
  for (std::size_t n = 1; n < res.ratios.size(); ++n) contractive = contractive && res.ratios[n] < 1.0;
  const char* verdict = res.diverged ? "diverged" : (contractive ? "contractive" : "not-contractive");
  std::vector<ProbeReport> out;
  for (std::size_t n = 0; n < res.ratios.size(); ++n) {
    ProbeReport rep = make_report(res.diff_norms[n + 1], res.diff_norms[n],
                                  {{"iterate", double(n + 1)}, {"T", cfg.T}, {"r", cfg.r}, {"s", cfg.s},
                                   {"delta", cfg.delta}, {"data_norm", norm0}});
    rep.labels["verdict"] = verdict;
    if (res.diverged) rep.parameters["divergence_T"] = cfg.T;
    out.push_back(std::move(rep));
  }
  return out;
}

double largest_contractive_T(const SpectralField& u0, const ProbeConfig& cfg, const std::vector<double>& T_list,
                             int n_iter) {
  double best = 0.0;
  std::vector<double> sorted = T_list;
  std::sort(sorted.begin(), sorted.end());
  for (double T : sorted) {
    ProbeConfig c = cfg;
    c.T = T;
    const PicardResult res = picard_iterate(u0, T, n_iter, {c.s, c.delta, 64});
    bool ok = !res.diverged;
    for (std::size_t n = 1; n < res.ratios.size(); ++n) ok = ok && res.ratios[n] < 1.0;
    if (!ok) break;
    best = T;
  }
  return best;
}

TangentFlow linearized_flow(const SpectralField& u0, const SpectralField& w, double t_end, double dt,
                            int record_every) {
  if (!(t_end > 0.0) || !(dt > 0.0) || record_every < 1) throw ConfigError("bad linearized-flow parameters");
  const long steps = step_count(t_end, dt);
  const double h = t_end / static_cast<double>(steps);
  TangentFlow out;
  out.u.grid = out.v.grid = u0.grid;
  State state{u0, w};
  auto record = [&](double t) {
    out.u.times.push_back(t);
    out.v.times.push_back(t);
    out.u.states.push_back(state[0]);
    out.v.states.push_back(state[1]);
  };
  record(0.0);
  IfRk4 rk(u0.grid, h);
  CubicTerm cubic(u0.grid);
  const RightHandSide rhs = [&](const State& in, State& d) {
    cubic.eval(in[0], d[0]);
    cubic.eval_linearized(in[0], in[1], d[1]);
    for (auto& f : d)
      for (auto& c : f.coeffs) c = -c;
  };
  for (long n = 1; n <= steps; ++n) {
    rk.advance(state, rhs);
    for (const auto& f : state)
      for (const auto& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
          throw BlowUpError((n - 1) * h, "non-finite state in linearized flow");
    if (n % record_every == 0 || n == steps) record(n == steps ? t_end : n * h);
  }
  return out;
}

double sup_distance(const Trajectory& a, const Trajectory& b, double s) {
  if (a.states.size() != b.states.size()) throw ConfigError("trajectories have different lengths");
  double best = 0.0;
  for (std::size_t m = 0; m < a.states.size(); ++m)
    best = std::max(best, sobolev_norm(a.states[m] - b.states[m], s));
  return best;
}

std::vector<ProbeReport> lipschitz_probe(const SpectralField& u0, const std::vector<SpectralField>& directions,
                                         const std::vector<double>& eps_list, const ProbeConfig& cfg) {
  validate(cfg);
  const Trajectory base = simulate(u0, cfg.T, cfg.dt, cfg.record_every).trajectory;
  const std::size_t ne = eps_list.size();
  std::vector<ProbeReport> out(directions.size() * ne);
  parallel_for(out.size(), [&](std::size_t idx) {
    const std::size_t d = idx / ne, e = idx % ne;
    const double eps = eps_list[e];
    const SpectralField& w = directions[d];
    const double wn = sobolev_norm(w, cfg.s);
    double diff = 0.0;
    if (wn > 0.0) {
      const Trajectory pert = simulate(u0 + eps * w, cfg.T, cfg.dt, cfg.record_every).trajectory;
      diff = sup_distance(pert, base, cfg.s);
    }
    out[idx] = make_report(diff, eps * wn,
                           {{"direction", double(d)}, {"eps", eps}, {"T", cfg.T}, {"s", cfg.s}});
  });
  return out;
}

ProbeReport derivative_probe(const SpectralField& u0, const SpectralField& w, double eps, const ProbeConfig& cfg) {
  validate(cfg);
  if (!(eps > 0.0)) throw ConfigError("derivative probe needs eps > 0");
  const TangentFlow tan = linearized_flow(u0, w, cfg.T, cfg.dt, cfg.record_every);
  const Trajectory pert = simulate(u0 + eps * w, cfg.T, cfg.dt, cfg.record_every).trajectory;
  double mismatch = 0.0, vnorm = 0.0;
  for (std::size_t m = 0; m < pert.states.size(); ++m) {
    const SpectralField quotient = (1.0 / eps) * (pert.states[m] - tan.u.states[m]);
    mismatch = std::max(mismatch, sobolev_norm(quotient - tan.v.states[m], cfg.s));
    vnorm = std::max(vnorm, sobolev_norm(tan.v.states[m], cfg.s));
  }
  return make_report(mismatch, vnorm, {{"eps", eps}, {"T", cfg.T}, {"s", cfg.s}});
}

ProbeReport persistence_check(const SpectralField& u0, const ProbeConfig& cfg) {
  validate(cfg);
  const Trajectory tr = simulate(u0, cfg.T, cfg.dt, cfg.record_every).trajectory;
  double sup = 0.0, modulus = 0.0;
  for (std::size_t m = 0; m < tr.states.size(); ++m) {
    sup = std::max(sup, sobolev_norm(tr.states[m], cfg.s));
    if (m > 0) modulus = std::max(modulus, sobolev_norm(tr.states[m] - tr.states[m - 1], cfg.s));
  }
  ProbeReport rep = make_report(sup, sobolev_norm(u0, cfg.s), {{"T", cfg.T}, {"s", cfg.s}, {"modulus", modulus}});
  rep.labels["verdict"] = std::isfinite(sup) ? "bounded" : "unbounded";
  return rep;
}

}  // namespace mzk
