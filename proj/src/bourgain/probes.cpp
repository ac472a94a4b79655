#include <algorithm>
#include <cmath>

#include "mzk/bourgain.hpp"
#include "mzk/cutoff.hpp"
#include "mzk/errors.hpp"
#include "mzk/evolution.hpp"
#include "mzk/padded.hpp"
#include "mzk/parallel.hpp"

namespace mzk {

ProbeReport make_report(double lhs, double rhs, std::map<std::string, double> params) {
  ProbeReport r;
  r.parameters = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  return r;
}

std::vector<ProbeReport> probe_time_localization(const SpaceTimeField& u, double s, double b, double bp,
                                                 const std::vector<double>& T_list) {
  if (!(-0.5 < bp && bp <= b && b < 0.5)) throw ConfigError("time localization needs -1/2 < b' <= b < 1/2");
  const double base = xsb_norm(u, s, b);
  std::vector<ProbeReport> out(T_list.size());
  parallel_for(T_list.size(), [&](std::size_t i) {
    const double T = T_list[i];
    const double lhs = xsb_norm(time_cutoff(u, T), s, bp);
    out[i] = make_report(lhs, std::pow(T, b - bp) * base, {{"T", T}, {"s", s}, {"b", b}, {"b_prime", bp}});
  });
  return out;
}

ProbeReport probe_inhomogeneous(const SpaceTimeField& F, double s, double b, double bp, double T) {
  if (!(-0.5 < bp && bp <= 0.0 && 0.0 <= b && b <= bp + 1.0))
    throw ConfigError("inhomogeneous estimate needs -1/2 < b' <= 0 <= b <= b'+1");
  if (!(T > 0.0 && T <= 1.0)) throw ConfigError("inhomogeneous estimate needs 0 < T <= 1");
  if (2.0 * T > F.t_window) throw ConfigError("time window must contain the support of eta(t/T)");
  const Grid& g = F.grid;
  const std::size_t nt = static_cast<std::size_t>(F.nt);
  std::vector<SpectralField> profile(nt);
  for (std::size_t m = 0; m < nt; ++m)
    profile[m] = free_propagate(F.time_samples[m], -F.time(static_cast<int>(m)));
  const double h = 2.0 * F.t_window / F.nt;
  const auto integral = cumulative_integral(profile, h, static_cast<std::size_t>(F.origin()));
  std::vector<SpectralField> samples(nt, SpectralField(g));
  parallel_for(nt, [&](std::size_t m) {
    const double t = F.time(static_cast<int>(m));
    samples[m] = eta(t / T) * free_propagate(integral[m], t);
  });
  const double lhs = xsb_norm(make_space_time(std::move(samples), F.t_window), s, b);
  const double rhs = std::pow(T, 1.0 - b + bp) * xsb_norm(F, s, bp);
  return make_report(lhs, rhs, {{"T", T}, {"s", s}, {"b", b}, {"b_prime", bp}});
}

ProbeReport probe_homogeneous(const SpectralField& u0, double s, double b, double t_window, int nt) {
  const double lhs = xsb_norm(windowed_free_flow(u0, t_window, nt), s, b);
  return make_report(lhs, sobolev_norm(u0, s), {{"s", s}, {"b", b}, {"t_window", t_window}});
}

ProbeReport probe_trilinear(const SpaceTimeField& u1, const SpaceTimeField& u2, const SpaceTimeField& u3,
                            double s, double delta) {
  if (!(s > 1.0)) throw ConfigError("trilinear probe needs s > 1");
  if (!(delta > 0.0 && delta < 1.0 / 6.0)) throw ConfigError("trilinear probe needs 0 < delta < 1/6");
  for (const SpaceTimeField* v : {&u2, &u3})
    if (v->nt != u1.nt || v->t_window != u1.t_window || !v->grid.same_shape(u1.grid))
      throw ConfigError("trilinear inputs must share grid and time window");
  const Grid& g = u1.grid;
  const std::size_t nt = static_cast<std::size_t>(u1.nt);
  const auto dx = symbol_table(g, [](double xi, int) { return cplx(0.0, xi); });
  std::vector<SpectralField> product(nt, SpectralField(g));
  std::vector<double> loss(nt, 0.0);
  parallel_for(nt, [&](std::size_t m) {
    PaddedTransform pad(g, 2);
    std::vector<double> a, b;
    pad.to_physical(u1.time_samples[m], a);
    pad.to_physical(u2.time_samples[m], b);
    cplx* w = pad.load(u3.time_samples[m]);
    for (std::size_t n = 0; n < pad.size(); ++n) w[n] = cplx(a[n] * b[n] * w[n].real(), 0.0);
    pad.store(product[m]);
    loss[m] = pad.last_truncation_loss();
    apply_table(product[m], dx);
  });
  const double lhs = xsb_norm(make_space_time(std::move(product), u1.t_window), s, -0.5 + 3.0 * delta);
  const double b = 0.5 + delta;
  const double rhs = xsb_norm(u1, s, b) * xsb_norm(u2, s, b) * xsb_norm(u3, s, b);
  return make_report(lhs, rhs,
                     {{"s", s}, {"delta", delta}, {"truncation_loss", *std::max_element(loss.begin(), loss.end())}});
}

double log_log_slope(const std::vector<double>& N, const std::vector<double>& ratio) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < N.size() && i < ratio.size(); ++i) {
    if (!(ratio[i] > 0.0) || !(N[i] > 0.0)) continue;
    const double x = std::log(N[i]), y = std::log(ratio[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace mzk
