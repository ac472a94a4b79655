#pragma once

namespace mzk {

// Smooth monotone step: 0 for x <= -1, 1 for x >= 1, the normalized running
// integral of exp(-1/(1-x^2)). S(-x) = 1 - S(x).
double smooth_step(double x);

// Time cutoff: 1 on [-1,1], 0 outside (-2,2).
double eta(double t);

// Frequency cutoff: 1 on [-5/4,5/4], 0 outside (-8/5,8/5).
double chi(double r);

// Dyadic piece phi_N(r): chi(r) for N = 1, chi(r/N) - chi(2r/N) for N >= 2.
// Vanishes outside I_N.
double phi_dyadic(double r, double N);

// Projection onto levels <= M, i.e. the sum of phi_N over N <= M.
double phi_at_most(double r, double M);

struct DyadicInterval {
  double lo;
  double hi;
};

// I_N = [5N/8, 8N/5] for N >= 2 and [0, 8/5] for N = 1.
DyadicInterval dyadic_interval(double N);

bool is_dyadic(double N);

}  // namespace mzk
