#pragma once

#include <functional>

namespace htwave::lp {

// sigma(x) = e^{-1/x} for x > 0, else 0.
double smooth_step_seed(double x);

// chi = 1 on (-inf, 1], 0 on [2, inf), sigma(2-x) / (sigma(2-x) + sigma(x-1)) between.
double chi(double x);

// Dyadic cutoff R(tau) = chi(|tau|/2) - chi(2|tau|): even, supported in
// 1/2 <= |tau| <= 4, equal to 1 on [1, 2], and sum_j R(2^{-2j} tau) = 1.
double cutoff_R(double tau);

// Bump Q(l) = chi(1 + |log2 l|): supported in (1/2, 2), Q(1) = 1.
double bump_Q(double ell);

struct DyadicCutoff {
  std::function<double(double)> evaluation;
  double support_lo = 0.5;
  double support_hi = 4.0;
  double operator()(double tau) const { return evaluation(tau); }
};

DyadicCutoff build_cutoff();

}  // namespace htwave::lp
