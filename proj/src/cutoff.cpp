#include "htwave/cutoff.hpp"

#include <cmath>

namespace htwave::lp {

double smooth_step_seed(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double chi(double x) {
  if (x <= 1.0) return 1.0;
  if (x >= 2.0) return 0.0;
  const double a = smooth_step_seed(2.0 - x);
  const double b = smooth_step_seed(x - 1.0);
  return a / (a + b);
}

double cutoff_R(double tau) {
  const double t = std::abs(tau);
  return chi(0.5 * t) - chi(2.0 * t);
}

double bump_Q(double ell) {
  if (ell <= 0.0) return 0.0;
  return chi(1.0 + std::abs(std::log2(ell)));
}

DyadicCutoff build_cutoff() { return {cutoff_R, 0.5, 4.0}; }

}  // namespace htwave::lp
