#pragma once

#include <string>
#include <vector>

namespace htwave::laguerre {

// Degree m and type gamma of L_m^(gamma).
struct LaguerreOrder {
  int m = 0;
  int gamma = 0;
};

// L_m^(gamma)(tau) by the three-term recurrence
//   m L_m = (2m - 1 + gamma - tau) L_{m-1} - (m - 1 + gamma) L_{m-2}.
double laguerre_polynomial(LaguerreOrder order, double tau);

// L_m^(gamma)(tau) e^{-tau/2}.
double laguerre_function(LaguerreOrder order, double tau);

// Fills out[0..m_max] with the Laguerre functions of type gamma at tau. The
// recurrence runs on the damped values, with rescaling for large tau, so the
// result neither overflows nor loses the e^{-tau/2} factor.
void laguerre_function_sequence(int m_max, int gamma, double tau, std::vector<double>& out);

// (tau d/dtau)^k applied to the Laguerre function, expanded analytically via
// d/dtau L_n^(b) = -L_{n-1}^(b+1).
double tau_log_derivative(LaguerreOrder order, int k, double tau);

// binom(n, k) in floating point.
double binomial(int n, int k);

struct GrowthRow {
  int m = 0;
  double sup_value = 0.0;
  double bound_ratio = 0.0;  // sup / (2m + gamma + 1)^{gamma + 3/4}
};

struct GrowthOptions {
  double tau_max = 0.0;  // 0: per-row default 8(2m + gamma + 1)
  int n_points = 0;      // 0: 40 m_max
};

// Rows m = 0..m_max of sup over tau in [0, tau_max] of |(tau d/dtau)^k L_m^(gamma)|.
// k may range over [0, gamma + 1]. Throws GridTooCoarse when the grid step
// exceeds tau_max / (20 m_max).
std::vector<GrowthRow> laguerre_growth_check(int gamma, int k, int m_max, GrowthOptions options = {});

// Max ratio over m in [1, m_max/2] and over [m_max/2, m_max].
struct GrowthSummary {
  double early_max = 0.0;
  double late_max = 0.0;
  bool bounded(double slack = 1.1) const { return late_max <= slack * early_max; }
};

GrowthSummary summarize(const std::vector<GrowthRow>& rows);

std::string growth_csv(const std::vector<GrowthRow>& rows);

}  // namespace htwave::laguerre
