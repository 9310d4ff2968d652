#pragma once

#include "htwave/spherical.hpp"

#include <functional>
#include <vector>

namespace htwave::spherical {

// Kernel of h(Delta) for a multiplier h supported in [mu_lo, mu_hi], written
// in the lambda variable:
//   K(r, rho) = (2 pi)^{-(d+p)} int sigma(p, l rho) l^{d+p-1} S(l) dl,
//   S(l) = sum_{m <= M} h((2m + d) l) L_m^{(d-1)}(l r^2 / 2).
// S does not depend on rho, and one Laguerre recurrence per node serves all
// m, so a whole (r, rho) grid costs little more than one point.
struct BandKernelOptions {
  int m_max = 0;
  double mu_lo = 0.5;
  double mu_hi = 4.0;
  double phase_rate = 0.0;  // bound on |d/du arg h((2m + d) e^u)|
  double rho_max = 0.0;     // largest rho that will be queried
  double r_max = 0.0;       // largest r that will be queried
  double max_panel = 0.05;  // panel width cap in u = ln l
};

struct BandKernelValues {
  std::vector<cplx> values;  // row-major (r, rho)
  std::vector<double> error; // |fine - coarse|, coarse panels twice as wide
};

class BandKernel {
 public:
  BandKernel(int d, int p, std::function<cplx(double)> h, BandKernelOptions options);

  BandKernelValues evaluate(const std::vector<double>& r, const std::vector<double>& rho) const;

  std::size_t node_count() const { return fine_u_.size(); }

 private:
  void build_panels();
  void sums(const std::vector<double>& u, const std::vector<double>& r, std::vector<cplx>& S) const;

  int d_;
  int p_;
  std::function<cplx(double)> h_;
  BandKernelOptions opt_;
  std::vector<double> fine_u_, fine_w_, coarse_u_, coarse_w_;
};

}  // namespace htwave::spherical
