#pragma once

#include "htwave/algebra.hpp"
#include "htwave/oscillatory.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace htwave::prop {

using cplx = std::complex<double>;

inline constexpr int kMaxTerms = 400;

struct PropagatorQuery {
  algebra::HTypeGroup group;
  double alpha = 0.5;
  double t = 1.0;
  double r = 0.0;    // |z|
  double rho = 0.0;  // |s|
  double tail_tol = 1e-6;
  double quad_tol = 1e-6;
};

struct KernelValue {
  cplx value{};
  int m_used = 0;
  double tail_bound = 0.0;
  double quad_error = 0.0;
  bool tail_converged = true;  // false when the term cap was hit
};

struct KernelOptions {
  std::function<double(double)> cutoff;  // defaults to R
  int force_m = -1;                      // fixed truncation index when >= 0
};

// Rigorous bound on the terms m > M at cutoff R:
//   (2 pi)^{-(d+p)} |S^{p-1}| int R mu^{d+p-1} dmu sum_{m > M} (2m+d)^{-(d+p)} binom(m+d-1, m),
// using |L_m^{(d-1)}| <= binom(m+d-1, m) and |sigma| <= |S^{p-1}|.
double tail_bound(int d, int p, int M);

// Smallest M <= kMaxTerms whose tail bound is within tol; kMaxTerms and
// converged = false otherwise.
int terms_for_tolerance(int d, int p, double tol, bool* converged = nullptr);

// phi(0, 0) with M terms: the t -> 0 value at the origin and the largest
// value |e^{it Delta^alpha} phi| can take.
double plateau_value(int d, int p, int M);

// e^{it Delta^alpha} phi(z, s) as
//   (2 pi)^{-(d+p)} sum_{m <= M} (2m+d)^{-(d+p)} int_{1/2}^4 sigma(p, mu rho/(2m+d)) e^{it mu^alpha}
//     R(mu) L_m^{(d-1)}(mu r^2 / (2(2m+d))) mu^{d+p-1} dmu,
// one oscillatory integral per m. The tail flag replaces an exception so the
// value and its honest bound are always returned.
KernelValue propagator_kernel(const PropagatorQuery& q, const KernelOptions& options = {});

// Term m of the sum above (with its prefactor) and its quadrature error.
osc::OscillatoryResult propagator_term(const PropagatorQuery& q, int m, double tol,
                                       const std::function<double(double)>& cutoff = {});

struct ScanSettings {
  std::vector<double> r_grid{0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  int rho_count = 241;
  int m_eff = 0;          // rho_max(t) = 2 t (2 m_eff + d)^alpha
  double tail_tol = 0.0;  // 0: 1e-7 x plateau value
  double quad_tol = 0.0;  // 0: 1e-7 x plateau value
  double max_panel = 0.05;
};

struct ScanRow {
  double t = 0.0;
  double rho = 0.0;
  double r = 0.0;
  cplx value{};
  int m_used = 0;
  double tail_bound = 0.0;
  double quad_error = 0.0;
  double r_tail_ratio = 0.0;  // max |K| at r_max over the row maximum
};

struct SupScan {
  std::vector<ScanRow> rows;  // one per t, at the argmax
  osc::DecayFit fit;
  double tail_tol = 0.0;
  double quad_tol = 0.0;
  double plateau = 0.0;
  bool tail_converged = true;
};

// sup over (r, rho) of |e^{it Delta^alpha} phi| for each t, by deterministic
// max over r_grid x [0, rho_max(t)]. GridInsufficient if the max sits on the
// outer rho or r boundary. The fit uses every t whose sup is at least 10^3 x
// the tolerance.
SupScan dispersive_sup_scan(const algebra::HTypeGroup& group, double alpha, const std::vector<double>& t_grid,
                            const ScanSettings& settings = {});

struct SpacetimeScan {
  std::vector<ScanRow> rows;          // sup over r per rho at t
  std::vector<ScanRow> doubled_rows;  // same at 2t
  std::vector<double> doubling_ratio; // sup(2t) / sup(t) per rho
  osc::DecayFit fit;                  // in rho, over rho > 1
  double tail_tol = 0.0;
};

SpacetimeScan spacetime_scan(const algebra::HTypeGroup& group, double alpha, double t,
                             const std::vector<double>& rho_grid, const ScanSettings& settings = {});

struct SharpnessResult {
  std::vector<double> t;
  std::vector<cplx> value;
  std::vector<double> quad_error;
  osc::DecayFit fit;
  double band_lo = 0.0;  // min of |V| t^{p/2} over the top decade
  double band_hi = 0.0;
  double band_ratio = 0.0;
};

// V(t) = (2 pi)^{-(d+p)} int sigma(p, l t alpha d^alpha) e^{i t d^alpha l^alpha} Q(l) l^{d+p-1} dl,
// the solution with data Q(|lambda|)[m = 0] at (0, t s_bar), s_bar = alpha d^alpha e_p.
SharpnessResult sharpness_profile(const algebra::HTypeGroup& group, double alpha, const std::vector<double>& t_grid,
                                  const std::function<double(double)>& Q = {}, double quad_tol = 0.0);

struct HessianReport {
  Eigen::MatrixXd hessian;  // closed form alpha d^alpha diag(1, ..., 1, alpha - 1)
  Eigen::MatrixXd fd_hessian;
  Eigen::VectorXd eigenvalues;
  double fd_deviation = 0.0;
  double gradient_norm = 0.0;  // finite-difference gradient at the critical point
  double determinant = 0.0;
};

// Phi(lambda) = -lambda . s_bar + d^alpha |lambda|^alpha at lambda_bar = e_p.
HessianReport hessian_at_critical(double alpha, int d, int p);

struct CaseRow {
  int m = 0;
  int case_id = 2;
  double threshold = 0.0;  // alpha 2^{-alpha-3} (2m+d) |t|
  double magnitude = 0.0;
  double envelope_ratio = 0.0;  // magnitude / (2m+d)^{-p-1/4}
};

std::vector<CaseRow> case_split_diagnostic(const algebra::HTypeGroup& group, double alpha, double t, double rho,
                                           int m_max = 100, double r = 0.0, double quad_tol = 1e-13);

}  // namespace htwave::prop
