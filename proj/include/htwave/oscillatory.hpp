#pragma once

#include "htwave/error.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace htwave::osc {

using cplx = std::complex<double>;

// Integral of e^{i phase(x)} amplitude(x) over [a, b]. frequency_scale is the
// number of phase cycles, |phase'|_max (b - a) / 2 pi.
struct OscillatoryIntegralSpec {
  double a = 0.0;
  double b = 1.0;
  std::function<double(double)> phase;
  std::function<cplx(double)> amplitude;
  double frequency_scale = 0.0;
  std::function<double(double)> phase_second;  // optional g''
  std::function<double(double)> phase_first;   // optional g'
};

struct OscillatoryResult {
  cplx value{};
  double error = 0.0;
  bool converged = true;
};

class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, OscillatoryResult best)
      : Error(ErrorCode::ToleranceNotReached, what), best_(best) {}
  const OscillatoryResult& best() const noexcept { return best_; }

 private:
  OscillatoryResult best_;
};

inline constexpr int kMaxDepth = 20;
inline constexpr long kSplitsPerPanel = 16;
inline constexpr long kExtraSplits = 4096;

// Splits [a, b] into max(4, ceil(4 frequency_scale)) Gauss-16 panels, each
// compared with its two halves, then bisects the worst interval until the
// summed disagreement is within tol. Intervals at kMaxDepth or agreeing to
// rounding level are final, and at most kSplitsPerPanel per panel plus
// kExtraSplits bisections are made. If tol is still not met,
// ToleranceError carries the best estimate.
OscillatoryResult integrate_oscillatory(const OscillatoryIntegralSpec& spec, double tol);

// Same, without throwing; `converged` reports the outcome.
OscillatoryResult integrate_oscillatory_nothrow(const OscillatoryIntegralSpec& spec, double tol);

struct StationaryEntry {
  OscillatoryIntegralSpec spec;
  double delta = 0.0;  // declared lower bound on |g''|
};

struct StationaryRow {
  double delta = 0.0;
  double magnitude = 0.0;
  double h_sup = 0.0;
  double h_variation = 0.0;
  double bound_ratio = 0.0;  // |I| delta^{1/2} / (|h|_inf + |h'|_1)
};

// Checks the declared delta by sampling g'' at 10^3 points per entry
// (DeclaredBoundViolated otherwise) and tabulates the normalized magnitude.
std::vector<StationaryRow> stationary_phase_bound_check(const std::vector<StationaryEntry>& family, double tol);

// g(x) = t x^2 / 2 on [-1, 1] with h = 1; delta = t.
std::vector<StationaryEntry> fresnel_family(const std::vector<double>& t_grid);

// g(mu) = t (mu^alpha - alpha mu) on [1/2, 4] with amplitude R(mu), stationary
// at mu = 1; delta = t alpha |alpha - 1| 2^{-alpha-4}.
std::vector<StationaryEntry> wave_phase_family(double alpha, const std::vector<double>& t_grid);

struct NonstationaryEntry {
  double t = 0.0;
  OscillatoryIntegralSpec spec;  // phase t G, phase_first = t G'
};

struct NonstationaryRow {
  double t = 0.0;
  double magnitude = 0.0;
  double scaled = 0.0;  // |I| t^Q
};

// Requires |G'| >= c on the interval (sampled at 10^3 points).
std::vector<NonstationaryRow> nonstationary_decay_check(const std::vector<NonstationaryEntry>& family, double c, int Q,
                                                        double tol);

struct DecayFit {
  double exponent = 0.0;
  double intercept = 0.0;  // natural log
  double residual = 0.0;   // max |log deviation|
  double t_min = 0.0;
  double t_max = 0.0;
  int samples = 0;
};

struct Sample {
  double t = 0.0;
  double magnitude = 0.0;
};

// Least squares line through (log t, log magnitude) for samples with t in
// [window_lo, window_hi]. Needs 8 samples, positive magnitudes and at least
// one decade; DegenerateInput otherwise.
DecayFit fit_power_law(const std::vector<Sample>& samples, double window_lo = 0.0,
                       double window_hi = std::numeric_limits<double>::infinity());

// Model stationary-phase integral over R^p: int e^{i t |lambda|^2} psi(|lambda|) d lambda
// with psi the smooth bump equal to 1 for |lambda| <= radius/2 and 0 beyond radius.
cplx quadratic_phase_model(int p, double t, double radius = 0.25, double tol = 1e-12);

// |model| over t, and its fit.
struct ModelScan {
  std::vector<Sample> samples;
  DecayFit fit;
};
ModelScan quadratic_phase_scan(int p, const std::vector<double>& t_grid, double radius = 0.25);

}  // namespace htwave::osc
