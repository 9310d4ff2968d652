#include "htwave/propagator.hpp"

#include "htwave/band_kernel.hpp"
#include "htwave/cutoff.hpp"
#include "htwave/error.hpp"
#include "htwave/io.hpp"
#include "htwave/laguerre.hpp"
#include "htwave/parallel.hpp"
#include "htwave/quadrature.hpp"
#include "htwave/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace htwave::prop {

using std::numbers::pi;

namespace {

void check_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
}

double cutoff_moment(int k) {
  const auto g = quad::composite(0.5, 4.0, 64);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * lp::cutoff_R(g.nodes[i]) * std::pow(g.nodes[i], k);
  return s;
}

double term_weight(int d, int p, int m) {
  return laguerre::binomial(m + d - 1, m) * std::pow(2.0 * m + d, -(d + p));
}

// suffix[M] = sum_{m > M} term_weight, for M <= kMaxTerms + 64.
const std::vector<double>& suffix_sums(int d, int p) {
  static std::mutex guard;
  static std::map<std::pair<int, int>, std::vector<double>> cache;
  std::lock_guard lock(guard);
  auto it = cache.find({d, p});
  if (it != cache.end()) return it->second;

  constexpr int K = 2'000'000;
  constexpr int table = kMaxTerms + 64;
  // integral bound for m > K: term <= (m + d)^{d-1} / (d-1)! (2m)^{-(d+p)}
  double fact = 1.0;
  for (int i = 2; i < d; ++i) fact *= i;
  double tail = std::pow(1.0 + static_cast<double>(d) / K, d - 1) * std::pow(2.0, -(d + p)) *
                std::pow(static_cast<double>(K), -p) / (p * fact);
  for (int m = K; m > table; --m) tail += term_weight(d, p, m);
  std::vector<double> suffix(table + 1);
  for (int M = table; M >= 0; --M) {
    suffix[M] = tail;
    tail += term_weight(d, p, M);
  }
  return cache.emplace(std::make_pair(d, p), std::move(suffix)).first->second;
}

double origin_factor(int d, int p) {
  return std::pow(2.0 * pi, -(d + p)) * spherical::sphere_area(p) * cutoff_moment(d + p - 1);
}

}  // namespace

double tail_bound(int d, int p, int M) {
  require(M >= 0 && M <= kMaxTerms + 64, ErrorCode::InvalidArgument, "tail index out of range");
  return origin_factor(d, p) * suffix_sums(d, p)[M];
}

int terms_for_tolerance(int d, int p, double tol, bool* converged) {
  const double f = origin_factor(d, p);
  const auto& s = suffix_sums(d, p);
  for (int M = 0; M <= kMaxTerms; ++M)
    if (f * s[M] <= tol) {
      if (converged) *converged = true;
      return M;
    }
  if (converged) *converged = false;
  return kMaxTerms;
}

double plateau_value(int d, int p, int M) {
  double sum = 0.0;
  for (int m = 0; m <= M; ++m) sum += term_weight(d, p, m);
  return origin_factor(d, p) * sum;
}

osc::OscillatoryResult propagator_term(const PropagatorQuery& q, int m, double tol,
                                       const std::function<double(double)>& cutoff) {
  const int d = q.group.d, p = q.group.p;
  const double n = 2.0 * m + d;
  const double pref = std::pow(2.0 * pi, -(d + p)) * std::pow(n, -(d + p));
  const auto R = cutoff ? cutoff : std::function<double(double)>(lp::cutoff_R);
  osc::OscillatoryIntegralSpec spec;
  spec.a = 0.5;
  spec.b = 4.0;
  const double t = q.t, alpha = q.alpha, r = q.r, rho = q.rho;
  spec.phase = [t, alpha](double mu) { return t * std::pow(mu, alpha); };
  spec.amplitude = [=](double mu) {
    const double amp = R(mu);
    if (amp == 0.0) return osc::cplx{};
    return osc::cplx(spherical::sphere_fourier(p, mu * rho / n) * amp *
                     laguerre::laguerre_function({m, d - 1}, mu * r * r / (2.0 * n)) * std::pow(mu, d + p - 1));
  };
  spec.frequency_scale = (std::abs(t) * alpha * std::pow(2.0, 1.0 - alpha) + rho / n) * 3.5 / (2.0 * pi);
  auto res = osc::integrate_oscillatory_nothrow(spec, tol / pref);
  res.value *= pref;
  res.error *= pref;
  return res;
}

KernelValue propagator_kernel(const PropagatorQuery& q, const KernelOptions& options) {
  check_alpha(q.alpha);
  require(q.t != 0.0, ErrorCode::InvalidArgument, "t must be nonzero");
  require(q.r >= 0.0 && q.rho >= 0.0, ErrorCode::InvalidArgument, "r and rho must be nonnegative");
  require(q.tail_tol > 0.0 && q.quad_tol > 0.0, ErrorCode::InvalidArgument, "tolerances must be positive");
  const int d = q.group.d, p = q.group.p;

  KernelValue kv;
  if (options.force_m >= 0) {
    kv.m_used = options.force_m;
    kv.tail_bound = options.force_m <= kMaxTerms + 64 ? tail_bound(d, p, options.force_m) : 0.0;
    kv.tail_converged = kv.tail_bound <= q.tail_tol;
  } else {
    bool ok = true;
    kv.m_used = terms_for_tolerance(d, p, q.tail_tol, &ok);
    kv.tail_bound = tail_bound(d, p, kv.m_used);
    kv.tail_converged = ok;
  }
  if (options.cutoff) kv.tail_converged = true;  // the bound is stated for R

  std::vector<osc::OscillatoryResult> terms(static_cast<std::size_t>(kv.m_used) + 1);
  const double per_term = q.quad_tol / (kv.m_used + 1);
  parallel_for(terms.size(), [&](std::size_t m) {
    terms[m] = propagator_term(q, static_cast<int>(m), per_term, options.cutoff);
  });
  for (const auto& term : terms) {
    kv.value += term.value;
    kv.quad_error += term.error;
  }
  return kv;
}

namespace {

double resolve_tol(double requested, double plateau) { return requested > 0.0 ? requested : 1e-7 * plateau; }

std::function<spherical::cplx(double)> propagator_multiplier(double t, double alpha) {
  return [t, alpha](double mu) {
    const double R = lp::cutoff_R(mu);
    if (R == 0.0) return spherical::cplx{};
    const double ph = t * std::pow(mu, alpha);
    return spherical::cplx(R * std::cos(ph), R * std::sin(ph));
  };
}

// Evaluates the propagator on r x rho, refining panels until the coarse/fine
// gap at the largest value is within quad_tol.
spherical::BandKernelValues evaluate_grid(int d, int p, double alpha, double t, int M, const std::vector<double>& r,
                                          const std::vector<double>& rho, double quad_tol, double max_panel) {
  spherical::BandKernelOptions opt;
  opt.m_max = M;
  opt.phase_rate = std::abs(t) * alpha * std::pow(4.0, alpha);
  opt.rho_max = rho.empty() ? 0.0 : *std::max_element(rho.begin(), rho.end());
  opt.r_max = r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
  opt.max_panel = max_panel;
  spherical::BandKernelValues vals;
  for (int attempt = 0; attempt < 4; ++attempt) {
    spherical::BandKernel kernel(d, p, propagator_multiplier(t, alpha), opt);
    vals = kernel.evaluate(r, rho);
    const double worst = *std::max_element(vals.error.begin(), vals.error.end());
    if (worst <= quad_tol) break;
    opt.max_panel *= 0.5;
    opt.phase_rate *= 2.0;  // halves the oscillation-limited widths as well
  }
  return vals;
}

std::vector<double> uniform(double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? 0.0 : hi * i / (count - 1);
  return v;
}

}  // namespace

SupScan dispersive_sup_scan(const algebra::HTypeGroup& group, double alpha, const std::vector<double>& t_grid,
                            const ScanSettings& settings) {
  check_alpha(alpha);
  require(!t_grid.empty(), ErrorCode::InvalidArgument, "empty t grid");
  require(!settings.r_grid.empty() && settings.rho_count >= 3, ErrorCode::InvalidArgument,
          "scan needs an r grid and at least 3 rho points");
  const int d = group.d, p = group.p;

  SupScan scan;
  scan.plateau = plateau_value(d, p, kMaxTerms);
  scan.tail_tol = resolve_tol(settings.tail_tol, scan.plateau);
  scan.quad_tol = resolve_tol(settings.quad_tol, scan.plateau);
  bool converged = true;
  const int M = terms_for_tolerance(d, p, scan.tail_tol, &converged);
  scan.tail_converged = converged;
  const double tail = tail_bound(d, p, M);

  scan.rows.resize(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t k) {
    const double t = t_grid[k];
    require(t != 0.0, ErrorCode::InvalidArgument, "t must be nonzero");
    const double rho_max = 2.0 * std::abs(t) * std::pow(2.0 * settings.m_eff + d, alpha);
    const auto rho = uniform(rho_max, settings.rho_count);
    const auto vals = evaluate_grid(d, p, alpha, t, M, settings.r_grid, rho, scan.quad_tol, settings.max_panel);

    const std::size_t nrho = rho.size(), nr = settings.r_grid.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.values.size(); ++i)
      if (std::abs(vals.values[i]) > std::abs(vals.values[best])) best = i;
    const std::size_t ia = best / nrho, jb = best % nrho;
    double r_edge = 0.0;
    for (std::size_t j = 0; j < nrho; ++j) r_edge = std::max(r_edge, std::abs(vals.values[(nr - 1) * nrho + j]));

    ScanRow row;
    row.t = t;
    row.r = settings.r_grid[ia];
    row.rho = rho[jb];
    row.value = vals.values[best];
    row.m_used = M;
    row.tail_bound = tail;
    row.quad_error = vals.error[best];
    row.r_tail_ratio = r_edge / std::abs(row.value);
    require(jb + 1 < nrho, ErrorCode::GridInsufficient,
            "sup at t = " + io::fmt(t) + " lies on the outer rho boundary " + io::fmt(rho_max));
    require(nr == 1 || ia + 1 < nr, ErrorCode::GridInsufficient,
            "sup at t = " + io::fmt(t) + " lies on the outer r boundary " + io::fmt(settings.r_grid.back()));
    scan.rows[k] = row;
  });

  std::vector<osc::Sample> samples;
  for (const auto& row : scan.rows)
    if (std::abs(row.value) >= 1e3 * std::max(scan.tail_tol, scan.quad_tol)) samples.push_back({row.t, std::abs(row.value)});
  scan.fit = osc::fit_power_law(samples);
  return scan;
}

SpacetimeScan spacetime_scan(const algebra::HTypeGroup& group, double alpha, double t,
                             const std::vector<double>& rho_grid, const ScanSettings& settings) {
  check_alpha(alpha);
  require(t != 0.0 && !rho_grid.empty(), ErrorCode::InvalidArgument, "need t != 0 and a rho grid");
  const int d = group.d, p = group.p;
  const double plateau = plateau_value(d, p, kMaxTerms);
  SpacetimeScan scan;
  scan.tail_tol = resolve_tol(settings.tail_tol, plateau);
  const double quad_tol = resolve_tol(settings.quad_tol, plateau);
  const int M = terms_for_tolerance(d, p, scan.tail_tol);
  const double tail = tail_bound(d, p, M);

  std::vector<std::vector<ScanRow>> both(2);
  parallel_for(2, [&](std::size_t which) {
    const double tt = which == 0 ? t : 2.0 * t;
    const auto vals = evaluate_grid(d, p, alpha, tt, M, settings.r_grid, rho_grid, quad_tol, settings.max_panel);
    const std::size_t nrho = rho_grid.size(), nr = settings.r_grid.size();
    std::vector<ScanRow> rows(nrho);
    for (std::size_t j = 0; j < nrho; ++j) {
      std::size_t best = j;
      for (std::size_t a = 1; a < nr; ++a)
        if (std::abs(vals.values[a * nrho + j]) > std::abs(vals.values[best])) best = a * nrho + j;
      rows[j] = {tt, rho_grid[j], settings.r_grid[best / nrho], vals.values[best], M, tail, vals.error[best], 0.0};
      require(nr == 1 || best / nrho + 1 < nr, ErrorCode::GridInsufficient,
              "sup over r at rho = " + io::fmt(rho_grid[j]) + " lies on the outer r boundary");
    }
    both[which] = std::move(rows);
  });
  scan.rows = std::move(both[0]);
  scan.doubled_rows = std::move(both[1]);
  std::vector<osc::Sample> samples;
  for (std::size_t j = 0; j < scan.rows.size(); ++j) {
    scan.doubling_ratio.push_back(std::abs(scan.doubled_rows[j].value) / std::abs(scan.rows[j].value));
    if (scan.rows[j].rho > 1.0) samples.push_back({scan.rows[j].rho, std::abs(scan.rows[j].value)});
  }
  scan.fit = osc::fit_power_law(samples);
  return scan;
}

SharpnessResult sharpness_profile(const algebra::HTypeGroup& group, double alpha, const std::vector<double>& t_grid,
                                  const std::function<double(double)>& Q, double quad_tol) {
  check_alpha(alpha);
  const int d = group.d, p = group.p;
  const auto bump = Q ? Q : std::function<double(double)>(lp::bump_Q);
  const double c = std::pow(2.0 * pi, -(d + p));
  const double da = std::pow(static_cast<double>(d), alpha);
  if (quad_tol <= 0.0) {
    // 1e-9 of the t = 0 value
    const auto g = quad::composite(0.5, 2.0, 32);
    double v0 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) v0 += g.weights[i] * lp::bump_Q(g.nodes[i]) * std::pow(g.nodes[i], d + p - 1);
    quad_tol = 1e-9 * c * spherical::sphere_area(p) * v0;
  }

  SharpnessResult res;
  res.t = t_grid;
  res.value.resize(t_grid.size());
  res.quad_error.resize(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t k) {
    const double t = t_grid[k];
    osc::OscillatoryIntegralSpec spec;
    spec.a = 0.5;
    spec.b = 2.0;
    spec.phase = [=](double l) { return t * da * std::pow(l, alpha); };
    spec.amplitude = [=](double l) {
      return osc::cplx(spherical::sphere_fourier(p, l * t * alpha * da) * bump(l) * std::pow(l, d + p - 1));
    };
    spec.frequency_scale =
        std::abs(t) * alpha * da * (std::pow(0.5, alpha - 1.0) + 1.0) * 1.5 / (2.0 * pi);
    const auto r = osc::integrate_oscillatory(spec, quad_tol / c);
    res.value[k] = c * r.value;
    res.quad_error[k] = c * r.error;
  });

  std::vector<osc::Sample> samples;
  for (std::size_t k = 0; k < t_grid.size(); ++k) samples.push_back({t_grid[k], std::abs(res.value[k])});
  res.fit = osc::fit_power_law(samples);

  const double t_top = *std::max_element(t_grid.begin(), t_grid.end());
  res.band_lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (t_grid[k] < t_top / 10.0 * (1 - 1e-12)) continue;
    const double v = std::abs(res.value[k]) * std::pow(t_grid[k], 0.5 * p);
    res.band_lo = std::min(res.band_lo, v);
    res.band_hi = std::max(res.band_hi, v);
  }
  res.band_ratio = res.band_hi / res.band_lo;
  return res;
}

HessianReport hessian_at_critical(double alpha, int d, int p) {
  check_alpha(alpha);
  require(d >= 1 && p >= 1, ErrorCode::DimensionMismatch, "d and p must be positive");
  const double da = std::pow(static_cast<double>(d), alpha);
  Eigen::VectorXd s_bar = Eigen::VectorXd::Zero(p);
  s_bar[p - 1] = alpha * da;
  auto Phi = [&](const Eigen::VectorXd& lam) { return -lam.dot(s_bar) + da * std::pow(lam.norm(), alpha); };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
  x[p - 1] = 1.0;

  HessianReport rep;
  rep.hessian = Eigen::MatrixXd::Identity(p, p) * (alpha * da);
  rep.hessian(p - 1, p - 1) = alpha * da * (alpha - 1.0);

  const double h = 1e-4;
  rep.fd_hessian.resize(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Eigen::VectorXd ei = Eigen::VectorXd::Unit(p, i) * h, ej = Eigen::VectorXd::Unit(p, j) * h;
      rep.fd_hessian(i, j) = (Phi(x + ei + ej) - Phi(x + ei - ej) - Phi(x - ei + ej) + Phi(x - ei - ej)) / (4 * h * h);
    }
  rep.fd_deviation = (rep.fd_hessian - rep.hessian).cwiseAbs().maxCoeff();
  Eigen::VectorXd grad(p);
  for (int i = 0; i < p; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(p, i) * 1e-6;
    grad[i] = (Phi(x + e) - Phi(x - e)) / 2e-6;
  }
  rep.gradient_norm = grad.norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rep.hessian);
  rep.eigenvalues = eig.eigenvalues();
  rep.determinant = rep.hessian.determinant();
  return rep;
}

std::vector<CaseRow> case_split_diagnostic(const algebra::HTypeGroup& group, double alpha, double t, double rho,
                                           int m_max, double r, double quad_tol) {
  check_alpha(alpha);
  require(m_max >= 0, ErrorCode::InvalidArgument, "m_max must be nonnegative");
  PropagatorQuery q;
  q.group = group;
  q.alpha = alpha;
  q.t = t;
  q.r = r;
  q.rho = rho;
  const int d = group.d, p = group.p;
  std::vector<CaseRow> rows(static_cast<std::size_t>(m_max) + 1);
  parallel_for(rows.size(), [&](std::size_t k) {
    const int m = static_cast<int>(k);
    CaseRow row;
    row.m = m;
    row.threshold = alpha * std::pow(2.0, -alpha - 3.0) * (2.0 * m + d) * std::abs(t);
    row.case_id = rho >= row.threshold ? 1 : 2;
    row.magnitude = std::abs(propagator_term(q, m, quad_tol).value);
    row.envelope_ratio = row.magnitude / std::pow(2.0 * m + d, -p - 0.25);
    rows[k] = row;
  });
  return rows;
}

}  // namespace htwave::prop
