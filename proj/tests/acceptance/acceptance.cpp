// Acceptance checks C1-C14. One PASS/FAIL line per criterion; the exit code
// is the number of failures.

#include "htwave/algebra.hpp"
#include "htwave/band_kernel.hpp"
#include "htwave/cutoff.hpp"
#include "htwave/error.hpp"
#include "htwave/io.hpp"
#include "htwave/laguerre.hpp"
#include "htwave/littlewood_paley.hpp"
#include "htwave/oscillatory.hpp"
#include "htwave/propagator.hpp"
#include "htwave/quadrature.hpp"
#include "htwave/spherical.hpp"
#include "htwave/strichartz.hpp"
#include "htwave/sublaplacian.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace htwave;
using cplx = std::complex<double>;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* f, ...) {
  char buf[1024];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

const algebra::HTypeGroup& h1() {
  static const auto g = algebra::build_group(algebra::Family::heisenberg, 1, 1);
  return g;
}

const algebra::HTypeGroup& q23() {
  static const auto g = algebra::build_group(algebra::Family::quaternionic, 2, 3);
  return g;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return 0.5 * (v[(v.size() - 1) / 2] + v[v.size() / 2]);
}

Outcome c1_structure() {
  bool ok = true;
  for (int d : {1, 2, 3}) ok = ok && algebra::validate_structure(algebra::build_group(algebra::Family::heisenberg, d, 1).U, 0.0).ok();
  for (int p : {2, 3}) ok = ok && algebra::validate_structure(algebra::build_group(algebra::Family::quaternionic, 2, p).U, 0.0).ok();

  auto U = algebra::build_group(algebra::Family::quaternionic, 2, 3).U;
  U[1](0, 1) = -U[1](0, 1) + 0.5;  // breaks skew symmetry
  const auto report = algebra::validate_structure(U);
  const bool named = report.violates(algebra::Condition::skew_symmetry);
  return {ok && named, format("built-in groups exact: %s, corrupted matrix flags skew_symmetry: %s", ok ? "yes" : "no",
                              named ? "yes" : "no")};
}

Outcome c2_round_trip() {
  const auto r = quad::composite(0.0, 9.0, 80), rho = quad::composite(0.0, 12.0, 24);
  const auto ell = quad::composite(0.0, 12.0, 48);
  const std::vector<std::function<cplx(double, double)>> fields{
      [](double x, double y) { return cplx(std::exp(-x * x / 2) * (y * y * y * y - 6 * y * y + 3) * std::exp(-y * y / 2)); },
      [](double x, double y) { return cplx(std::exp(-x * x) * (y * y * y * y - 12 * y * y + 12) * std::exp(-y * y / 4)); }};
  std::vector<double> ri, pj;
  for (int i = 0; i <= 20; ++i) {
    ri.push_back(4.0 * i / 20);
    pj.push_back(5.0 * i / 20);
  }
  double worst = 0.0;
  for (const auto& F : fields) {
    const auto f = spherical::BiRadialField::sample(1, 1, r, rho, F);
    const auto back = spherical::inverse_transform(spherical::forward_transform(f, 200, ell), quad::points(ri), quad::points(pj));
    double err = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < ri.size(); ++i)
      for (std::size_t j = 0; j < pj.size(); ++j) {
        err = std::max(err, std::abs(back.at(i, j) - F(ri[i], pj[j])));
        peak = std::max(peak, std::abs(F(ri[i], pj[j])));
      }
    worst = std::max(worst, err / peak);
  }
  return {worst <= 1e-6, format("max relative error %.3e over two fields (limit 1e-6)", worst)};
}

Outcome c3_multiplier() {
  const int M = 60;
  spherical::BandKernelOptions o;
  o.m_max = M;
  o.rho_max = 6.0;
  o.r_max = 6.0;
  const spherical::BandKernel phi(1, 1, [](double mu) { return cplx(lp::cutoff_R(mu)); }, o);
  const spherical::BandKernel psi(1, 1, [](double mu) { return cplx(mu * lp::cutoff_R(mu)); }, o);
  const auto f = [&](const Eigen::VectorXd& x) {
    return phi.evaluate({std::hypot(x[0], x[1])}, {std::abs(x[2])}).values[0].real();
  };
  const double pts[10][3] = {{0.3, 0.2, 0.1},  {0.5, -0.4, 0.7}, {1.0, 0.3, -0.5}, {-0.8, 0.9, 1.2}, {1.5, 0.1, 0.3},
                             {0.2, -1.3, 2.0}, {2.0, 1.0, -1.0}, {0.7, 0.7, 2.5},  {-1.2, -0.6, 0.0}, {0.4, 2.2, 1.6}};
  double coarse = 0.0, fine = 0.0, peak = 0.0;
  for (const auto& p : pts) {
    const Eigen::Vector3d x(p[0], p[1], p[2]);
    const double ref = psi.evaluate({std::hypot(p[0], p[1])}, {std::abs(p[2])}).values[0].real();
    peak = std::max(peak, std::abs(ref));
    coarse = std::max(coarse, std::abs(algebra::sublaplacian_fd_at(f, h1(), x, 0.05) - ref));
    fine = std::max(fine, std::abs(algebra::sublaplacian_fd_at(f, h1(), x, 0.025) - ref));
  }
  const double rel = fine / peak, ratio = coarse / fine;
  return {rel <= 1e-3 && ratio >= 3.0 && ratio <= 5.0,
          format("relative error %.3e at h=0.025 (limit 1e-3), %.3e at h=0.05, halving ratio %.3f (need [3,5])", rel,
                 coarse / peak, ratio)};
}

Outcome c4_littlewood_paley() {
  double partition = 0.0;
  for (int i = 0; i <= 12000; ++i) {
    const double tau = std::exp2(-6.0 + 12.0 * i / 12000.0);
    double s = 0.0;
    for (int j = -8; j <= 8; ++j) s += lp::cutoff_R(std::ldexp(tau, -2 * j));
    partition = std::max(partition, std::abs(s - 1.0));
  }

  const double N = h1().homogeneous_dim();
  const auto base = lp::LpGrids::defaults(1, 1);
  const auto phi0 = lp::lp_kernel(0, h1(), base);
  double scaling = 0.0;
  for (int j = -2; j <= 2; ++j) {
    auto gj = base;
    std::vector<double> r, rho;
    for (double x : base.r.nodes) r.push_back(std::ldexp(x, -j));
    for (double x : base.rho.nodes) rho.push_back(std::ldexp(x, -2 * j));
    gj.r = quad::points(r);
    gj.rho = quad::points(rho);
    const auto phij = lp::lp_kernel(j, h1(), gj);
    double err = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < phij.values.size(); ++i) {
      const cplx ref = std::exp2(N * j) * phi0.values[i];
      err = std::max(err, std::abs(phij.values[i] - ref));
      peak = std::max(peak, std::abs(ref));
    }
    scaling = std::max(scaling, err / peak);
  }

  const auto f = lp::heat_profile(1, 1, 1.0, 200, quad::log_composite(1e-16, 60.0, 500));
  const auto besov = lp::besov_norm(f, {0.0, 2.0, 2.0}, -24, 6);
  const double l2 = spherical::plancherel_norm(f);
  const double gap = std::abs(besov.norm / l2 - 1.0);
  return {partition <= 1e-14 && scaling <= 1e-8 && gap <= 2e-3 && besov.window_ok,
          format("partition residual %.2e (limit 1e-14), scaling %.2e (limit 1e-8), Besov/L2 = %.4f, gap %.3e "
                 "(limit 2e-3)",
                 partition, scaling, besov.norm / l2, gap)};
}

// Surface-measure transform by direct quadrature over the sphere.
double sphere_oracle(int p, double xi) {
  if (p == 1) return std::cos(xi) + std::cos(-xi);
  if (p == 2) {
    const int n = 4096;
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += std::cos(xi * std::cos(2 * pi * k / n));
    return s * 2 * pi / n;
  }
  const auto theta = quad::composite(0.0, pi, 256);
  const int nphi = 16;
  double s = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (int k = 0; k < nphi; ++k)
      s += theta.weights[i] * (2 * pi / nphi) * std::cos(xi * std::cos(theta.nodes[i])) * std::sin(theta.nodes[i]);
  return s;
}

Outcome c5_sphere() {
  double closed = 0.0, brute = 0.0;
  for (double xi : {0.0, 0.3, 1.0, 4.7, 25.0, 180.0}) {
    const double forms[3] = {2 * std::cos(xi), 2 * pi * std::cyl_bessel_j(0.0, xi),
                             xi == 0.0 ? 4 * pi : 4 * pi * std::sin(xi) / xi};
    for (int p = 1; p <= 3; ++p) {
      const double v = spherical::sphere_fourier(p, xi);
      closed = std::max(closed, std::abs(v - forms[p - 1]));
      brute = std::max(brute, std::abs(v - sphere_oracle(p, xi)));
    }
  }
  bool bounded = true;
  std::string sups;
  for (int p = 1; p <= 3; ++p) {
    double early = 0.0, late = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i <= n; ++i) {
      const double xi = 1e4 * i / n;
      const double v = std::pow(xi, 0.5 * (p - 1)) * std::abs(spherical::sphere_fourier(p, xi));
      (xi <= 1e2 ? early : late) = std::max(xi <= 1e2 ? early : late, v);
    }
    bounded = bounded && late <= 1.1 * early;
    sups += format(" p=%d %.3f/%.3f", p, early, late);
  }
  return {closed <= 1e-10 && brute <= 1e-10 && bounded,
          format("closed forms %.2e, sphere quadrature %.2e (limit 1e-10); normalized sup [0,1e2]/[1e2,1e4]:%s",
                 closed, brute, sups.c_str())};
}

Outcome c6_laguerre() {
  bool ok = true;
  std::string detail;
  for (int d = 1; d <= 2; ++d)
    for (int k = 0; k <= 1; ++k) {
      const auto s = laguerre::summarize(laguerre::laguerre_growth_check(d - 1, k, 100));
      ok = ok && s.bounded();
      detail += format(" (d=%d,k=%d) %.3f/%.3f", d, k, s.early_max, s.late_max);
    }
  return {ok, "early/late max ratio:" + detail};
}

Outcome c7_stationary_phase() {
  const std::vector<double> ts{1e1, 1e2, 1e3, 1e4};
  bool ok = true;
  std::string detail;
  const auto check = [&](const std::vector<osc::StationaryRow>& rows, const std::string& name) {
    std::vector<double> ratios;
    for (const auto& row : rows) ratios.push_back(row.bound_ratio);
    const double med = median(ratios);
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    ok = ok && *hi <= 2 * med && *lo >= 0.5 * med;
    detail += format(" %s [%.3g, %.3g] median %.3g;", name.c_str(), *lo, *hi, med);
  };
  check(osc::stationary_phase_bound_check(osc::fresnel_family(ts), 1e-12), "Fresnel");
  for (double alpha : {0.25, 0.5, 0.75})
    check(osc::stationary_phase_bound_check(osc::wave_phase_family(alpha, ts), 1e-12), format("alpha=%.2f", alpha));
  return {ok, "bound ratios" + detail};
}

Outcome c8_decay() {
  struct Case {
    const algebra::HTypeGroup* g;
    double alpha, t_max, target, slack;
  };
  const Case cases[] = {{&h1(), 0.5, 300.0, -0.5, 0.1}, {&h1(), 0.75, 300.0, -0.5, 0.1}, {&q23(), 0.5, 200.0, -1.5, 0.2}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto scan = prop::dispersive_sup_scan(*c.g, c.alpha, io::GridSpec{10.0, c.t_max, 24, true}.values());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = std::abs(scan.fit.exponent - c.target) <= c.slack && secs <= 600.0;
    ok = ok && pass;
    detail += format(" (d=%d,p=%d,alpha=%.2f) exponent %.3f target %.1f+-%.1f, residual %.2f, %.0fs;", c.g->d, c.g->p,
                     c.alpha, scan.fit.exponent, c.target, c.slack, scan.fit.residual, secs);
  }
  return {ok, detail.substr(1)};
}

Outcome c9_cone() {
  const auto scan = prop::spacetime_scan(q23(), 0.5, 50.0, io::GridSpec{5.0, 500.0, 24, true}.values());
  const double ratio = median(scan.doubling_ratio);
  const auto [lo, hi] = std::minmax_element(scan.doubling_ratio.begin(), scan.doubling_ratio.end());
  const bool pass = std::abs(scan.fit.exponent + 1.0) <= 0.2 && ratio >= 0.6 && ratio <= 0.82;
  return {pass, format("rho exponent %.3f (target -1.0+-0.2), doubling ratio median %.3f in [%.3g, %.3g] (need "
                       "[0.6, 0.82])",
                       scan.fit.exponent, ratio, *lo, *hi)};
}

Outcome c10_sharpness() {
  bool ok = true;
  std::string detail;
  for (const auto* g : {&h1(), &q23()}) {
    const auto s = prop::sharpness_profile(*g, 0.5, io::GridSpec{20.0, 2000.0, 24, true}.values());
    const bool pass = std::abs(s.fit.exponent + 0.5 * g->p) <= 0.1 && s.band_ratio <= 3.0;
    ok = ok && pass;
    detail += format(" (d=%d,p=%d) exponent %.3f band %.3f;", g->d, g->p, s.fit.exponent, s.band_ratio);
  }
  double fd = 0.0, smallest = 1e300;
  for (int i = 1; i <= 9; ++i)
    for (auto [d, p] : {std::pair{1, 1}, std::pair{2, 3}}) {
      const auto h = prop::hessian_at_critical(i / 10.0, d, p);
      fd = std::max(fd, h.fd_deviation);
      smallest = std::min(smallest, h.eigenvalues.cwiseAbs().minCoeff());
    }
  ok = ok && fd <= 1e-6 && smallest > 0.0;
  detail += format(" Hessian fd deviation %.2e, min |eigenvalue| %.3g", fd, smallest);
  return {ok, detail.substr(1)};
}

Outcome c11_plateau() {
  bool ok = true;
  std::string detail;
  for (const auto* g : {&h1(), &q23()}) {
    const auto scan = prop::dispersive_sup_scan(*g, 0.5, io::GridSpec{0.01, 1.0, 12, true}.values());
    double sup = 0.0;
    for (const auto& row : scan.rows) sup = std::max(sup, std::abs(row.value));
    ok = ok && sup <= 1.05 * scan.plateau;
    detail += format(" (d=%d,p=%d) sup/plateau %.5f;", g->d, g->p, sup / scan.plateau);
  }
  return {ok, detail.substr(1)};
}

Outcome c12_strichartz() {
  using namespace strichartz;
  const auto ext = [](std::int64_t n, std::int64_t d = 1) { return ExtRational::of(Rational(n, d)); };
  const auto a = admissible_from_r(ext(2), 1, 1);
  const bool first = a.q.infinite && a.rho == Rational(0);
  bool excluded = false;
  try {
    check_admissible(ext(2), ExtRational::inf(), 2, 2);
  } catch (const Error& e) {
    excluded = e.code() == ErrorCode::ExcludedEndpoint;
  }
  const auto c = admissible_from_r(ext(3), 2, 3);
  const bool third = c.q == ext(4) && c.rho == -(Rational(c.N) - Rational(3, 2)) / Rational(6);
  const auto line = lebesgue_line(ext(7), 1, 1);
  const bool lebesgue = line.q_min == Rational(7) && line.r == ext(14, 3);
  return {first && excluded && third && lebesgue,
          format("p=1,r=2 -> q=%s rho=%s; (2,inf,2) excluded: %s; p=3,r=3 -> q=%s rho=%s; q_min=%s, r(7)=%s",
                 a.q.str().c_str(), a.rho.str().c_str(), excluded ? "yes" : "no", c.q.str().c_str(),
                 c.rho.str().c_str(), line.q_min.str().c_str(), line.r.str().c_str())};
}

// The kernel summed over m <= M straight from the lambda integral over the
// real line, with no reduction to |lambda|: composite Simpson on each side.
cplx direct_oracle(double alpha, double t, double r, double s, int M) {
  cplx total{};
  for (int m = 0; m <= M; ++m) {
    const double n = 2.0 * m + 1;
    const double lo = 0.5 / n, hi = 4.0 / n;
    const int steps = 20000;
    const double h = (hi - lo) / steps;
    for (double sign : {-1.0, 1.0}) {
      cplx acc{};
      for (int k = 0; k <= steps; ++k) {
        const double a = lo + k * h, lam = sign * a;
        const double x = a * r * r / 2;
        const double weight = k == 0 || k == steps ? 1.0 : (k % 2 ? 4.0 : 2.0);
        const double phase = -lam * s + t * std::pow(n * a, alpha);
        acc += weight * std::exp(cplx(0, phase)) * lp::cutoff_R(n * a) * std::assoc_laguerre(m, 0, x) *
               std::exp(-x / 2) * a;
      }
      total += acc * h / 3.0;
    }
  }
  return total / std::pow(2 * pi, 2);
}

Outcome c13_oracle() {
  const int M = 60;
  const double pts[3][3] = {{5.0, 1.0, 2.0}, {1.0, 0.0, 0.5}, {20.0, 2.0, 7.0}};
  double worst = 0.0;
  for (const auto& q : pts) {
    prop::PropagatorQuery query;
    query.group = h1();
    query.alpha = 0.5;
    query.t = q[0];
    query.r = q[1];
    query.rho = q[2];
    query.quad_tol = 1e-13;
    prop::KernelOptions opts;
    opts.force_m = M;
    const cplx v = prop::propagator_kernel(query, opts).value;
    const cplx ref = direct_oracle(0.5, q[0], q[1], q[2], M);
    worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
  }

  std::mt19937 rng(20261015);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int honest = 0;
  for (int k = 0; k < 20; ++k) {
    prop::PropagatorQuery query;
    query.group = k % 2 ? q23() : h1();
    query.alpha = 0.2 + 0.6 * u(rng);
    query.t = 1.0 + 49.0 * u(rng);
    query.r = 3.0 * u(rng);
    query.rho = 10.0 * u(rng);
    query.quad_tol = 1e-12;
    prop::KernelOptions shortsum, longsum;
    shortsum.force_m = 5 + static_cast<int>(35 * u(rng));
    longsum.force_m = 400;
    const auto a = prop::propagator_kernel(query, shortsum);
    const auto b = prop::propagator_kernel(query, longsum);
    if (std::abs(a.value - b.value) <= a.tail_bound + a.quad_error + b.quad_error) ++honest;
  }
  return {worst <= 1e-6 && honest == 20,
          format("max relative deviation from direct quadrature %.2e at 3 points (limit 1e-6); tail bound honest on "
                 "%d/20 random queries",
                 worst, honest)};
}

int run_cli(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + HTW_CLI_PATH + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c14_determinism() {
  const fs::path dir = fs::temp_directory_path() / "htw-acceptance-c14";
  fs::remove_all(dir);
  const std::string args = "decay-fit --family heisenberg --d 1 --p 1 --alpha 0.5 --t 10:300:24:log --out " + dir.string();
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "2", "1"}) {
    if (run_cli(std::string("HTW_THREADS=") + threads, args) != 0) return {false, "decay-fit run failed"};
    outputs.push_back(slurp(dir / "scan.csv") + slurp(dir / "fit.json"));
    fs::remove_all(dir);
  }
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  return {same && !outputs[0].empty(),
          format("scan.csv and fit.json byte-identical across HTW_THREADS=1,2,1: %s", same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"C1", c1_structure},   {"C2", c2_round_trip},       {"C3", c3_multiplier}, {"C4", c4_littlewood_paley},
      {"C5", c5_sphere},      {"C6", c6_laguerre},         {"C7", c7_stationary_phase}, {"C8", c8_decay},
      {"C9", c9_cone},        {"C10", c10_sharpness},      {"C11", c11_plateau},  {"C12", c12_strichartz},
      {"C13", c13_oracle},    {"C14", c14_determinism}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.pass) ++failures;
    std::printf("%s %s (%.1fs) %s\n", name, out.pass ? "PASS" : "FAIL", secs, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
