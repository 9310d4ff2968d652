#include "htwave/oscillatory.hpp"

#include "htwave/cutoff.hpp"
#include "htwave/io.hpp"
#include "htwave/parallel.hpp"
#include "htwave/quadrature.hpp"
#include "htwave/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace htwave::osc {

namespace {

struct Panel {
  cplx value;
  double mass;  // integral of |f|, the scale of rounding in value
};

Panel gauss_panel(const OscillatoryIntegralSpec& s, double lo, double hi) {
  const auto& rule = quad::gauss16();
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  cplx acc{};
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double x = mid + half * rule.x[i];
    const double g = s.phase ? s.phase(x) : 0.0;
    const cplx a = s.amplitude(x);
    acc += rule.w[i] * a * cplx(std::cos(g), std::sin(g));
    mass += rule.w[i] * std::abs(a);
  }
  return {acc * half, mass * half};
}

// An interval with its two-half estimate and the disagreement with the whole.
struct Piece {
  double lo, hi;
  cplx left, right;
  double error;
  bool refinable;
  int depth;
};

Piece make_piece(const OscillatoryIntegralSpec& s, double lo, double hi, cplx whole, int depth) {
  const double mid = 0.5 * (lo + hi);
  const Panel left = gauss_panel(s, lo, mid);
  const Panel right = gauss_panel(s, mid, hi);
  const double diff = std::abs(left.value + right.value - whole);
  // Below this level the difference is rounding and bisection cannot reduce it.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (left.mass + right.mass);
  return {lo, hi, left.value, right.value, diff, diff > floor && depth < kMaxDepth, depth};
}

}  // namespace

OscillatoryResult integrate_oscillatory_nothrow(const OscillatoryIntegralSpec& spec, double tol) {
  require(spec.b > spec.a, ErrorCode::InvalidArgument, "oscillatory integral needs a < b");
  require(static_cast<bool>(spec.amplitude), ErrorCode::InvalidArgument, "amplitude is required");
  require(std::isfinite(spec.frequency_scale) && spec.frequency_scale >= 0.0, ErrorCode::InvalidArgument,
          "frequency_scale must be finite and nonnegative");
  require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const int panels = std::max(4, static_cast<int>(std::ceil(4.0 * spec.frequency_scale)));
  const double h = (spec.b - spec.a) / panels;
  std::vector<Piece> pieces;
  pieces.reserve(static_cast<std::size_t>(panels));
  for (int k = 0; k < panels; ++k) {
    const double lo = spec.a + k * h;
    const double hi = k + 1 == panels ? spec.b : lo + h;
    pieces.push_back(make_piece(spec, lo, hi, gauss_panel(spec, lo, hi).value, 0));
  }

  // Split the worst interval until the summed disagreement meets tol or the
  // budget is spent. Ties break on position so the order is reproducible.
  const auto worse = [&](std::size_t i, std::size_t j) {
    return pieces[i].error < pieces[j].error || (pieces[i].error == pieces[j].error && pieces[i].lo > pieces[j].lo);
  };
  std::vector<std::size_t> heap;
  double total = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    total += pieces[i].error;
    if (pieces[i].refinable) heap.push_back(i);
  }
  std::make_heap(heap.begin(), heap.end(), worse);
  const long budget = kSplitsPerPanel * static_cast<long>(panels) + kExtraSplits;
  for (long splits = 0; total > tol && !heap.empty() && splits < budget; ++splits) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const std::size_t i = heap.back();
    heap.pop_back();
    const Piece parent = pieces[i];
    const double mid = 0.5 * (parent.lo + parent.hi);
    pieces[i] = make_piece(spec, parent.lo, mid, parent.left, parent.depth + 1);
    pieces.push_back(make_piece(spec, mid, parent.hi, parent.right, parent.depth + 1));
    total += pieces[i].error + pieces.back().error - parent.error;
    for (std::size_t k : {i, pieces.size() - 1}) {
      if (!pieces[k].refinable) continue;
      heap.push_back(k);
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  }

  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  OscillatoryResult out;
  for (const auto& piece : pieces) {
    out.value += piece.left + piece.right;
    out.error += piece.error;
  }
  out.converged = out.error <= tol;
  return out;
}

OscillatoryResult integrate_oscillatory(const OscillatoryIntegralSpec& spec, double tol) {
  OscillatoryResult out = integrate_oscillatory_nothrow(spec, tol);
  if (!out.converged)
    throw ToleranceError("error estimate " + io::fmt(out.error) + " above tolerance " + io::fmt(tol), out);
  return out;
}

namespace {

// Sup norm and total variation of the amplitude on a fine grid.
void amplitude_norms(const OscillatoryIntegralSpec& s, double& sup, double& variation) {
  constexpr int n = 4000;
  sup = 0.0;
  variation = 0.0;
  cplx prev = s.amplitude(s.a);
  sup = std::abs(prev);
  for (int i = 1; i <= n; ++i) {
    const cplx cur = s.amplitude(s.a + (s.b - s.a) * i / n);
    sup = std::max(sup, std::abs(cur));
    variation += std::abs(cur - prev);
    prev = cur;
  }
}

}  // namespace

std::vector<StationaryRow> stationary_phase_bound_check(const std::vector<StationaryEntry>& family, double tol) {
  for (const auto& e : family) {
    require(static_cast<bool>(e.spec.phase_second), ErrorCode::InvalidArgument,
            "stationary phase check needs the second derivative of the phase");
    require(e.delta > 0.0, ErrorCode::InvalidArgument, "delta must be positive");
    for (int i = 0; i < 1000; ++i) {
      const double x = e.spec.a + (e.spec.b - e.spec.a) * (i + 0.5) / 1000.0;
      const double g2 = std::abs(e.spec.phase_second(x));
      require(g2 >= e.delta * (1.0 - 1e-12), ErrorCode::DeclaredBoundViolated,
              "|g''| = " + io::fmt(g2) + " below declared delta " + io::fmt(e.delta) + " at x = " + io::fmt(x));
    }
  }
  std::vector<StationaryRow> rows(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const auto& e = family[i];
    StationaryRow row;
    row.delta = e.delta;
    row.magnitude = std::abs(integrate_oscillatory(e.spec, tol).value);
    amplitude_norms(e.spec, row.h_sup, row.h_variation);
    row.bound_ratio = row.magnitude * std::sqrt(e.delta) / (row.h_sup + row.h_variation);
    rows[i] = row;
  });
  return rows;
}

std::vector<StationaryEntry> fresnel_family(const std::vector<double>& t_grid) {
  std::vector<StationaryEntry> family;
  for (const double t : t_grid) {
    require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
    StationaryEntry e;
    e.spec.a = -1.0;
    e.spec.b = 1.0;
    e.spec.phase = [t](double x) { return 0.5 * t * x * x; };
    e.spec.phase_first = [t](double x) { return t * x; };
    e.spec.phase_second = [t](double) { return t; };
    e.spec.amplitude = [](double) { return cplx(1.0); };
    e.spec.frequency_scale = 2.0 * t / (2.0 * std::numbers::pi);
    e.delta = t;
    family.push_back(std::move(e));
  }
  return family;
}

std::vector<StationaryEntry> wave_phase_family(double alpha, const std::vector<double>& t_grid) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  std::vector<StationaryEntry> family;
  for (const double t : t_grid) {
    require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
    StationaryEntry e;
    e.spec.a = 0.5;
    e.spec.b = 4.0;
    e.spec.phase = [=](double mu) { return t * (std::pow(mu, alpha) - alpha * mu); };
    e.spec.phase_first = [=](double mu) { return t * alpha * (std::pow(mu, alpha - 1.0) - 1.0); };
    e.spec.phase_second = [=](double mu) { return t * alpha * (alpha - 1.0) * std::pow(mu, alpha - 2.0); };
    e.spec.amplitude = [](double mu) { return cplx(lp::cutoff_R(mu)); };
    e.spec.frequency_scale = t * alpha * 3.5 / (2.0 * std::numbers::pi);
    e.delta = t * alpha * (1.0 - alpha) * std::pow(2.0, -alpha - 4.0);
    family.push_back(std::move(e));
  }
  return family;
}

std::vector<NonstationaryRow> nonstationary_decay_check(const std::vector<NonstationaryEntry>& family, double c, int Q,
                                                        double tol) {
  require(c > 0.0 && Q >= 0, ErrorCode::InvalidArgument, "need c > 0 and Q >= 0");
  for (const auto& e : family) {
    require(e.t > 0.0 && static_cast<bool>(e.spec.phase_first), ErrorCode::InvalidArgument,
            "nonstationary check needs t > 0 and the phase derivative");
    for (int i = 0; i <= 1000; ++i) {
      const double x = e.spec.a + (e.spec.b - e.spec.a) * i / 1000.0;
      const double g1 = std::abs(e.spec.phase_first(x)) / e.t;
      require(g1 >= c, ErrorCode::DeclaredBoundViolated,
              "|G'| = " + io::fmt(g1) + " below declared bound " + io::fmt(c) + " at x = " + io::fmt(x));
    }
  }
  std::vector<NonstationaryRow> rows(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const auto& e = family[i];
    const double mag = std::abs(integrate_oscillatory_nothrow(e.spec, tol).value);
    rows[i] = {e.t, mag, mag * std::pow(e.t, Q)};
  });
  return rows;
}

DecayFit fit_power_law(const std::vector<Sample>& samples, double window_lo, double window_hi) {
  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (s.t < window_lo || s.t > window_hi) continue;
    require(s.t > 0.0 && s.magnitude > 0.0 && std::isfinite(s.magnitude), ErrorCode::DegenerateInput,
            "power-law fit needs positive t and magnitudes");
    x.push_back(std::log(s.t));
    y.push_back(std::log(s.magnitude));
  }
  require(x.size() >= 8, ErrorCode::DegenerateInput,
          "power-law fit needs at least 8 samples in the window, got " + std::to_string(x.size()));
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  require(*hi - *lo >= std::log(10.0) * (1.0 - 1e-12), ErrorCode::DegenerateInput,
          "power-law fit needs the t values to span at least one decade");

  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  DecayFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(y[i] - fit.intercept - fit.exponent * x[i]));
  fit.t_min = std::exp(*lo);
  fit.t_max = std::exp(*hi);
  fit.samples = static_cast<int>(x.size());
  return fit;
}

cplx quadratic_phase_model(int p, double t, double radius, double tol) {
  require(p >= 1 && radius > 0.0, ErrorCode::InvalidArgument, "model needs p >= 1 and radius > 0");
  OscillatoryIntegralSpec spec;
  spec.a = 0.0;
  spec.b = radius;
  spec.phase = [t](double l) { return t * l * l; };
  const double area = spherical::sphere_area(p);
  spec.amplitude = [=](double l) { return cplx(area * lp::chi(2.0 * l / radius) * std::pow(l, p - 1)); };
  spec.frequency_scale = std::abs(t) * 2.0 * radius * radius / (2.0 * std::numbers::pi);
  return integrate_oscillatory(spec, tol).value;
}

ModelScan quadratic_phase_scan(int p, const std::vector<double>& t_grid, double radius) {
  ModelScan scan;
  scan.samples.resize(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    scan.samples[i] = {t_grid[i], std::abs(quadratic_phase_model(p, t_grid[i], radius))};
  });
  scan.fit = fit_power_law(scan.samples);
  return scan;
}

}  // namespace htwave::osc
