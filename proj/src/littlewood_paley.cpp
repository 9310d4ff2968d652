#include "htwave/littlewood_paley.hpp"

#include "htwave/error.hpp"
#include "htwave/io.hpp"

#include <algorithm>
#include <cmath>

namespace htwave::lp {

LpGrids LpGrids::defaults(int d, int /*p*/) {
  LpGrids g;
  std::vector<double> r, rho;
  const double r_max = 6.0 * std::sqrt(static_cast<double>(d));
  const double rho_max = 12.0;
  for (int i = 0; i <= 48; ++i) {
    r.push_back(r_max * i / 48.0);
    rho.push_back(rho_max * i / 48.0);
  }
  g.r = quad::points(r);
  g.rho = quad::points(rho);
  return g;
}

spherical::SpectralProfile lp_profile(int j, int d, int p, int m_max, double panel_width) {
  require(m_max >= 0 && panel_width > 0.0, ErrorCode::InvalidArgument, "need m_max >= 0 and panel_width > 0");
  const double scale = std::ldexp(1.0, 2 * j);
  const double lo = 0.5 / (2.0 * m_max + d), hi = 4.0 / d;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / panel_width)));
  const quad::QuadGrid ell = quad::log_composite(scale * lo, scale * hi, panels);
  auto a = spherical::SpectralProfile::zeros(d, p, m_max, ell);
  for (int m = 0; m <= m_max; ++m)
    for (std::size_t k = 0; k < ell.size(); ++k)
      a.at(m, k) = cutoff_R(std::ldexp((2.0 * m + d) * ell.nodes[k], -2 * j));
  return a;
}

spherical::BiRadialField lp_kernel(int j, const algebra::HTypeGroup& group, const LpGrids& grids) {
  const auto a = lp_profile(j, group.d, group.p, grids.m_max, grids.panel_width);
  return spherical::inverse_transform(a, grids.r, grids.rho);
}

namespace {

double piece_norm(const spherical::SpectralProfile& piece, double q, const BesovOptions& options) {
  if (q == 2.0) return spherical::plancherel_norm(piece);
  require(!options.r.nodes.empty() && !options.rho.nodes.empty(), ErrorCode::InvalidArgument,
          "Besov norms with q != 2 need spatial grids");
  const auto field = spherical::inverse_transform(piece, options.r, options.rho);
  if (std::isinf(q)) {
    double sup = 0.0;
    for (const auto& v : field.values) sup = std::max(sup, std::abs(v));
    return sup;
  }
  require(options.r.has_weights() && options.rho.has_weights(), ErrorCode::InvalidArgument,
          "finite q needs quadrature weights on the spatial grids");
  double total = 0.0;
  for (std::size_t i = 0; i < field.r.size(); ++i)
    for (std::size_t k = 0; k < field.rho.size(); ++k)
      total += std::pow(std::abs(field.at(i, k)), q) * std::pow(field.r.nodes[i], 2 * field.d - 1) *
               field.r.weights[i] * std::pow(field.rho.nodes[k], field.p - 1) * field.rho.weights[k];
  return std::pow(spherical::z_sphere_area(field.d) * spherical::sphere_area(field.p) * total, 1.0 / q);
}

}  // namespace

BesovResult besov_norm(const spherical::SpectralProfile& f, const BesovIndex& idx, int j_lo, int j_hi,
                       const BesovOptions& options) {
  require(j_lo <= j_hi, ErrorCode::InvalidArgument, "empty j window");
  require(idx.q >= 1.0 && idx.r >= 1.0, ErrorCode::InvalidArgument, "Besov indices need q, r >= 1");
  const double N = 2.0 * f.d + 2.0 * f.p;
  const double bound = std::isinf(idx.q) ? 0.0 : N / idx.q;
  require(idx.rho < bound, ErrorCode::InvalidArgument,
          "Besov regularity must satisfy rho < N/q = " + io::fmt(bound));

  BesovResult res;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double scale = std::ldexp(1.0, -2 * j);
    const auto piece = spherical::apply_multiplier(f, [scale](double tau) { return spherical::cplx(cutoff_R(scale * tau)); });
    res.j.push_back(j);
    res.pieces.push_back(std::exp2(j * idx.rho) * piece_norm(piece, idx.q, options));
  }
  double total = 0.0, top = 0.0;
  for (double v : res.pieces) {
    top = std::max(top, v);
    total = std::isinf(idx.r) ? std::max(total, v) : total + std::pow(v, idx.r);
  }
  res.norm = std::isinf(idx.r) ? total : std::pow(total, 1.0 / idx.r);
  res.edge_mass = std::max(res.pieces.front(), res.pieces.back());
  res.window_ok = res.edge_mass <= 1e-10 * top;
  if (options.strict && !res.window_ok)
    fail(ErrorCode::WindowTooNarrow, "edge pieces carry " + io::fmt(res.edge_mass) + " against a maximum of " +
                                         io::fmt(top) + "; widen the j window");
  return res;
}

spherical::SpectralProfile heat_profile(int d, int p, double s, int m_max, const quad::QuadGrid& ell) {
  require(s > 0.0, ErrorCode::NonpositiveScale, "heat time must be positive");
  auto a = spherical::SpectralProfile::zeros(d, p, m_max, ell);
  for (int m = 0; m <= m_max; ++m)
    for (std::size_t k = 0; k < ell.size(); ++k) a.at(m, k) = std::exp(-s * (2.0 * m + d) * ell.nodes[k]);
  return a;
}

}  // namespace htwave::lp
