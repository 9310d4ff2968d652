#include "htwave/spherical.hpp"

#include "htwave/error.hpp"
#include "htwave/io.hpp"
#include "htwave/laguerre.hpp"
#include "htwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace htwave::spherical {

using std::numbers::pi;

double sphere_area(int p) {
  require(p >= 1, ErrorCode::UnsupportedDimension, "sphere dimension p must be at least 1");
  return 2.0 * std::pow(pi, 0.5 * p) / std::tgamma(0.5 * p);
}

double sphere_fourier(int p, double xi) {
  require(p >= 1, ErrorCode::UnsupportedDimension, "sphere dimension p must be at least 1");
  xi = std::abs(xi);
  switch (p) {
    case 1:
      return 2.0 * std::cos(xi);
    case 2:
      return 2.0 * pi * std::cyl_bessel_j(0.0, xi);
    case 3:
      if (xi < 1e-4) return 4.0 * pi * (1.0 - xi * xi / 6.0);
      return 4.0 * pi * std::sin(xi) / xi;
    default: {
      const double nu = 0.5 * (p - 2);
      if (xi < 1e-6) return sphere_area(p);
      return std::pow(2.0 * pi, 0.5 * p) * std::pow(xi, -nu) * std::cyl_bessel_j(nu, xi);
    }
  }
}

double z_sphere_area(int d) { return sphere_area(2 * d); }

SpectralProfile SpectralProfile::zeros(int d, int p, int m_max, quad::QuadGrid ell) {
  SpectralProfile a;
  a.d = d;
  a.p = p;
  a.m_max = m_max;
  a.ell = std::move(ell);
  a.values.assign(static_cast<std::size_t>(m_max + 1) * a.ell.size(), cplx{});
  return a;
}

BiRadialField BiRadialField::zeros(int d, int p, quad::QuadGrid r, quad::QuadGrid rho) {
  BiRadialField f;
  f.d = d;
  f.p = p;
  f.r = std::move(r);
  f.rho = std::move(rho);
  f.values.assign(f.r.size() * f.rho.size(), cplx{});
  return f;
}

BiRadialField BiRadialField::sample(int d, int p, quad::QuadGrid r, quad::QuadGrid rho,
                                    const std::function<cplx(double, double)>& fn) {
  BiRadialField f = zeros(d, p, std::move(r), std::move(rho));
  for (std::size_t i = 0; i < f.r.size(); ++i)
    for (std::size_t j = 0; j < f.rho.size(); ++j) f.at(i, j) = fn(f.r.nodes[i], f.rho.nodes[j]);
  return f;
}

namespace {

void check_grid(const quad::QuadGrid& g, const char* name) {
  require(!g.nodes.empty(), ErrorCode::NonRadialInput, std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < g.size(); ++i) {
    require(std::isfinite(g.nodes[i]) && g.nodes[i] >= 0.0, ErrorCode::NonRadialInput,
            std::string(name) + " nodes must be finite and nonnegative");
    if (i > 0)
      require(g.nodes[i] > g.nodes[i - 1], ErrorCode::NonRadialInput,
              std::string(name) + " nodes must be strictly increasing");
  }
}

void check_dims(int d, int p) {
  require(d >= 1 && p >= 1, ErrorCode::DimensionMismatch, "d and p must be positive");
}

}  // namespace

SpectralProfile forward_transform(const BiRadialField& f, int m_max, const quad::QuadGrid& ell) {
  check_dims(f.d, f.p);
  check_grid(f.r, "r");
  check_grid(f.rho, "rho");
  check_grid(ell, "ell");
  require(f.r.has_weights() && f.rho.has_weights(), ErrorCode::NonRadialInput,
          "forward transform needs quadrature weights on the r and rho grids");
  require(f.values.size() == f.r.size() * f.rho.size(), ErrorCode::DimensionMismatch, "field size mismatch");
  require(m_max >= 0, ErrorCode::InvalidArgument, "m_max must be nonnegative");

  double peak = 0.0, edge = 0.0;
  const std::size_t nr = f.r.size(), nrho = f.rho.size(), nl = ell.size();
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nrho; ++j) {
      const double v = std::abs(f.at(i, j));
      require(std::isfinite(v), ErrorCode::NonRadialInput, "field values must be finite");
      peak = std::max(peak, v);
      if (i + 1 == nr || j + 1 == nrho) edge = std::max(edge, v);
    }
  require(edge <= 1e-10 * peak, ErrorCode::DecayViolation,
          "field at the grid boundary exceeds 1e-10 of its maximum (ratio " + io::fmt(peak > 0 ? edge / peak : 0) +
              ")");

  const int d = f.d, p = f.p;
  // G(r_i, l_k) = sum_j F(r_i, rho_j) sigma(l_k rho_j) rho_j^{p-1} w_j
  std::vector<cplx> G(nr * nl);
  parallel_for(nl, [&](std::size_t k) {
    std::vector<double> s(nrho);
    for (std::size_t j = 0; j < nrho; ++j)
      s[j] = sphere_fourier(p, ell.nodes[k] * f.rho.nodes[j]) * std::pow(f.rho.nodes[j], p - 1) * f.rho.weights[j];
    for (std::size_t i = 0; i < nr; ++i) {
      cplx acc{};
      for (std::size_t j = 0; j < nrho; ++j) acc += f.at(i, j) * s[j];
      G[i * nl + k] = acc;
    }
  });

  SpectralProfile out = SpectralProfile::zeros(d, p, m_max, ell);
  const double area = z_sphere_area(d);
  parallel_for(nl, [&](std::size_t k) {
    std::vector<double> lag;
    std::vector<cplx> acc(static_cast<std::size_t>(m_max) + 1);
    for (std::size_t i = 0; i < nr; ++i) {
      const double r = f.r.nodes[i];
      const cplx g = G[i * nl + k] * (std::pow(r, 2 * d - 1) * f.r.weights[i]);
      if (g == cplx{}) continue;
      laguerre::laguerre_function_sequence(m_max, d - 1, 0.5 * ell.nodes[k] * r * r, lag);
      for (int m = 0; m <= m_max; ++m) acc[m] += g * lag[m];
    }
    for (int m = 0; m <= m_max; ++m) out.at(m, k) = acc[m] * (area / laguerre::binomial(m + d - 1, m));
  });
  return out;
}

namespace {

void check_profile(const SpectralProfile& a) {
  check_dims(a.d, a.p);
  check_grid(a.ell, "ell");
  require(a.ell.has_weights(), ErrorCode::InvalidArgument, "spectral profile needs quadrature weights on ell");
  require(a.values.size() == static_cast<std::size_t>(a.m_max + 1) * a.ell.size(), ErrorCode::DimensionMismatch,
          "profile size mismatch");
  double total = 0.0;
  for (int m = 0; m <= a.m_max; ++m) {
    const double b = laguerre::binomial(m + a.d - 1, m);
    for (std::size_t k = 0; k < a.ell.size(); ++k)
      total += b * std::abs(a.at(m, k)) * std::pow(a.ell.nodes[k], a.d + a.p - 1) * a.ell.weights[k];
  }
  require(std::isfinite(total), ErrorCode::SummabilityViolation, "profile is not absolutely summable");
}

}  // namespace

BiRadialField inverse_transform(const SpectralProfile& a, const quad::QuadGrid& r, const quad::QuadGrid& rho) {
  check_profile(a);
  check_grid(r, "r");
  check_grid(rho, "rho");
  const int d = a.d, p = a.p;
  const std::size_t nl = a.ell.size(), nrho = rho.size();
  const double c = std::pow(2.0 * pi, -(d + p));

  // weighted sphere factors per (rho_j, l_k)
  std::vector<double> S(nrho * nl);
  for (std::size_t j = 0; j < nrho; ++j)
    for (std::size_t k = 0; k < nl; ++k)
      S[j * nl + k] = c * sphere_fourier(p, a.ell.nodes[k] * rho.nodes[j]) * std::pow(a.ell.nodes[k], d + p - 1) *
                      a.ell.weights[k];

  BiRadialField out = BiRadialField::zeros(d, p, r, rho);
  parallel_for(r.size(), [&](std::size_t i) {
    std::vector<double> lag;
    std::vector<cplx> H(nl);
    for (std::size_t k = 0; k < nl; ++k) {
      laguerre::laguerre_function_sequence(a.m_max, d - 1, 0.5 * a.ell.nodes[k] * r.nodes[i] * r.nodes[i], lag);
      cplx h{};
      for (int m = 0; m <= a.m_max; ++m) h += a.at(m, k) * lag[m];
      H[k] = h;
    }
    for (std::size_t j = 0; j < nrho; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < nl; ++k) acc += S[j * nl + k] * H[k];
      out.at(i, j) = acc;
    }
  });
  return out;
}

cplx evaluate_inverse(const SpectralProfile& a, double r, double rho) {
  return inverse_transform(a, quad::points({r}), quad::points({rho})).values.front();
}

SpectralProfile apply_multiplier(const SpectralProfile& a, const std::function<cplx(double)>& h) {
  SpectralProfile out = a;
  for (int m = 0; m <= a.m_max; ++m)
    for (std::size_t k = 0; k < a.ell.size(); ++k) out.at(m, k) *= h((2.0 * m + a.d) * a.ell.nodes[k]);
  return out;
}

double plancherel_norm(const SpectralProfile& a) {
  check_profile(a);
  const int d = a.d, p = a.p;
  double total = 0.0;
  for (int m = 0; m <= a.m_max; ++m) {
    double row = 0.0;
    for (std::size_t k = 0; k < a.ell.size(); ++k)
      row += std::norm(a.at(m, k)) * std::pow(a.ell.nodes[k], d + p - 1) * a.ell.weights[k];
    total += laguerre::binomial(m + d - 1, m) * row;
  }
  require(std::isfinite(total), ErrorCode::SummabilityViolation, "profile is not square summable");
  return std::sqrt(std::pow(2.0 * pi, -(d + p)) * sphere_area(p) * total);
}

double l2_norm(const BiRadialField& f) {
  require(f.r.has_weights() && f.rho.has_weights(), ErrorCode::InvalidArgument, "l2 norm needs quadrature weights");
  double total = 0.0;
  for (std::size_t i = 0; i < f.r.size(); ++i)
    for (std::size_t j = 0; j < f.rho.size(); ++j)
      total += std::norm(f.at(i, j)) * std::pow(f.r.nodes[i], 2 * f.d - 1) * f.r.weights[i] *
               std::pow(f.rho.nodes[j], f.p - 1) * f.rho.weights[j];
  return std::sqrt(z_sphere_area(f.d) * sphere_area(f.p) * total);
}

nlohmann::json header(const SpectralProfile& a) {
  return {{"kind", "spectral_profile"}, {"d", a.d},          {"p", a.p},
          {"m_max", a.m_max},           {"ell", a.ell.nodes}, {"ell_weights", a.ell.weights}};
}

nlohmann::json header(const BiRadialField& f) {
  return {{"kind", "bi_radial_field"}, {"d", f.d}, {"p", f.p}, {"r", f.r.nodes}, {"rho", f.rho.nodes}};
}

std::string to_csv(const SpectralProfile& a) {
  std::ostringstream out;
  out << "m,ell_index,ell,re,im\n";
  for (int m = 0; m <= a.m_max; ++m)
    for (std::size_t k = 0; k < a.ell.size(); ++k)
      out << m << ',' << k << ',' << io::fmt(a.ell.nodes[k]) << ',' << io::fmt(a.at(m, k).real()) << ','
          << io::fmt(a.at(m, k).imag()) << '\n';
  return out.str();
}

std::string to_csv(const BiRadialField& f) {
  std::ostringstream out;
  out << "r_index,rho_index,r,rho,re,im\n";
  for (std::size_t i = 0; i < f.r.size(); ++i)
    for (std::size_t j = 0; j < f.rho.size(); ++j)
      out << i << ',' << j << ',' << io::fmt(f.r.nodes[i]) << ',' << io::fmt(f.rho.nodes[j]) << ','
          << io::fmt(f.at(i, j).real()) << ',' << io::fmt(f.at(i, j).imag()) << '\n';
  return out.str();
}

}  // namespace htwave::spherical
