#pragma once

#include "htwave/quadrature.hpp"

#include "json.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace htwave::spherical {

using cplx = std::complex<double>;

// Surface measure of the unit sphere S^{p-1}; |S^0| = 2.
double sphere_area(int p);

// Fourier transform of the surface measure on S^{p-1} at radius xi:
// 2cos(xi), 2 pi J_0(xi), 4 pi sin(xi)/xi for p = 1, 2, 3 and
// (2 pi)^{p/2} xi^{-(p-2)/2} J_{(p-2)/2}(xi) beyond.
double sphere_fourier(int p, double xi);

// Coefficients a(l, m) on radial frequency nodes l = |lambda| (rows m).
struct SpectralProfile {
  int d = 1;
  int p = 1;
  int m_max = 0;
  quad::QuadGrid ell;
  std::vector<cplx> values;  // (m_max + 1) x ell.size(), row-major in m

  static SpectralProfile zeros(int d, int p, int m_max, quad::QuadGrid ell);
  cplx& at(int m, std::size_t i) { return values[static_cast<std::size_t>(m) * ell.size() + i]; }
  const cplx& at(int m, std::size_t i) const { return values[static_cast<std::size_t>(m) * ell.size() + i]; }
};

// Samples F(r, rho) of a function of |z| and |s|, row-major in r.
struct BiRadialField {
  int d = 1;
  int p = 1;
  quad::QuadGrid r;
  quad::QuadGrid rho;
  std::vector<cplx> values;

  static BiRadialField zeros(int d, int p, quad::QuadGrid r, quad::QuadGrid rho);
  static BiRadialField sample(int d, int p, quad::QuadGrid r, quad::QuadGrid rho,
                              const std::function<cplx(double, double)>& f);
  cplx& at(std::size_t i, std::size_t j) { return values[i * rho.size() + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return values[i * rho.size() + j]; }
};

// Volume of the Euclidean unit sphere in R^{2d}: 2 pi^d / (d-1)!.
double z_sphere_area(int d);

// Spherical transform
//   f(l, m) = binom(m+d-1, m)^{-1} |S^{2d-1}| int int F(r, rho) L_m^{(d-1)}(l r^2/2)
//             sigma(p, l rho) r^{2d-1} rho^{p-1} dr drho
// with both integrals taken by the weights carried on f's grids. Throws
// DecayViolation if F at the outermost nodes exceeds 1e-10 of its maximum.
SpectralProfile forward_transform(const BiRadialField& f, int m_max, const quad::QuadGrid& ell);

// Inversion
//   F(r, rho) = (2 pi)^{-(d+p)} sum_m int sigma(p, l rho) a(l, m) L_m^{(d-1)}(l r^2/2) l^{d+p-1} dl
// evaluated on the given nodes. Throws SummabilityViolation if the
// absolute series is not finite.
BiRadialField inverse_transform(const SpectralProfile& a, const quad::QuadGrid& r, const quad::QuadGrid& rho);

cplx evaluate_inverse(const SpectralProfile& a, double r, double rho);

// a(l, m) h((2m + d) l).
SpectralProfile apply_multiplier(const SpectralProfile& a, const std::function<cplx(double)>& h);

// ( (2 pi)^{-(d+p)} |S^{p-1}| sum_m binom(m+d-1, m) int |a|^2 l^{d+p-1} dl )^{1/2},
// the L^2 norm of the inverse transform.
double plancherel_norm(const SpectralProfile& a);

// ( |S^{2d-1}| |S^{p-1}| int int |F|^2 r^{2d-1} rho^{p-1} dr drho )^{1/2}.
double l2_norm(const BiRadialField& f);

nlohmann::json header(const SpectralProfile& a);
nlohmann::json header(const BiRadialField& f);
std::string to_csv(const SpectralProfile& a);
std::string to_csv(const BiRadialField& f);

}  // namespace htwave::spherical
