#include "htwave/band_kernel.hpp"

#include "htwave/error.hpp"
#include "htwave/parallel.hpp"
#include "htwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace htwave::spherical {

BandKernel::BandKernel(int d, int p, std::function<cplx(double)> h, BandKernelOptions options)
    : d_(d), p_(p), h_(std::move(h)), opt_(options) {
  require(d >= 1 && p >= 1, ErrorCode::DimensionMismatch, "d and p must be positive");
  require(opt_.m_max >= 0, ErrorCode::InvalidArgument, "m_max must be nonnegative");
  require(opt_.mu_lo > 0.0 && opt_.mu_hi > opt_.mu_lo, ErrorCode::InvalidArgument, "need 0 < mu_lo < mu_hi");
  require(opt_.max_panel > 0.0, ErrorCode::InvalidArgument, "max_panel must be positive");
  build_panels();
}

void BandKernel::build_panels() {
  const double u_lo = std::log(opt_.mu_lo / (2.0 * opt_.m_max + d_));
  const double u_hi = std::log(opt_.mu_hi / d_);
  const double two_pi = 2.0 * std::numbers::pi;
  // cycles per unit u: phase of h, sphere factor, Laguerre oscillation
  auto rate = [&](double u) {
    return (std::abs(opt_.phase_rate) + opt_.rho_max * std::exp(u) + opt_.r_max * std::sqrt(opt_.mu_hi) * 0.5) /
           two_pi;
  };
  std::vector<double> edges{u_lo};
  double u = u_lo;
  while (u < u_hi) {
    const double probe = std::min(u + opt_.max_panel, u_hi);
    const double f = rate(probe);
    double w = f > 0.0 ? std::min(opt_.max_panel, 1.0 / (4.0 * f)) : opt_.max_panel;
    if (u + w > u_hi || u_hi - (u + w) < 1e-3 * w) w = u_hi - u;
    u += w;
    edges.push_back(u);
  }
  edges.back() = u_hi;

  const auto& rule = quad::gauss16();
  auto fill = [&](const std::vector<double>& e, std::vector<double>& nodes, std::vector<double>& weights) {
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
      const double mid = 0.5 * (e[k] + e[k + 1]), half = 0.5 * (e[k + 1] - e[k]);
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        nodes.push_back(mid + half * rule.x[i]);
        weights.push_back(half * rule.w[i]);
      }
    }
  };
  fill(edges, fine_u_, fine_w_);
  std::vector<double> coarse;
  for (std::size_t k = 0; k < edges.size(); k += 2) coarse.push_back(edges[k]);
  if (coarse.back() != edges.back()) coarse.push_back(edges.back());
  fill(coarse, coarse_u_, coarse_w_);
}

void BandKernel::sums(const std::vector<double>& u, const std::vector<double>& r, std::vector<cplx>& S) const {
  const std::size_t nu = u.size(), nr = r.size();
  S.assign(nr * nu, cplx{});
  const double g = d_ - 1;
  constexpr std::size_t block = 64;
  const std::size_t blocks = (nu + block - 1) / block;
  parallel_for(blocks, [&](std::size_t b) {
    std::vector<double> prev(nr), cur(nr), x(nr);
    for (std::size_t i = b * block; i < std::min(nu, (b + 1) * block); ++i) {
      const double lam = std::exp(u[i]);
      const int m_lo = std::max(0, static_cast<int>(std::ceil((opt_.mu_lo / lam - d_) / 2.0)));
      const int m_hi = std::min(opt_.m_max, static_cast<int>(std::floor((opt_.mu_hi / lam - d_) / 2.0)));
      if (m_hi < m_lo) continue;
      for (std::size_t a = 0; a < nr; ++a) {
        x[a] = 0.5 * lam * r[a] * r[a];
        prev[a] = std::exp(-0.5 * x[a]);
        cur[a] = (1.0 + g - x[a]) * prev[a];
      }
      // after this loop prev holds L_m, cur holds L_{m+1}
      for (int m = 0; m <= m_hi; ++m) {
        if (m >= m_lo) {
          const cplx hv = h_((2.0 * m + d_) * lam);
          if (hv != cplx{})
            for (std::size_t a = 0; a < nr; ++a) S[a * nu + i] += hv * prev[a];
        }
        if (m == m_hi) break;
        const double n = m + 2.0;
        for (std::size_t a = 0; a < nr; ++a) {
          const double next = ((2.0 * n - 1.0 + g - x[a]) * cur[a] - (n - 1.0 + g) * prev[a]) / n;
          prev[a] = cur[a];
          cur[a] = next;
        }
      }
    }
  });
}

BandKernelValues BandKernel::evaluate(const std::vector<double>& r, const std::vector<double>& rho) const {
  for (double v : r) require(v >= 0.0 && v <= opt_.r_max * (1 + 1e-12) + 1e-300, ErrorCode::InvalidArgument,
                             "r outside the range the kernel was built for");
  for (double v : rho) require(v >= 0.0 && v <= opt_.rho_max * (1 + 1e-12) + 1e-300, ErrorCode::InvalidArgument,
                               "rho outside the range the kernel was built for");
  const double c = std::pow(2.0 * std::numbers::pi, -(d_ + p_));
  const std::size_t nr = r.size(), nrho = rho.size();

  auto integrate = [&](const std::vector<double>& u, const std::vector<double>& w) {
    std::vector<cplx> S;
    sums(u, r, S);
    const std::size_t nu = u.size();
    std::vector<double> lam(nu), base(nu);
    for (std::size_t i = 0; i < nu; ++i) {
      lam[i] = std::exp(u[i]);
      base[i] = c * w[i] * std::pow(lam[i], d_ + p_);  // dl = l du
    }
    std::vector<cplx> out(nr * nrho);
    parallel_for(nrho, [&](std::size_t j) {
      std::vector<double> s(nu);
      for (std::size_t i = 0; i < nu; ++i) s[i] = base[i] * sphere_fourier(p_, lam[i] * rho[j]);
      for (std::size_t a = 0; a < nr; ++a) {
        cplx acc{};
        const cplx* row = S.data() + a * nu;
        for (std::size_t i = 0; i < nu; ++i) acc += s[i] * row[i];
        out[a * nrho + j] = acc;
      }
    });
    return out;
  };

  BandKernelValues res;
  res.values = integrate(fine_u_, fine_w_);
  const auto coarse = integrate(coarse_u_, coarse_w_);
  res.error.resize(res.values.size());
  for (std::size_t k = 0; k < res.values.size(); ++k) res.error[k] = std::abs(res.values[k] - coarse[k]);
  return res;
}

}  // namespace htwave::spherical
