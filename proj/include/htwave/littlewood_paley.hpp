#pragma once

#include "htwave/algebra.hpp"
#include "htwave/cutoff.hpp"
#include "htwave/spherical.hpp"

#include <limits>
#include <vector>

namespace htwave::lp {

// Spectral sampling used for the kernels phi_j. The ell nodes are log-spaced
// over the union of the bands of R(2^{-2j}(2m + d) l), m <= m_max, so the
// grid for j is the j = 0 grid scaled by 2^{2j}.
struct LpGrids {
  int m_max = 200;
  double panel_width = 0.05;  // in ln l
  quad::QuadGrid r;
  quad::QuadGrid rho;

  // Uniform 49-node grids, r in [0, 6 sqrt(d)] and rho in [0, 12]; the
  // kernels decay well inside these ranges at j = 0.
  static LpGrids defaults(int d, int p);
};

spherical::SpectralProfile lp_profile(int j, int d, int p, int m_max, double panel_width = 0.05);

// phi_j, the kernel of R(2^{-2j} Delta), by inverse transform of lp_profile.
spherical::BiRadialField lp_kernel(int j, const algebra::HTypeGroup& group, const LpGrids& grids);

struct BesovIndex {
  double rho = 0.0;
  double q = 2.0;  // infinity allowed
  double r = 2.0;  // infinity allowed
};

struct BesovOptions {
  // Spatial grids (with weights for finite q) used when q != 2.
  quad::QuadGrid r;
  quad::QuadGrid rho;
  bool strict = false;  // throw WindowTooNarrow instead of flagging
};

struct BesovResult {
  double norm = 0.0;
  std::vector<int> j;
  std::vector<double> pieces;  // 2^{j rho} |Delta_j f|_q
  double edge_mass = 0.0;      // largest edge piece
  bool window_ok = true;       // edge_mass <= 1e-10 max piece
};

// Finite-window norm ( sum_{j_lo <= j <= j_hi} (2^{j rho} |Delta_j f|_q)^r )^{1/r}
// with Delta_j f = R(2^{-2j} Delta) f taken spectrally.
BesovResult besov_norm(const spherical::SpectralProfile& f, const BesovIndex& idx, int j_lo, int j_hi,
                       const BesovOptions& options = {});

// Gaussian-type profile of the heat kernel e^{-s Delta}: a(l, m) = e^{-s (2m + d) l}.
spherical::SpectralProfile heat_profile(int d, int p, double s, int m_max, const quad::QuadGrid& ell);

}  // namespace htwave::lp
