#pragma once

#include <cstddef>
#include <vector>

namespace htwave::quad {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule of order n, computed by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

// Cached 16-point rule, the default panel rule throughout.
const GaussRule& gauss16();

// Nodes with quadrature weights. Target grids that are only evaluated on
// carry empty weights.
struct QuadGrid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  bool has_weights() const { return !weights.empty() && weights.size() == nodes.size(); }
};

// Composite Gauss rule with `panels` equal panels on [a, b].
QuadGrid composite(double a, double b, int panels, int order = 16);

// Panels equal in ln x on [a, b], a > 0; weights include the Jacobian x.
QuadGrid log_composite(double a, double b, int panels, int order = 16);

// Evaluation-only grid.
QuadGrid points(std::vector<double> nodes);

}  // namespace htwave::quad
