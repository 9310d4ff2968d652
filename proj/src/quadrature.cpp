#include "htwave/quadrature.hpp"

#include "htwave/error.hpp"

#include <cmath>
#include <numbers>

namespace htwave::quad {

GaussRule gauss_legendre(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "Gauss rule order must be positive");
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // refresh derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

const GaussRule& gauss16() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

QuadGrid composite(double a, double b, int panels, int order) {
  require(b > a && panels >= 1, ErrorCode::InvalidArgument, "composite rule needs a < b and panels >= 1");
  const GaussRule rule = order == 16 ? gauss16() : gauss_legendre(order);
  QuadGrid grid;
  grid.nodes.reserve(static_cast<std::size_t>(panels) * order);
  grid.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < order; ++i) {
      grid.nodes.push_back(mid + 0.5 * h * rule.x[i]);
      grid.weights.push_back(0.5 * h * rule.w[i]);
    }
  }
  return grid;
}

QuadGrid log_composite(double a, double b, int panels, int order) {
  require(a > 0.0 && b > a, ErrorCode::InvalidArgument, "log-spaced rule needs 0 < a < b");
  QuadGrid grid = composite(std::log(a), std::log(b), panels, order);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.nodes[i] = std::exp(grid.nodes[i]);
    grid.weights[i] *= grid.nodes[i];
  }
  return grid;
}

QuadGrid points(std::vector<double> nodes) {
  QuadGrid grid;
  grid.nodes = std::move(nodes);
  return grid;
}

}  // namespace htwave::quad
