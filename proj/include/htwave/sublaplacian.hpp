#pragma once

#include "htwave/algebra.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace htwave::algebra {

// Samples on a uniform Cartesian grid over R^{2d+p}, coordinates ordered
// (z_1..z_{2d}, s_1..s_p), last axis fastest.
struct GridFunction {
  std::vector<int> shape;
  std::vector<double> spacing;
  std::vector<double> origin;
  std::vector<double> values;

  std::size_t size() const;
  std::vector<std::size_t> strides() const;
  Eigen::VectorXd point(std::size_t flat) const;

  static GridFunction sample(std::vector<int> shape, std::vector<double> spacing, std::vector<double> origin,
                             const std::function<double(const Eigen::VectorXd&)>& f);
};

// -sum_j (X_j^2 + Y_j^2) f with each field applied as
//   V f = D_{z_j} f + sum_k (1/2) sum_l z_l U^k_{l,j} D_{s_k} f
// (column j + d for Y_j), D the centered first difference, and V applied twice.
// The result lives on the interior grid (two nodes trimmed per side).
// GridTooSmall if an axis has fewer than 5 nodes.
GridFunction apply_sublaplacian_fd(const GridFunction& f, const HTypeGroup& group);

// The same stencil at a single point, sampling f on the 5^n block around it.
double sublaplacian_fd_at(const std::function<double(const Eigen::VectorXd&)>& f, const HTypeGroup& group,
                          const Eigen::VectorXd& point, double h);

}  // namespace htwave::algebra
