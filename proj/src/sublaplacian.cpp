#include "htwave/sublaplacian.hpp"

#include "htwave/error.hpp"
#include "htwave/parallel.hpp"

namespace htwave::algebra {

std::size_t GridFunction::size() const {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

std::vector<std::size_t> GridFunction::strides() const {
  std::vector<std::size_t> st(shape.size());
  std::size_t acc = 1;
  for (std::size_t a = shape.size(); a-- > 0;) {
    st[a] = acc;
    acc *= static_cast<std::size_t>(shape[a]);
  }
  return st;
}

Eigen::VectorXd GridFunction::point(std::size_t flat) const {
  const auto st = strides();
  Eigen::VectorXd x(static_cast<Eigen::Index>(shape.size()));
  for (std::size_t a = 0; a < shape.size(); ++a) {
    const std::size_t idx = (flat / st[a]) % static_cast<std::size_t>(shape[a]);
    x[static_cast<Eigen::Index>(a)] = origin[a] + spacing[a] * static_cast<double>(idx);
  }
  return x;
}

GridFunction GridFunction::sample(std::vector<int> shape, std::vector<double> spacing, std::vector<double> origin,
                                  const std::function<double(const Eigen::VectorXd&)>& f) {
  GridFunction g{std::move(shape), std::move(spacing), std::move(origin), {}};
  g.values.resize(g.size());
  parallel_for(g.size(), [&](std::size_t i) { g.values[i] = f(g.point(i)); });
  return g;
}

namespace {

// One horizontal field applied on the grid, trimming one node per side.
GridFunction apply_field(const GridFunction& f, const HTypeGroup& group, int column) {
  const int n = static_cast<int>(f.shape.size());
  const int two_d = 2 * group.d;
  GridFunction out;
  out.shape = f.shape;
  out.spacing = f.spacing;
  out.origin = f.origin;
  for (int a = 0; a < n; ++a) {
    out.shape[a] -= 2;
    out.origin[a] += f.spacing[a];
  }
  out.values.resize(out.size());
  const auto st_in = f.strides();
  const auto st_out = out.strides();

  parallel_for(out.size(), [&](std::size_t flat) {
    std::size_t src = 0;
    for (int a = 0; a < n; ++a) {
      const std::size_t idx = (flat / st_out[a]) % static_cast<std::size_t>(out.shape[a]);
      src += (idx + 1) * st_in[a];
    }
    const Eigen::VectorXd x = out.point(flat);
    auto diff = [&](int axis) {
      return (f.values[src + st_in[axis]] - f.values[src - st_in[axis]]) / (2.0 * f.spacing[axis]);
    };
    double v = diff(column);
    for (int k = 0; k < group.p; ++k) {
      double c = 0.0;
      for (int l = 0; l < two_d; ++l) c += x[l] * group.U[k](l, column);
      if (c != 0.0) v += 0.5 * c * diff(two_d + k);
    }
    out.values[flat] = v;
  });
  return out;
}

}  // namespace

GridFunction apply_sublaplacian_fd(const GridFunction& f, const HTypeGroup& group) {
  const int n = group.topological_dim();
  require(static_cast<int>(f.shape.size()) == n && static_cast<int>(f.spacing.size()) == n &&
              static_cast<int>(f.origin.size()) == n,
          ErrorCode::DimensionMismatch, "grid dimension must be 2d + p = " + std::to_string(n));
  require(f.values.size() == f.size(), ErrorCode::DimensionMismatch, "grid values do not match the shape");
  for (int a = 0; a < n; ++a) {
    require(f.shape[a] >= 5, ErrorCode::GridTooSmall, "every axis needs at least 5 nodes");
    require(f.spacing[a] > 0.0, ErrorCode::NonpositiveScale, "grid spacing must be positive");
  }
  GridFunction out;
  for (int column = 0; column < 2 * group.d; ++column) {
    const GridFunction twice = apply_field(apply_field(f, group, column), group, column);
    if (out.values.empty()) {
      out = twice;
      for (double& v : out.values) v = -v;
    } else {
      for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= twice.values[i];
    }
  }
  return out;
}

double sublaplacian_fd_at(const std::function<double(const Eigen::VectorXd&)>& f, const HTypeGroup& group,
                          const Eigen::VectorXd& point, double h) {
  const int n = group.topological_dim();
  require(point.size() == n, ErrorCode::DimensionMismatch, "point dimension must be 2d + p");
  require(h > 0.0, ErrorCode::NonpositiveScale, "spacing must be positive");
  std::vector<double> origin(n);
  for (int a = 0; a < n; ++a) origin[a] = point[a] - 2.0 * h;
  const auto block = GridFunction::sample(std::vector<int>(n, 5), std::vector<double>(n, h), origin, f);
  return apply_sublaplacian_fd(block, group).values.front();
}

}  // namespace htwave::algebra
