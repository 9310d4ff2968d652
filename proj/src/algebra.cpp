#include "htwave/algebra.hpp"

#include "htwave/error.hpp"

#include <algorithm>
#include <cmath>

namespace htwave::algebra {

std::string to_string(Family family) {
  switch (family) {
    case Family::heisenberg: return "heisenberg";
    case Family::quaternionic: return "quaternionic";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  if (name == "heisenberg") return Family::heisenberg;
  if (name == "quaternionic") return Family::quaternionic;
  if (name == "custom") return Family::custom;
  fail(ErrorCode::UnsupportedFamily, "unknown group family '" + name + "'");
}

std::string to_string(Condition condition) {
  switch (condition) {
    case Condition::skew_symmetry: return "skew_symmetry";
    case Condition::orthogonality: return "orthogonality";
    case Condition::anticommutation: return "anticommutation";
    case Condition::dimension_bound: return "dimension_bound";
  }
  return "unknown";
}

GroupElement GroupElement::identity(const HTypeGroup& group) {
  return {Eigen::VectorXd::Zero(2 * group.d), Eigen::VectorXd::Zero(group.p)};
}

bool ValidationReport::violates(Condition c) const {
  return std::any_of(violations.begin(), violations.end(),
                     [c](const Violation& v) { return v.condition == c; });
}

double ValidationReport::max_deviation(Condition c) const {
  double worst = 0.0;
  for (const auto& v : violations)
    if (v.condition == c) worst = std::max(worst, v.deviation);
  return worst;
}

namespace {

// Left multiplication by i, j, k on the quaternions in the basis (1, i, j, k).
Eigen::Matrix4d quaternion_unit(int which) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  switch (which) {
    case 0:
      m(1, 0) = 1; m(0, 1) = -1; m(3, 2) = 1; m(2, 3) = -1;
      break;
    case 1:
      m(2, 0) = 1; m(3, 1) = -1; m(0, 2) = -1; m(1, 3) = 1;
      break;
    default:
      m(3, 0) = 1; m(2, 1) = 1; m(1, 2) = -1; m(0, 3) = -1;
      break;
  }
  return m;
}

}  // namespace

HTypeGroup build_group(Family family, int d, int p) {
  require(d >= 1 && p >= 1, ErrorCode::UnsupportedFamily, "d and p must be positive");
  HTypeGroup group;
  group.family = family;
  group.d = d;
  group.p = p;
  const int n = 2 * d;

  switch (family) {
    case Family::heisenberg: {
      require(p == 1, ErrorCode::UnsupportedFamily, "heisenberg family requires p = 1");
      Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < d; ++k) {
        u(k, d + k) = 1.0;
        u(d + k, k) = -1.0;
      }
      group.U.push_back(std::move(u));
      break;
    }
    case Family::quaternionic: {
      require(p == 2 || p == 3, ErrorCode::UnsupportedFamily,
              "quaternionic family requires p in {2, 3}");
      require(n % 4 == 0, ErrorCode::UnsupportedFamily,
              "quaternionic family requires 2d divisible by 4 (got d = " + std::to_string(d) + ")");
      for (int j = 0; j < p; ++j) {
        Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
        const Eigen::Matrix4d block = quaternion_unit(j);
        for (int b = 0; b < n / 4; ++b) u.block<4, 4>(4 * b, 4 * b) = block;
        group.U.push_back(std::move(u));
      }
      break;
    }
    case Family::custom:
      fail(ErrorCode::UnsupportedFamily, "custom groups are built from matrices, use make_group");
  }
  return group;
}

ValidationReport validate_structure(const std::vector<Eigen::MatrixXd>& U, double tol) {
  require(!U.empty(), ErrorCode::DimensionMismatch, "at least one structure matrix is required");
  const auto n = U.front().rows();
  for (const auto& u : U) {
    require(u.rows() == u.cols(), ErrorCode::DimensionMismatch, "structure matrices must be square");
    require(u.rows() == n, ErrorCode::DimensionMismatch, "structure matrices must share one size");
  }
  require(n > 0 && n % 2 == 0, ErrorCode::DimensionMismatch, "structure matrices must have even size 2d");

  ValidationReport report;
  const auto identity = Eigen::MatrixXd::Identity(n, n);
  const int p = static_cast<int>(U.size());
  for (int i = 0; i < p; ++i) {
    const double skew = (U[i].transpose() + U[i]).cwiseAbs().maxCoeff();
    if (skew > tol) report.violations.push_back({Condition::skew_symmetry, i, -1, skew});
    const double orth = (U[i].transpose() * U[i] - identity).cwiseAbs().maxCoeff();
    if (orth > tol) report.violations.push_back({Condition::orthogonality, i, -1, orth});
    for (int j = i + 1; j < p; ++j) {
      const double anti = (U[i] * U[j] + U[j] * U[i]).cwiseAbs().maxCoeff();
      if (anti > tol) report.violations.push_back({Condition::anticommutation, i, j, anti});
    }
  }
  if (p + 1 > n)
    report.violations.push_back({Condition::dimension_bound, 0, -1, static_cast<double>(p + 1 - n)});
  return report;
}

HTypeGroup make_group(std::vector<Eigen::MatrixXd> U) {
  const auto report = validate_structure(U);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    fail(ErrorCode::InvalidArgument, "structure matrices violate " + to_string(v.condition) +
                                         " (matrix " + std::to_string(v.i) + ", deviation " +
                                         std::to_string(v.deviation) + ")");
  }
  HTypeGroup group;
  group.family = Family::custom;
  group.d = static_cast<int>(U.front().rows() / 2);
  group.p = static_cast<int>(U.size());
  group.U = std::move(U);
  return group;
}

namespace {

void check_element(const GroupElement& g, const HTypeGroup& group) {
  require(g.z.size() == 2 * group.d && g.s.size() == group.p, ErrorCode::DimensionMismatch,
          "group element dimensions do not match (2d, p) = (" + std::to_string(2 * group.d) + ", " +
              std::to_string(group.p) + ")");
}

}  // namespace

GroupElement group_multiply(const GroupElement& g, const GroupElement& h, const HTypeGroup& group) {
  check_element(g, group);
  check_element(h, group);
  GroupElement out{g.z + h.z, g.s + h.s};
  for (int j = 0; j < group.p; ++j) out.s[j] += 0.5 * g.z.dot(group.U[j] * h.z);
  return out;
}

GroupElement group_inverse(const GroupElement& g) { return {-g.z, -g.s}; }

GroupElement dilate(double r, const GroupElement& g) {
  require(r > 0.0, ErrorCode::NonpositiveScale, "dilation factor must be positive");
  return {r * g.z, (r * r) * g.s};
}

nlohmann::json group_to_json(const HTypeGroup& group) {
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& u : group.U) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < u.cols(); ++j) row.push_back(u(i, j));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  return {{"family", to_string(group.family)}, {"d", group.d}, {"p", group.p}, {"U", mats}};
}

std::vector<Eigen::MatrixXd> matrices_from_json(const nlohmann::json& doc) {
  std::vector<Eigen::MatrixXd> U;
  for (const auto& rows : doc.at("U")) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd u(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows.at(static_cast<std::size_t>(i));
      require(static_cast<Eigen::Index>(row.size()) == n, ErrorCode::DimensionMismatch,
              "structure matrix rows must have equal length");
      for (Eigen::Index j = 0; j < n; ++j) u(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
    }
    U.push_back(std::move(u));
  }
  return U;
}

HTypeGroup group_from_json(const nlohmann::json& doc) {
  if (doc.contains("U")) {
    HTypeGroup group = make_group(matrices_from_json(doc));
    if (doc.contains("family")) {
      const auto family = family_from_string(doc.at("family").get<std::string>());
      if (family != Family::custom) group.family = family;
    }
    return group;
  }
  return build_group(family_from_string(doc.at("family").get<std::string>()), doc.at("d").get<int>(),
                     doc.at("p").get<int>());
}

}  // namespace htwave::algebra
