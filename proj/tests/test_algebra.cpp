#include "doctest.h"

#include "htwave/algebra.hpp"
#include "htwave/error.hpp"
#include "htwave/sublaplacian.hpp"

#include <random>

using namespace htwave;
using namespace htwave::algebra;

namespace {

GroupElement element(std::vector<double> z, std::vector<double> s) {
  return {Eigen::Map<Eigen::VectorXd>(z.data(), static_cast<Eigen::Index>(z.size())),
          Eigen::Map<Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()))};
}

GroupElement random_element(const HTypeGroup& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  GroupElement e = GroupElement::identity(g);
  for (Eigen::Index i = 0; i < e.z.size(); ++i) e.z[i] = u(rng);
  for (Eigen::Index i = 0; i < e.s.size(); ++i) e.s[i] = u(rng);
  return e;
}

}  // namespace

TEST_CASE("heisenberg d=1 uses the standard symplectic form") {
  const auto g = build_group(Family::heisenberg, 1, 1);
  REQUIRE(g.U.size() == 1);
  Eigen::Matrix2d expected;
  expected << 0, 1, -1, 0;
  CHECK((g.U[0] - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.homogeneous_dim() == 4);
  CHECK(g.topological_dim() == 3);
}

TEST_CASE("built-in families satisfy the structure conditions exactly") {
  for (int d : {1, 2, 3}) CHECK(validate_structure(build_group(Family::heisenberg, d, 1).U, 0.0).ok());
  for (int p : {2, 3}) {
    CHECK(validate_structure(build_group(Family::quaternionic, 2, p).U, 0.0).ok());
    CHECK(validate_structure(build_group(Family::quaternionic, 4, p).U, 0.0).ok());
  }
}

TEST_CASE("quaternionic units anticommute by direct arithmetic") {
  const auto g = build_group(Family::quaternionic, 2, 3);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
  for (int i = 0; i < 3; ++i) {
    CHECK((g.U[i] * g.U[i] + I).cwiseAbs().maxCoeff() == 0.0);
    for (int j = i + 1; j < 3; ++j) CHECK((g.U[i] * g.U[j] + g.U[j] * g.U[i]).cwiseAbs().maxCoeff() == 0.0);
  }
  // i j = k
  CHECK((g.U[0] * g.U[1] - g.U[2]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unsupported family parameters are rejected") {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code([] { build_group(Family::quaternionic, 1, 3); }) == ErrorCode::UnsupportedFamily);
  CHECK(code([] { build_group(Family::quaternionic, 2, 4); }) == ErrorCode::UnsupportedFamily);
  CHECK(code([] { build_group(Family::heisenberg, 2, 2); }) == ErrorCode::UnsupportedFamily);
  CHECK(code([] { family_from_string("octonionic"); }) == ErrorCode::UnsupportedFamily);
}

TEST_CASE("validation names the violated condition") {
  Eigen::MatrixXd good(2, 2), scaled(2, 2);
  good << 0, 1, -1, 0;
  scaled << 0, 2, -2, 0;
  CHECK(validate_structure({good}).ok());

  const auto r1 = validate_structure({scaled});
  CHECK(r1.violates(Condition::orthogonality));
  CHECK_FALSE(r1.violates(Condition::skew_symmetry));
  CHECK(r1.max_deviation(Condition::orthogonality) == doctest::Approx(3.0));

  const auto r2 = validate_structure({Eigen::MatrixXd::Identity(2, 2)});
  CHECK(r2.violates(Condition::skew_symmetry));
  CHECK_FALSE(r2.violates(Condition::orthogonality));

  const auto r3 = validate_structure({good, good});
  CHECK(r3.violates(Condition::anticommutation));
  CHECK(r3.violates(Condition::dimension_bound));

  CHECK_THROWS_AS(validate_structure({good, Eigen::MatrixXd::Zero(4, 4)}), Error);
  CHECK_THROWS_AS(make_group({scaled}), Error);
}

TEST_CASE("group law examples") {
  const auto g = build_group(Family::heisenberg, 1, 1);
  const auto prod = group_multiply(element({1, 0}, {0}), element({0, 1}, {0}), g);
  CHECK(prod.z[0] == 1.0);
  CHECK(prod.z[1] == 1.0);
  CHECK(prod.s[0] == 0.5);

  const auto a = element({0.3, -1.2}, {0.7});
  const auto id = group_multiply(a, GroupElement::identity(g), g);
  CHECK((id.z - a.z).norm() == 0.0);
  CHECK((id.s - a.s).norm() == 0.0);

  const auto e = group_multiply(a, group_inverse(a), g);
  CHECK(e.z.norm() == 0.0);
  CHECK(e.s.norm() == 0.0);

  CHECK_THROWS_AS(group_multiply(a, element({1, 2, 3, 4}, {0}), g), Error);
}

TEST_CASE("group law is associative and dilations are automorphisms") {
  std::mt19937 rng(7);
  for (const auto& g : {build_group(Family::heisenberg, 2, 1), build_group(Family::quaternionic, 2, 3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
      const auto left = group_multiply(group_multiply(a, b, g), c, g);
      const auto right = group_multiply(a, group_multiply(b, c, g), g);
      CHECK((left.s - right.s).cwiseAbs().maxCoeff() < 1e-13);

      const double r = 0.3 + trial * 0.2;
      const auto lhs = group_multiply(dilate(r, a), dilate(r, b), g);
      const auto rhs = dilate(r, group_multiply(a, b, g));
      CHECK((lhs.z - rhs.z).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((lhs.s - rhs.s).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("dilation examples") {
  const auto a = element({1, 0}, {1});
  const auto same = dilate(1.0, a);
  CHECK((same.z - a.z).norm() == 0.0);
  CHECK((same.s - a.s).norm() == 0.0);
  const auto twice = dilate(2.0, a);
  CHECK(twice.z[0] == 2.0);
  CHECK(twice.z[1] == 0.0);
  CHECK(twice.s[0] == 4.0);
  try {
    dilate(0.0, a);
    FAIL("expected NonpositiveScale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveScale);
  }
}

TEST_CASE("json round trip") {
  const auto g = build_group(Family::quaternionic, 2, 2);
  const auto back = group_from_json(group_to_json(g));
  CHECK(back.family == Family::quaternionic);
  CHECK(back.d == 2);
  CHECK(back.p == 2);
  for (int j = 0; j < 2; ++j) CHECK((back.U[j] - g.U[j]).norm() == 0.0);
  const auto built = group_from_json({{"family", "heisenberg"}, {"d", 3}, {"p", 1}});
  CHECK(built.d == 3);
}

TEST_CASE("finite-difference sublaplacian on polynomials") {
  const auto g = build_group(Family::heisenberg, 1, 1);
  const std::vector<int> shape{7, 7, 7};
  const std::vector<double> h{0.1, 0.1, 0.1}, origin{-0.3, -0.2, -0.3};

  const auto ones = apply_sublaplacian_fd(GridFunction::sample(shape, h, origin, [](const Eigen::VectorXd&) {
    return 1.0;
  }), g);
  CHECK(ones.shape == std::vector<int>{3, 3, 3});
  for (double v : ones.values) CHECK(v == 0.0);

  const auto lin = apply_sublaplacian_fd(
      GridFunction::sample(shape, h, origin, [](const Eigen::VectorXd& x) { return x[0] + 2.0 * x[2]; }), g);
  for (double v : lin.values) CHECK(std::abs(v) < 1e-12);

  // -sum_j (d/dz_j)^2 |z|^2 = -4d.
  const auto quad = apply_sublaplacian_fd(
      GridFunction::sample(shape, h, origin, [](const Eigen::VectorXd& x) { return x[0] * x[0] + x[1] * x[1]; }), g);
  for (double v : quad.values) CHECK(v == doctest::Approx(-4.0).epsilon(1e-11));

  // X_j s^2 = 2 s c_j(z) with c = U^T z / 2, so the sublaplacian of s^2 is -|z|^2 / 2.
  Eigen::VectorXd pt(3);
  pt << 1.0, 2.0, 0.5;
  const double v = sublaplacian_fd_at([](const Eigen::VectorXd& x) { return x[2] * x[2]; }, g, pt, 0.1);
  CHECK(v == doctest::Approx(-2.5).epsilon(1e-11));
}

TEST_CASE("finite-difference sublaplacian on the quaternionic group") {
  const auto g = build_group(Family::quaternionic, 2, 2);
  Eigen::VectorXd pt(6);
  pt << 0.5, -1.0, 0.25, 2.0, 0.1, -0.3;
  const double v = sublaplacian_fd_at([](const Eigen::VectorXd& x) { return x[4] * x[4] + x[5] * x[5]; }, g, pt, 0.05);
  CHECK(v == doctest::Approx(-pt.head(4).squaredNorm()).epsilon(1e-10));
  CHECK_THROWS_AS(apply_sublaplacian_fd(GridFunction::sample({4, 5, 5, 5, 5, 5}, std::vector<double>(6, 0.1),
                                                             std::vector<double>(6, 0.0),
                                                             [](const Eigen::VectorXd&) { return 0.0; }),
                                        g),
                  Error);
}
