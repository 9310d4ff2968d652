#pragma once

#include <Eigen/Dense>
#include "json.hpp"

#include <string>
#include <vector>

namespace htwave::algebra {

enum class Family { heisenberg, quaternionic, custom };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

// H-type group on R^{2d} x R^p with law
//   (z, s)(z', s') = (z + z', s + s' + 1/2 [z, z']),  [z, z']_j = <z, U^j z'>.
// Each U^j is 2d x 2d, skew-symmetric, orthogonal, and the U^j pairwise
// anticommute.
struct HTypeGroup {
  Family family = Family::custom;
  int d = 1;
  int p = 1;
  std::vector<Eigen::MatrixXd> U;

  int topological_dim() const { return 2 * d + p; }
  int homogeneous_dim() const { return 2 * d + 2 * p; }
};

struct GroupElement {
  Eigen::VectorXd z;
  Eigen::VectorXd s;

  static GroupElement identity(const HTypeGroup& group);
};

enum class Condition { skew_symmetry, orthogonality, anticommutation, dimension_bound };

std::string to_string(Condition condition);

struct Violation {
  Condition condition;
  int i = 0;   // index of the offending matrix
  int j = -1;  // second index for anticommutation, -1 otherwise
  double deviation = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool violates(Condition c) const;
  double max_deviation(Condition c) const;
};

inline constexpr double kStructureTolerance = 1e-12;

// Heisenberg: p = 1, any d >= 1 (standard symplectic form).
// Quaternionic: p in {2, 3}, 2d divisible by 4; block-diagonal left
// multiplication by the unit quaternions i, j, k.
HTypeGroup build_group(Family family, int d, int p);

// Checks skew-symmetry, orthogonality and anticommutation within `tol`, plus
// the Clifford bound p + 1 <= 2d. Deviations are max-abs entrywise.
ValidationReport validate_structure(const std::vector<Eigen::MatrixXd>& U,
                                    double tol = kStructureTolerance);

// Wraps user matrices into a group after validation; throws InvalidArgument
// naming the first violation.
HTypeGroup make_group(std::vector<Eigen::MatrixXd> U);

GroupElement group_multiply(const GroupElement& g, const GroupElement& h, const HTypeGroup& group);
GroupElement group_inverse(const GroupElement& g);

// delta_r(z, s) = (r z, r^2 s); automorphism of the group law.
GroupElement dilate(double r, const GroupElement& g);

nlohmann::json group_to_json(const HTypeGroup& group);
// The "U" member as matrices, unvalidated.
std::vector<Eigen::MatrixXd> matrices_from_json(const nlohmann::json& doc);
HTypeGroup group_from_json(const nlohmann::json& doc);

}  // namespace htwave::algebra
