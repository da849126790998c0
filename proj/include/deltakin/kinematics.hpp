#ifndef DELTAKIN_KINEMATICS_HPP
#define DELTAKIN_KINEMATICS_HPP

#include <array>
#include <vector>

#include "deltakin/geometry.hpp"
#include "deltakin/robot.hpp"

namespace deltakin {

using Joints = std::array<double, 3>;

/// Width of the band around a vanishing discriminant inside which the two
/// quadratic roots are treated as one double root.
inline constexpr double kTangencyEps = 1e-9;

/// Real roots of the monic quadratic for one leg,
///   rho^2 - 2 (d . (P - a)) rho + (|P - a|^2 - L^2),
/// ordered plus-branch first. 0, 1 or 2 values.
std::vector<double> ik_leg(const RobotModel& m, int leg, const Vec3& pose);

struct IkSolutionSet {
  Vec3 pose;
  std::vector<Joints> solutions;  // lexicographic in per-leg root indices
  std::array<int, 3> per_leg_root_counts{0, 0, 0};
  bool limits_applied = false;

  int count() const { return static_cast<int>(solutions.size()); }
};

/// Cartesian product of the per-leg root sets; when apply_limits is set,
/// roots on or within 1e-9 of a limit bound are excluded first.
IkSolutionSet ik(const RobotModel& m, const Vec3& pose, bool apply_limits);

struct DkSolutionSet {
  Joints joints{0, 0, 0};
  std::vector<Vec3> solutions;  // 0-2 poses
  bool degenerate = false;      // radical planes parallel (distinct or equal)

  int count() const { return static_cast<int>(solutions.size()); }
};

/// Three-sphere intersection: the two radical planes f1-f3 and f2-f3 are
/// linear, their common line is substituted into f3. With apply_limits set,
/// joints outside the open limit interval produce an empty result.
DkSolutionSet dk(const RobotModel& m, const Joints& joints, bool apply_limits);

int count_ik(const RobotModel& m, const Vec3& pose, bool apply_limits = true);
int count_dk(const RobotModel& m, const Joints& joints,
             bool apply_limits = true);

/// Scaled residual bound used by the solution-set invariants:
/// |f_i| <= 1e-9 * (1 + |pose|^2 + L^2).
double residual_scale(const RobotModel& m, const Vec3& pose);

/// Constraint residual f_i evaluated numerically.
double constraint_residual(const RobotModel& m, int leg, const Vec3& pose,
                           double rho);

}  // namespace deltakin

#endif
