#ifndef DELTAKIN_ROBOT_HPP
#define DELTAKIN_ROBOT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "deltakin/geometry.hpp"
#include "deltakin/mpoly.hpp"

namespace deltakin {

/// One prismatic leg: the actuator slides from `base` along the unit vector
/// `axis`, so the moving anchor sits at base + rho * axis, and a rigid bar
/// of length L connects that anchor to the tool point.
struct LegSpec {
  std::array<Scalar, 3> base;
  std::array<Scalar, 3> axis;

  Vec3 base_d() const {
    return {base[0].to_double(), base[1].to_double(), base[2].to_double()};
  }
  Vec3 axis_d() const {
    return {axis[0].to_double(), axis[1].to_double(), axis[2].to_double()};
  }
};

/// Open joint interval. A missing max means 2L for the model's numeric L.
struct JointLimits {
  Scalar min = Scalar(0);
  std::optional<Scalar> max;  // nullopt: 2L
};

struct RobotModel {
  std::string name;
  std::array<LegSpec, 3> legs;
  Scalar link_length = Scalar(2);  // numeric L used outside symbolic work
  JointLimits limits;

  double link_length_d() const { return link_length.to_double(); }
  /// Numeric open interval for every joint.
  std::pair<double, double> limit_interval() const;
  std::pair<Scalar, Scalar> limit_interval_exact() const;
};

inline constexpr const char* kBuiltinNames[] = {"orthoglide", "hybridglide",
                                                "triaglide", "uranesx"};

/// Throws std::invalid_argument for an unrecognized name.
RobotModel builtin_model(const std::string& name);

/// The three constraint polynomials f_i = |P - base_i - rho_i*axis_i|^2 - L^2
/// expanded over Q(sqrt3), with L kept symbolic. Each f_i is monic of degree
/// 2 in its own rho_i.
std::array<MPoly, 3> constraint_system(const RobotModel& m);

/// Same system with the numeric link length substituted for L.
std::array<MPoly, 3> constraint_system_numeric(const RobotModel& m);

/// Invariant check: exactly three legs is enforced by the type; reports
/// non-unit axes, non-positive link length and an empty limit interval.
/// Violations are data, not exceptions.
std::vector<std::string> validate_model(const RobotModel& m);

}  // namespace deltakin

#endif
