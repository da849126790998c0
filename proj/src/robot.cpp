#include "deltakin/robot.hpp"

#include <stdexcept>

namespace deltakin {

std::pair<double, double> RobotModel::limit_interval() const {
  auto [lo, hi] = limit_interval_exact();
  return {lo.to_double(), hi.to_double()};
}

std::pair<Scalar, Scalar> RobotModel::limit_interval_exact() const {
  Scalar hi = limits.max ? *limits.max : Scalar(2) * link_length;
  return {limits.min, hi};
}

RobotModel builtin_model(const std::string& name) {
  const Scalar zero(0), one(1);
  const Scalar half = Scalar::fraction(1, 2);
  const Scalar root3_half = Scalar::root3(1, 2);

  RobotModel m;
  m.name = name;
  if (name == "orthoglide") {
    // Three orthogonal prismatic axes through the origin.
    m.legs[0] = {{zero, zero, zero}, {one, zero, zero}};
    m.legs[1] = {{zero, zero, zero}, {zero, one, zero}};
    m.legs[2] = {{zero, zero, zero}, {zero, zero, one}};
  } else if (name == "hybridglide") {
    // Two parallel actuators along y, the third along z.
    m.legs[0] = {{one, zero, zero}, {zero, one, zero}};
    m.legs[1] = {{-one, zero, zero}, {zero, one, zero}};
    m.legs[2] = {{zero, zero, zero}, {zero, zero, one}};
  } else if (name == "triaglide") {
    // All three actuators along y in the z = 0 plane.
    m.legs[0] = {{one, zero, zero}, {zero, one, zero}};
    m.legs[1] = {{-one, zero, zero}, {zero, one, zero}};
    m.legs[2] = {{zero, zero, zero}, {zero, one, zero}};
  } else if (name == "uranesx") {
    // Axes along z, anchors on a unit circle in different vertical lines.
    m.legs[0] = {{one, zero, zero}, {zero, zero, one}};
    m.legs[1] = {{-half, root3_half, zero}, {zero, zero, one}};
    m.legs[2] = {{-half, -root3_half, zero}, {zero, zero, one}};
  } else {
    throw std::invalid_argument("unknown builtin model: " + name);
  }
  return m;
}

std::array<MPoly, 3> constraint_system(const RobotModel& m) {
  std::array<MPoly, 3> fs;
  const Var rho_var[3] = {VR1, VR2, VR3};
  for (int i = 0; i < 3; ++i) {
    const LegSpec& leg = m.legs[i];
    MPoly f;
    const Var coord[3] = {VX, VY, VZ};
    for (int k = 0; k < 3; ++k) {
      // coordinate_k - base_k - rho_i * axis_k
      MPoly d = MPoly::variable(coord[k]) - MPoly::constant(leg.base[k]) -
                MPoly::variable(rho_var[i]).scaled(leg.axis[k]);
      f += d * d;
    }
    f -= MPoly::variable(VL, 2);
    fs[i] = f;
  }
  return fs;
}

std::array<MPoly, 3> constraint_system_numeric(const RobotModel& m) {
  std::array<MPoly, 3> fs = constraint_system(m);
  for (auto& f : fs) f = f.substituted(VL, m.link_length);
  return fs;
}

std::vector<std::string> validate_model(const RobotModel& m) {
  std::vector<std::string> violations;
  for (int i = 0; i < 3; ++i) {
    const auto& a = m.legs[i].axis;
    Scalar dot2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    if (dot2 != Scalar(1))
      violations.push_back("leg " + std::to_string(i + 1) + ": axis not unit");
  }
  if (m.link_length.sign() <= 0)
    violations.push_back("non-positive link length");
  auto [lo, hi] = m.limit_interval_exact();
  if ((hi - lo).sign() <= 0) violations.push_back("empty joint limit interval");
  return violations;
}

}  // namespace deltakin
