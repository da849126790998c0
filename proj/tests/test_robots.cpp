#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "deltakin/io.hpp"
#include "deltakin/robot.hpp"

using namespace deltakin;

namespace {

MPoly var(Var v, int p = 1) { return MPoly::variable(v, p); }
MPoly cst(Scalar s) { return MPoly::constant(std::move(s)); }

MPoly sq(const MPoly& p) { return p * p; }

// The published constraint equations, written out literally.
std::array<MPoly, 3> expected_system(const std::string& name) {
  const MPoly x = var(VX), y = var(VY), z = var(VZ);
  const MPoly r1 = var(VR1), r2 = var(VR2), r3 = var(VR3);
  const MPoly L2 = var(VL, 2);
  const MPoly one = cst(Scalar(1));
  const MPoly half = cst(Scalar::fraction(1, 2));
  const MPoly r3half = cst(Scalar::root3(1, 2));
  if (name == "orthoglide") {
    return {sq(x - r1) + sq(y) + sq(z) - L2,
            sq(x) + sq(y - r2) + sq(z) - L2,
            sq(x) + sq(y) + sq(z - r3) - L2};
  }
  if (name == "hybridglide") {
    return {sq(x - one) + sq(y - r1) + sq(z) - L2,
            sq(x + one) + sq(y - r2) + sq(z) - L2,
            sq(x) + sq(y) + sq(z - r3) - L2};
  }
  if (name == "triaglide") {
    return {sq(x - one) + sq(y - r1) + sq(z) - L2,
            sq(x + one) + sq(y - r2) + sq(z) - L2,
            sq(x) + sq(y - r3) + sq(z) - L2};
  }
  REQUIRE(name == "uranesx");
  return {sq(x - one) + sq(y) + sq(z - r1) - L2,
          sq(x + half) + sq(y - r3half) + sq(z - r2) - L2,
          sq(x + half) + sq(y + r3half) + sq(z - r3) - L2};
}

}  // namespace

TEST_CASE("builtin leg tables") {
  const RobotModel ortho = builtin_model("orthoglide");
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(ortho.legs[i].base[k] == Scalar(0));
      CHECK(ortho.legs[i].axis[k] == (i == k ? Scalar(1) : Scalar(0)));
    }

  const RobotModel tria = builtin_model("triaglide");
  CHECK(tria.legs[0].base == std::array<Scalar, 3>{Scalar(1), Scalar(0), Scalar(0)});
  CHECK(tria.legs[1].base == std::array<Scalar, 3>{Scalar(-1), Scalar(0), Scalar(0)});
  CHECK(tria.legs[2].base == std::array<Scalar, 3>{Scalar(0), Scalar(0), Scalar(0)});
  for (const auto& leg : tria.legs)
    CHECK(leg.axis == std::array<Scalar, 3>{Scalar(0), Scalar(1), Scalar(0)});

  const RobotModel ura = builtin_model("uranesx");
  CHECK(ura.legs[0].base == std::array<Scalar, 3>{Scalar(1), Scalar(0), Scalar(0)});
  CHECK(ura.legs[1].base ==
        std::array<Scalar, 3>{Scalar::fraction(-1, 2), Scalar::root3(1, 2),
                              Scalar(0)});
  CHECK(ura.legs[2].base ==
        std::array<Scalar, 3>{Scalar::fraction(-1, 2), Scalar::root3(-1, 2),
                              Scalar(0)});
  for (const auto& leg : ura.legs)
    CHECK(leg.axis == std::array<Scalar, 3>{Scalar(0), Scalar(0), Scalar(1)});

  CHECK_THROWS_AS(builtin_model("hexapod"), std::invalid_argument);
}

TEST_CASE("constraint systems match the published equations exactly") {
  for (const char* name : kBuiltinNames) {
    const RobotModel m = builtin_model(name);
    const auto fs = constraint_system(m);
    const auto expected = expected_system(name);
    for (int i = 0; i < 3; ++i) {
      INFO(name << " leg " << i + 1);
      CHECK(fs[i] == expected[i]);
    }
  }
}

TEST_CASE("each constraint is monic of degree 2 in its own joint") {
  const Var rho[3] = {VR1, VR2, VR3};
  for (const char* name : kBuiltinNames) {
    const auto fs = constraint_system(builtin_model(name));
    for (int i = 0; i < 3; ++i) {
      CHECK(fs[i].degree_in(rho[i]) == 2);
      const auto coeffs = fs[i].coefficients_in(rho[i]);
      CHECK(coeffs[2] == MPoly::constant(Scalar(1)));
    }
  }
}

TEST_CASE("actuator identity |(base + rho axis) - base|^2 = rho^2") {
  const Var rho[3] = {VR1, VR2, VR3};
  for (const char* name : kBuiltinNames) {
    const RobotModel m = builtin_model(name);
    for (int i = 0; i < 3; ++i) {
      MPoly acc;
      for (int k = 0; k < 3; ++k) {
        const MPoly d = var(rho[i]).scaled(m.legs[i].axis[k]);
        acc += d * d;
      }
      CHECK(acc == var(rho[i], 2));
    }
  }
}

TEST_CASE("model validation") {
  CHECK(validate_model(builtin_model("orthoglide")).empty());

  RobotModel bad = builtin_model("orthoglide");
  bad.legs[1].axis = {Scalar(1), Scalar(1), Scalar(0)};
  auto violations = validate_model(bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("axis not unit") != std::string::npos);

  RobotModel flat = builtin_model("orthoglide");
  flat.link_length = Scalar(0);
  violations = validate_model(flat);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations[0].find("non-positive link length") != std::string::npos);

  RobotModel inverted = builtin_model("orthoglide");
  inverted.limits.max = Scalar(-1);
  violations = validate_model(inverted);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.back().find("empty joint limit") != std::string::npos);
}

TEST_CASE("default joint limits are (0, 2L)") {
  RobotModel m = builtin_model("triaglide");
  CHECK(m.limit_interval() == std::pair<double, double>{0.0, 4.0});
  m.link_length = Scalar::fraction(3, 2);
  CHECK(m.limit_interval() == std::pair<double, double>{0.0, 3.0});
  m.limits.max = Scalar(5);
  CHECK(m.limit_interval() == std::pair<double, double>{0.0, 5.0});
}

TEST_CASE("robot config JSON round trip") {
  for (const char* name : kBuiltinNames) {
    const RobotModel m = builtin_model(name);
    const RobotModel back = robot_from_json(robot_to_json(m));
    CHECK(back.name == m.name);
    CHECK(back.link_length == m.link_length);
    for (int i = 0; i < 3; ++i) {
      CHECK(back.legs[i].base == m.legs[i].base);
      CHECK(back.legs[i].axis == m.legs[i].axis);
    }
    CHECK(back.limits.min == m.limits.min);
    CHECK(back.limits.max == m.limits.max);
  }
}

TEST_CASE("robot config JSON accepts the documented scalar forms") {
  const auto j = nlohmann::json::parse(R"({
    "name": "custom",
    "L": "5/2",
    "legs": [
      {"base": [1, "0", "0"], "axis": ["0", "1", "0"]},
      {"base": ["-1/2", {"rat": "0", "sqrt3": "1/2"}, 0], "axis": [0, 1, 0]},
      {"base": [0, 0, 0], "axis": [0, 0, 1]}
    ],
    "limits": {"min": "0", "max": "2L"}
  })");
  const RobotModel m = robot_from_json(j);
  CHECK(m.link_length == Scalar::fraction(5, 2));
  CHECK(m.legs[1].base[1] == Scalar::root3(1, 2));
  CHECK_FALSE(m.limits.max.has_value());
  CHECK(m.limit_interval().second == doctest::Approx(5.0));

  auto broken = j;
  broken["legs"] = nlohmann::json::array();
  CHECK_THROWS_AS(robot_from_json(broken), std::invalid_argument);
}
