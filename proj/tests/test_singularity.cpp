#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "deltakin/rng.hpp"
#include "deltakin/singularity.hpp"

using namespace deltakin;

namespace {

MPoly var(Var v, int p = 1) { return MPoly::variable(v, p); }

MPoly term(Scalar coef, std::initializer_list<std::pair<Var, int>> vars) {
  ExpVec e{};
  for (auto [v, p] : vars) e[v] = static_cast<std::uint16_t>(e[v] + p);
  return MPoly::monomial(e, std::move(coef));
}

// The published determinants of the parallel Jacobians, term by term.
MPoly published_parallel_det(const std::string& name) {
  if (name == "orthoglide") {
    return term(Scalar(-8), {{VR1, 1}, {VR2, 1}, {VR3, 1}}) +
           term(Scalar(8), {{VR1, 1}, {VR2, 1}, {VZ, 1}}) +
           term(Scalar(8), {{VR1, 1}, {VR3, 1}, {VY, 1}}) +
           term(Scalar(8), {{VR2, 1}, {VR3, 1}, {VX, 1}});
  }
  if (name == "hybridglide") {
    return term(Scalar(-8), {{VR1, 1}, {VR3, 1}, {VX, 1}}) +
           term(Scalar(8), {{VR2, 1}, {VR3, 1}, {VX, 1}}) +
           term(Scalar(-8), {{VR1, 1}, {VR3, 1}}) +
           term(Scalar(8), {{VR1, 1}, {VZ, 1}}) +
           term(Scalar(-8), {{VR2, 1}, {VR3, 1}}) +
           term(Scalar(8), {{VR2, 1}, {VZ, 1}}) +
           term(Scalar(16), {{VR3, 1}, {VY, 1}});
  }
  if (name == "triaglide") {
    return term(Scalar(8), {{VR1, 1}, {VZ, 1}}) +
           term(Scalar(8), {{VR2, 1}, {VZ, 1}}) +
           term(Scalar(-16), {{VR3, 1}, {VZ, 1}});
  }
  REQUIRE(name == "uranesx");
  // 4 sqrt3 (3z - rho1 - rho2 - rho3 + rho3 x + rho2 x - 2 rho1 x)
  //   + 12 rho3 y - 12 rho2 y
  return term(Scalar::root3(12), {{VZ, 1}}) +
         term(Scalar::root3(-4), {{VR1, 1}}) +
         term(Scalar::root3(-4), {{VR2, 1}}) +
         term(Scalar::root3(-4), {{VR3, 1}}) +
         term(Scalar::root3(4), {{VR3, 1}, {VX, 1}}) +
         term(Scalar::root3(4), {{VR2, 1}, {VX, 1}}) +
         term(Scalar::root3(-8), {{VR1, 1}, {VX, 1}}) +
         term(Scalar(12), {{VR3, 1}, {VY, 1}}) +
         term(Scalar(-12), {{VR2, 1}, {VY, 1}});
}

// Oracle for the serial determinant: the product of the diagonal entries
// written out by hand (B is diagonal for this family).
MPoly serial_product_oracle(const std::string& name) {
  auto lin = [](Var coord, Var rho) {
    return (var(coord) - var(rho)).scaled(Scalar(-2));
  };
  if (name == "orthoglide") return lin(VX, VR1) * lin(VY, VR2) * lin(VZ, VR3);
  if (name == "hybridglide") return lin(VY, VR1) * lin(VY, VR2) * lin(VZ, VR3);
  if (name == "triaglide") return lin(VY, VR1) * lin(VY, VR2) * lin(VY, VR3);
  REQUIRE(name == "uranesx");
  return lin(VZ, VR1) * lin(VZ, VR2) * lin(VZ, VR3);
}

std::array<double, kNumVars> config_point(const Vec3& pose, const Joints& j,
                                          double L) {
  std::array<double, kNumVars> pt{};
  pt[VX] = pose.x;
  pt[VY] = pose.y;
  pt[VZ] = pose.z;
  pt[VR1] = j[0];
  pt[VR2] = j[1];
  pt[VR3] = j[2];
  pt[VL] = L;
  return pt;
}

}  // namespace

TEST_CASE("Jacobian entries are the constraint partials") {
  const RobotModel m = builtin_model("orthoglide");
  const JacobianPair jp = jacobians(m);

  // Row 1 of A: [2(x - rho1), 2y, 2z]
  CHECK(jp.A[0][0] == (var(VX) - var(VR1)).scaled(Scalar(2)));
  CHECK(jp.A[0][1] == var(VY).scaled(Scalar(2)));
  CHECK(jp.A[0][2] == var(VZ).scaled(Scalar(2)));

  // B = diag(-2(x - rho1), -2(y - rho2), -2(z - rho3))
  CHECK(jp.B[0][0] == (var(VX) - var(VR1)).scaled(Scalar(-2)));
  CHECK(jp.B[1][1] == (var(VY) - var(VR2)).scaled(Scalar(-2)));
  CHECK(jp.B[2][2] == (var(VZ) - var(VR3)).scaled(Scalar(-2)));

  const auto fs = constraint_system(m);
  const Var pose_vars[3] = {VX, VY, VZ};
  const Var rho_vars[3] = {VR1, VR2, VR3};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(jp.A[i][k] == fs[i].derivative(pose_vars[k]));
      CHECK(jp.B[i][k] == fs[i].derivative(rho_vars[k]));
    }
}

TEST_CASE("B is diagonal for every builtin") {
  for (const char* name : kBuiltinNames) {
    const JacobianPair jp = jacobians(builtin_model(name));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(jp.B[i][j].is_zero());
  }
}

TEST_CASE("parallel determinants equal the published polynomials exactly") {
  for (const char* name : kBuiltinNames) {
    INFO(name);
    CHECK(parallel_det(builtin_model(name)) == published_parallel_det(name));
  }
}

TEST_CASE("serial determinants equal the diagonal product oracle") {
  for (const char* name : kBuiltinNames) {
    INFO(name);
    CHECK(serial_det(builtin_model(name)) == serial_product_oracle(name));
  }
}

TEST_CASE("serial determinant vanishes when a leg factor vanishes") {
  const RobotModel m = builtin_model("orthoglide");
  const MPoly detb = serial_det(m);
  // x = rho1 zeroes the first diagonal factor. Dyadic coordinates keep the
  // expanded-term cancellation exact in double arithmetic.
  CHECK(detb.eval(config_point({1.25, 0.25, -0.5}, {1.25, 1.0, 2.0}, 2.0)) ==
        0.0);
  // On general coordinates the cancellation is only exact to rounding.
  CHECK(std::abs(detb.eval(config_point({1.3, 0.2, -0.4}, {1.3, 1.0, 2.0},
                                        2.0))) < 1e-12);
}

TEST_CASE("parallel determinant scales with the geometry") {
  // Scaling every base point and L by lambda scales det(A) by lambda^3 after
  // substituting the scaled configuration.
  const RobotModel m = builtin_model("hybridglide");
  RobotModel scaled = m;
  for (auto& leg : scaled.legs)
    for (auto& c : leg.base) c = c * Scalar(2);
  scaled.link_length = m.link_length * Scalar(2);

  const MPoly d0 = parallel_det(m);
  const MPoly d1 = parallel_det(scaled);
  SplitMix64 rng(88);
  for (int i = 0; i < 50; ++i) {
    Vec3 pose{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Joints joints{rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)};
    const double big = d1.eval(config_point(pose, joints, 4.0));
    const double small = d0.eval(config_point(
        {pose.x / 2, pose.y / 2, pose.z / 2},
        {joints[0] / 2, joints[1] / 2, joints[2] / 2}, 2.0));
    CHECK(big == doctest::Approx(8.0 * small).epsilon(1e-12));
  }
}

TEST_CASE("projecting the zero polynomial is an error") {
  const RobotModel m = builtin_model("orthoglide");
  CHECK_THROWS_AS(project(m, MPoly(), ProjSpace::workspace), std::domain_error);
}

TEST_CASE("triaglide parallel workspace projection") {
  const RobotModel m = builtin_model("triaglide");
  const ProjectedSurface s = project(m, parallel_det(m), ProjSpace::workspace);

  // z (z^2 - L^2) at L = 2: degree 3, only z, two terms.
  CHECK(s.stats.total_degree == 3);
  CHECK(s.stats.per_var == std::array<int, 3>{0, 0, 3});
  CHECK(s.stats.num_terms == 2);
  CHECK(s.restored_monomial[VZ] == 1);

  // The determinant's z factor is not eliminated, so the projection must
  // vanish identically on the z = 0 slice.
  SplitMix64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p{rng.uniform(-2, 2), rng.uniform(-2, 6), 0.0};
    CHECK(std::abs(surface_residual(s, p, {0, 0, 0})) < 1e-9);
  }

  // And it must distinguish nonsingular slices.
  CHECK(surface_residual(s, {0.3, 1.0, 1.0}, {0, 0, 0}) > 1e-6);
}

TEST_CASE("projections are free of the eliminated variables") {
  for (const char* name : {"triaglide", "orthoglide"}) {
    const RobotModel m = builtin_model(name);
    for (auto kind : {SingKind::parallel, SingKind::serial}) {
      const MPoly g =
          kind == SingKind::parallel ? parallel_det(m) : serial_det(m);
      for (auto space : {ProjSpace::workspace, ProjSpace::jointspace}) {
        if (kind == SingKind::parallel && space == ProjSpace::jointspace &&
            std::string(name) == "orthoglide")
          continue;  // expensive; the workspace direction covers this robot
        const ProjectedSurface s = project(m, g, space);
        const bool ws = space == ProjSpace::workspace;
        CHECK(s.poly.degree_in(ws ? VR1 : VX) <= 0);
        CHECK(s.poly.degree_in(ws ? VR2 : VY) <= 0);
        CHECK(s.poly.degree_in(ws ? VR3 : VZ) <= 0);
        CHECK(s.poly.degree_in(VL) <= 0);
        CHECK_FALSE(s.poly.is_zero());
      }
    }
  }
}

TEST_CASE("sampled parallel singularities on the triaglide") {
  const RobotModel m = builtin_model("triaglide");

  // Any IK solution with z = 0 is exactly singular: det(A) = 8z(...).
  const MPoly det_t = parallel_det(m);
  const IkSolutionSet sols = ik(m, {0.3, 1.0, 0.0}, true);
  REQUIRE(sols.count() > 0);
  for (const auto& j : sols.solutions)
    CHECK(det_t.eval(config_point({0.3, 1.0, 0.0}, j, 2.0)) == 0.0);

  const SampleResult r = sample_singular(m, SingKind::parallel, 50, 7);
  CHECK(r.complete());
  CHECK(r.requested == 50);
  for (const auto& cfg : r.configs) {
    CHECK(cfg.det_residual <= 1e-9);
    const double fscale = residual_scale(m, cfg.pose);
    for (int leg = 0; leg < 3; ++leg)
      CHECK(std::abs(constraint_residual(m, leg, cfg.pose, cfg.joints[leg])) <=
            fscale);
  }
}

TEST_CASE("sampled serial singularities respect limits and residuals") {
  const RobotModel m = builtin_model("orthoglide");
  const SampleResult r = sample_singular(m, SingKind::serial, 25, 11);
  CHECK(r.complete());
  auto [lo, hi] = m.limit_interval();
  for (const auto& cfg : r.configs) {
    CHECK(cfg.det_residual <= 1e-9);
    for (double rho : cfg.joints) {
      CHECK(rho > lo);
      CHECK(rho < hi);
    }
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const RobotModel m = builtin_model("hybridglide");
  const SampleResult a = sample_singular(m, SingKind::parallel, 10, 42);
  const SampleResult b = sample_singular(m, SingKind::parallel, 10, 42);
  REQUIRE(a.configs.size() == b.configs.size());
  for (size_t i = 0; i < a.configs.size(); ++i) {
    CHECK(a.configs[i].pose.x == b.configs[i].pose.x);
    CHECK(a.configs[i].joints == b.configs[i].joints);
  }
}

TEST_CASE("sampled singularities lie on the projected surfaces") {
  // Parallel samples against the workspace projection, serial samples
  // against the joint-space projection; full sweep in the acceptance suite.
  const RobotModel tria = builtin_model("triaglide");
  const ProjectedSurface pw =
      project(tria, parallel_det(tria), ProjSpace::workspace);
  const SampleResult pr = sample_singular(tria, SingKind::parallel, 10, 3);
  REQUIRE(pr.complete());
  for (const auto& cfg : pr.configs)
    CHECK(std::abs(surface_residual(pw, cfg.pose, cfg.joints)) <= 1e-6);

  const RobotModel ortho = builtin_model("orthoglide");
  const ProjectedSurface sj =
      project(ortho, serial_det(ortho), ProjSpace::jointspace);
  const SampleResult sr = sample_singular(ortho, SingKind::serial, 10, 5);
  REQUIRE(sr.complete());
  for (const auto& cfg : sr.configs)
    CHECK(std::abs(surface_residual(sj, cfg.pose, cfg.joints)) <= 1e-6);
}
