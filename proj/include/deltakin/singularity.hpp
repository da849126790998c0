#ifndef DELTAKIN_SINGULARITY_HPP
#define DELTAKIN_SINGULARITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deltakin/geometry.hpp"
#include "deltakin/kinematics.hpp"
#include "deltakin/polymat.hpp"
#include "deltakin/robot.hpp"

namespace deltakin {

/// A t + B qdot = 0: A holds the partials of the constraints w.r.t. the pose
/// coordinates, B w.r.t. the joint values (diagonal for this family).
struct JacobianPair {
  Mat3 A;
  Mat3 B;
};

JacobianPair jacobians(const RobotModel& m);

/// det(A); vanishes at parallel singularities. Rows ordered by leg index,
/// columns by (x, y, z), no row scaling.
MPoly parallel_det(const RobotModel& m);

/// det(B); vanishes at serial singularities.
MPoly serial_det(const RobotModel& m);

enum class ProjSpace { workspace, jointspace };
enum class SingKind { parallel, serial };

const char* to_string(ProjSpace s);
const char* to_string(SingKind k);

struct ElimStep {
  Var eliminated = VL;
  int factor = -1;  // index of the determinant factor being carried, -1 when
                    // the determinant is eliminated whole
  bool input_reduction = false;  // content/monomial peel of the input itself
  bool power_reduction = false;  // square root extracted from the result
  bool skipped = false;          // input already free of the variable
  int deg_g = 0;           // degree of the carried polynomial in the variable
  int deg_f = 0;           // degree of the pivot in the variable
  int sylvester_size = 0;  // 0 when a closed form handled a linear input
  std::string content_removed;  // positive rational divided out
  ExpVec monomial_removed{};    // monomial factor moved to the trace
  int result_degree = 0;
  long result_terms = 0;
};

struct ProjectedSurface {
  ProjSpace space = ProjSpace::workspace;
  MPoly poly;           // free of the eliminated variables, nonzero
  PolyStats stats;
  std::vector<ElimStep> trace;
  ExpVec restored_monomial{};  // non-eliminated monomial factor of the input,
                               // multiplied back into poly
};

/// Eliminates the joint values (workspace) or the pose coordinates
/// (jointspace) from {g, f1, f2, f3} by successive resultants, with the
/// numeric link length substituted exactly before elimination. Workspace
/// order: rho1 against f1, rho2 against f2, rho3 against f3. Jointspace
/// order: x against f1, y against the x-eliminated f2, z against the x,y-
/// eliminated f3. After every step the integer content is divided out;
/// monomial factors of the carried polynomial in non-eliminated variables
/// are set aside and multiplied back at the end.
///
/// When g is the serial determinant, the cascade runs on each diagonal
/// Jacobian factor separately and the projected factors are multiplied:
/// resultants are multiplicative in the first argument, and eliminating the
/// expanded product instead only adds repeated spurious factors at a much
/// larger degree.
///
/// Throws std::domain_error when g is zero or an intermediate resultant
/// collapses to zero (g shares a factor with a constraint).
ProjectedSurface project(const RobotModel& m, const MPoly& g, ProjSpace space);

/// Residual of the surface polynomial at a point, evaluated exactly and
/// normalized by the coefficient 1-norm times max(1, |point|)^degree.
double surface_residual(const ProjectedSurface& s, const Vec3& pose,
                        const Joints& joints);

struct SingularSample {
  Vec3 pose;
  Joints joints{0, 0, 0};
  double det_residual = 0;  // |det| / (coeff 1-norm * max(1,|cfg|)^deg)
};

struct SampleResult {
  std::vector<SingularSample> configs;
  int requested = 0;
  long attempts = 0;

  bool complete() const {
    return static_cast<int>(configs.size()) == requested;
  }
};

/// Finds configurations with f_i = 0 and det = 0 to scaled residuals below
/// 1e-9. Poses are drawn in `box`, inverse kinematics fixes a working-mode
/// branch, and one pose coordinate is walked by bisection to a sign change
/// of det (parallel) or of a leg discriminant, whose vanishing annihilates
/// the corresponding diagonal factor of B (serial). Stops after an attempt
/// budget; the result reports how many configurations succeeded.
SampleResult sample_singular(const RobotModel& m, SingKind kind, int n,
                             std::uint64_t seed, bool apply_limits,
                             const Box& box);

SampleResult sample_singular(const RobotModel& m, SingKind kind, int n,
                             std::uint64_t seed, bool apply_limits = true);

}  // namespace deltakin

#endif
