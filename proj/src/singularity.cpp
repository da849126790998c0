#include "deltakin/singularity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "deltakin/rng.hpp"

namespace deltakin {

namespace {

constexpr Var kPoseVars[3] = {VX, VY, VZ};
constexpr Var kJointVars[3] = {VR1, VR2, VR3};

}  // namespace

const char* to_string(ProjSpace s) {
  return s == ProjSpace::workspace ? "workspace" : "jointspace";
}

const char* to_string(SingKind k) {
  return k == SingKind::parallel ? "parallel" : "serial";
}

JacobianPair jacobians(const RobotModel& m) {
  const std::array<MPoly, 3> fs = constraint_system(m);
  JacobianPair jp;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      jp.A[i][k] = fs[i].derivative(kPoseVars[k]);
      jp.B[i][k] = fs[i].derivative(kJointVars[k]);
    }
  }
  return jp;
}

MPoly parallel_det(const RobotModel& m) { return det3(jacobians(m).A); }

MPoly serial_det(const RobotModel& m) { return det3(jacobians(m).B); }

namespace {

bool is_eliminated(Var v, ProjSpace space) {
  if (space == ProjSpace::workspace) return v == VR1 || v == VR2 || v == VR3;
  return v == VX || v == VY || v == VZ;
}

// Monomial factor restricted to variables that survive the projection.
ExpVec kept_monomial(const MPoly& p, ProjSpace space) {
  ExpVec m = p.monomial_content();
  for (int v = 0; v < kNumVars; ++v) {
    if (is_eliminated(static_cast<Var>(v), space)) m[v] = 0;
  }
  return m;
}

void accumulate(ExpVec& into, const ExpVec& add) {
  for (int v = 0; v < kNumVars; ++v)
    into[v] = static_cast<std::uint16_t>(into[v] + add[v]);
}

bool any_exponent(const ExpVec& e) {
  for (int v = 0; v < kNumVars; ++v)
    if (e[v]) return true;
  return false;
}

// Divides out the integer content and the non-eliminated monomial factor,
// recording both in the step.
MPoly reduce_carried(MPoly g, ProjSpace space, ElimStep& step,
                     ExpVec& restored) {
  ExpVec mono = kept_monomial(g, space);
  if (any_exponent(mono)) {
    g = g.divided_by_monomial(mono);
    step.monomial_removed = mono;
    accumulate(restored, mono);
  }
  mpq_class content;
  g = g.primitive_part(&content);
  step.content_removed = content.get_str();
  return g;
}

ElimStep make_step(Var v, const MPoly& g, const MPoly& pivot) {
  ElimStep step;
  step.eliminated = v;
  step.deg_g = g.degree_in(v);
  step.deg_f = pivot.degree_in(v);
  return step;
}

}  // namespace

namespace {

// One pivot polynomial per eliminated variable. Workspace: f_i itself, since
// rho_i appears only there. Jointspace: f1 for x, then the x-eliminated
// image of f2 for y, then the x,y-eliminated image of f3 for z, falling back
// to the next leg in order when an image happens to be free of the variable.
std::array<MPoly, 3> elimination_pivots(const std::array<MPoly, 3>& fs,
                                        ProjSpace space) {
  if (space == ProjSpace::workspace) return fs;
  std::array<MPoly, 3> pivots;
  std::vector<MPoly> pool(fs.begin(), fs.end());
  for (int i = 0; i < 3; ++i) {
    const Var v = kPoseVars[i];
    int chosen = -1;
    for (size_t j = 0; j < pool.size(); ++j) {
      if (pool[j].degree_in(v) >= 1) {
        chosen = static_cast<int>(j);
        break;
      }
    }
    if (chosen < 0) continue;  // pivot stays empty; cascade skips or throws
    pivots[i] = pool[chosen];
    pool.erase(pool.begin() + chosen);
    for (MPoly& w : pool) {
      if (w.degree_in(v) >= 1) {
        w = resultant(w, pivots[i], v);
        if (w.is_zero())
          throw std::domain_error("project: constraint images share a factor");
        w = w.primitive_part();
      }
    }
  }
  return pivots;
}

// Runs the resultant cascade on one carried polynomial.
MPoly cascade(MPoly cur, const std::array<MPoly, 3>& pivots, ProjSpace space,
              int factor_idx, ProjectedSurface& out) {
  const Var* order = space == ProjSpace::workspace ? kJointVars : kPoseVars;
  {
    ElimStep input_step{};
    input_step.factor = factor_idx;
    input_step.input_reduction = true;
    cur = reduce_carried(cur, space, input_step, out.restored_monomial);
    input_step.result_degree = cur.total_degree();
    input_step.result_terms = static_cast<long>(cur.terms().size());
    out.trace.push_back(input_step);
  }
  for (int i = 0; i < 3; ++i) {
    const Var v = order[i];
    ElimStep step = make_step(v, cur, pivots[i]);
    step.factor = factor_idx;
    if (step.deg_g < 1) {
      step.skipped = true;
    } else {
      if (pivots[i].degree_in(v) < 1)
        throw std::domain_error(
            "project: no constraint available to eliminate " +
            std::string(kVarName[v]));
      step.sylvester_size = step.deg_g + step.deg_f;
      cur = resultant(cur, pivots[i], v);
      if (cur.is_zero())
        throw std::domain_error(
            "project: zero intermediate resultant (input shares a factor "
            "with a constraint)");
      cur = reduce_carried(cur, space, step, out.restored_monomial);
    }
    step.result_degree = cur.total_degree();
    step.result_terms = static_cast<long>(cur.terms().size());
    out.trace.push_back(step);
  }
  return cur;
}

}  // namespace

ProjectedSurface project(const RobotModel& m, const MPoly& g, ProjSpace space) {
  if (g.is_zero())
    throw std::domain_error("project: the zero polynomial has no projection");

  const std::array<MPoly, 3> fs = constraint_system_numeric(m);
  const MPoly gl = g.substituted(VL, m.link_length);
  if (gl.is_zero())
    throw std::domain_error("project: polynomial vanishes at the configured L");

  ProjectedSurface out;
  out.space = space;

  // The serial determinant is the product of the diagonal Jacobian entries.
  // Resultants are multiplicative in the carried argument, so eliminating
  // factor by factor gives the same zero set while avoiding the repeated
  // spurious factors (and the degree blow-up) of the expanded product.
  std::vector<MPoly> carried;
  {
    const JacobianPair jp = jacobians(m);
    bool diagonal = true;
    for (int i = 0; i < 3 && diagonal; ++i)
      for (int j = 0; j < 3 && diagonal; ++j)
        if (i != j) diagonal = jp.B[i][j].is_zero();
    if (diagonal && gl == det3(jp.B).substituted(VL, m.link_length)) {
      for (int i = 0; i < 3; ++i)
        carried.push_back(jp.B[i][i].substituted(VL, m.link_length));
    } else {
      carried.push_back(gl);
    }
  }

  const std::array<MPoly, 3> pivots = elimination_pivots(fs, space);

  MPoly result = MPoly::constant(Scalar(1));
  for (size_t idx = 0; idx < carried.size(); ++idx) {
    const int tag = carried.size() > 1 ? static_cast<int>(idx) : -1;
    MPoly part = cascade(carried[idx], pivots, space, tag, out);

    // The product over all working modes pairs each branch with its sign
    // flip whenever the determinant is odd under the flip, which squares
    // the true projection. Extracting the exact square root keeps the zero
    // set and restores the reduced surface.
    int extracted = 0;
    while (!part.is_constant()) {
      const MPoly candidate =
          part.leading_term().second.sign() < 0 ? -part : part;
      auto root = candidate.square_root();
      if (!root) break;
      part = root->primitive_part();
      ++extracted;
    }
    if (extracted > 0) {
      ElimStep step{};
      step.factor = tag;
      step.power_reduction = true;
      step.deg_g = extracted;  // number of square roots taken
      step.result_degree = part.total_degree();
      step.result_terms = static_cast<long>(part.terms().size());
      out.trace.push_back(step);
    }
    result = result * part;
  }

  if (any_exponent(out.restored_monomial))
    result = result.times_monomial(out.restored_monomial);

  const Var* order = space == ProjSpace::workspace ? kJointVars : kPoseVars;
  for (int i = 0; i < 3; ++i) {
    if (result.degree_in(order[i]) > 0)
      throw std::logic_error("project: eliminated variable survived");
  }
  if (result.is_zero()) throw std::domain_error("project: empty result");

  out.poly = result.primitive_part();
  out.stats = poly_stats(out.poly, space == ProjSpace::workspace);
  return out;
}

namespace {

double coeff_norm1(const MPoly& p) {
  double acc = 0;
  for (const auto& [e, c] : p.terms()) {
    acc += std::abs(c.rat.get_d()) + std::abs(c.sqrt3.get_d()) * std::sqrt(3.0);
  }
  return acc;
}

std::array<Scalar, kNumVars> exact_point(const Vec3& pose,
                                         const Joints& joints) {
  // Doubles are dyadic rationals, so the conversion is exact. Projections
  // are free of L, so its slot is immaterial.
  return {Scalar(mpq_class(pose.x)),    Scalar(mpq_class(pose.y)),
          Scalar(mpq_class(pose.z)),    Scalar(mpq_class(joints[0])),
          Scalar(mpq_class(joints[1])), Scalar(mpq_class(joints[2])),
          Scalar(0)};
}

}  // namespace

double surface_residual(const ProjectedSurface& s, const Vec3& pose,
                        const Joints& joints) {
  const double point_norm =
      s.space == ProjSpace::workspace
          ? norm(pose)
          : std::sqrt(joints[0] * joints[0] + joints[1] * joints[1] +
                      joints[2] * joints[2]);
  const Scalar value = s.poly.eval(exact_point(pose, joints));
  const double raw = std::abs(value.to_double_accurate());
  const double scale =
      coeff_norm1(s.poly) * std::pow(std::max(1.0, point_norm),
                                     std::max(s.poly.total_degree(), 0));
  return raw / scale;
}

namespace {

struct LegQuadratic {
  double mid;   // d . (P - a)
  double disc;  // mid^2 - (|P - a|^2 - L^2)
};

LegQuadratic leg_quadratic(const RobotModel& m, int leg, const Vec3& pose) {
  const LegSpec& spec = m.legs[static_cast<size_t>(leg)];
  const Vec3 rel = pose - spec.base_d();
  const double mid = dot(spec.axis_d(), rel);
  const double L = m.link_length_d();
  return {mid, mid * mid - (norm2(rel) - L * L)};
}

// Root of the leg quadratic on a fixed branch; the tangency band collapses
// both branches to the double root, matching ik_leg. NaN when complex.
double branch_root(const RobotModel& m, int leg, const Vec3& pose, int sigma) {
  const LegQuadratic q = leg_quadratic(m, leg, pose);
  const double c0 = q.mid * q.mid - q.disc;
  const double band = kTangencyEps * (1.0 + q.mid * q.mid + std::abs(c0));
  if (std::abs(q.disc) <= band) return q.mid;
  if (q.disc < 0) return std::numeric_limits<double>::quiet_NaN();
  return q.mid + (sigma ? -1.0 : 1.0) * std::sqrt(q.disc);
}

bool inside_limits(const RobotModel& m, const Joints& joints) {
  auto [lo, hi] = m.limit_interval();
  const double margin = 1e-9 * (1.0 + hi - lo);
  for (double r : joints) {
    if (!(r > lo + margin && r < hi - margin)) return false;
  }
  return true;
}

double config_norm(const Vec3& pose, const Joints& joints) {
  return std::sqrt(norm2(pose) + joints[0] * joints[0] +
                   joints[1] * joints[1] + joints[2] * joints[2]);
}

}  // namespace

SampleResult sample_singular(const RobotModel& m, SingKind kind, int n,
                             std::uint64_t seed, bool apply_limits,
                             const Box& box) {
  if (n < 1) throw std::invalid_argument("sample_singular: n must be >= 1");

  const MPoly det_poly =
      kind == SingKind::parallel ? parallel_det(m) : serial_det(m);
  const double det_norm1 = coeff_norm1(det_poly);
  const int det_deg = std::max(det_poly.total_degree(), 0);

  SampleResult result;
  result.requested = n;
  SplitMix64 rng(seed);

  const long budget = 400L * n + 2000;
  constexpr int kScanSteps = 48;
  constexpr double kResidualTol = 1e-9;

  while (static_cast<int>(result.configs.size()) < n &&
         result.attempts < budget) {
    ++result.attempts;
    Vec3 pose0{rng.uniform(box.min.x, box.max.x),
               rng.uniform(box.min.y, box.max.y),
               rng.uniform(box.min.z, box.max.z)};
    int sigma[3];
    for (int& s : sigma) s = static_cast<int>(rng.below(2));
    const int axis0 = static_cast<int>(rng.below(3));
    const int serial_leg = static_cast<int>(rng.below(3));

    // The walk needs a starting point with a live working mode.
    {
      bool ok = true;
      for (int i = 0; i < 3; ++i)
        ok = ok && !std::isnan(branch_root(m, i, pose0, sigma[i]));
      if (!ok) continue;
    }

    auto phi = [&](double t, int axis) -> double {
      Vec3 p = pose0;
      p[axis] += t;
      if (kind == SingKind::parallel) {
        std::array<double, kNumVars> pt{};
        pt[VX] = p.x;
        pt[VY] = p.y;
        pt[VZ] = p.z;
        for (int i = 0; i < 3; ++i) {
          const double r = branch_root(m, i, p, sigma[i]);
          if (std::isnan(r)) return std::numeric_limits<double>::quiet_NaN();
          pt[VR1 + i] = r;
        }
        pt[VL] = m.link_length_d();
        return det_poly.eval(pt);
      }
      return leg_quadratic(m, serial_leg, p).disc;
    };

    // Find a bracketing sign change along one of the axes, scanning outward
    // from the sampled pose so the nearest crossing wins.
    double ta = 0, tb = 0;
    int axis = -1;
    for (int k = 0; k < 3 && axis < 0; ++k) {
      const int a = (axis0 + k) % 3;
      const double lo = box.min[a] - pose0[a];
      const double hi = box.max[a] - pose0[a];
      const double step = (hi - lo) / (2 * kScanSteps);
      const double v0 = phi(0, a);
      double prev_t[2] = {0, 0};
      double prev_v[2] = {v0, v0};
      for (int s = 1; s <= 2 * kScanSteps && axis < 0; ++s) {
        for (int dir = 0; dir < 2; ++dir) {
          const double t = (dir == 0 ? 1.0 : -1.0) * s * step;
          if (t < lo || t > hi) continue;
          const double v = phi(t, a);
          if (!std::isnan(prev_v[dir]) && !std::isnan(v) &&
              ((prev_v[dir] < 0) != (v < 0)) && prev_v[dir] != 0) {
            ta = std::min(prev_t[dir], t);
            tb = std::max(prev_t[dir], t);
            axis = a;
            break;
          }
          prev_t[dir] = t;
          prev_v[dir] = v;
        }
      }
    }
    if (axis < 0) continue;

    double va = phi(ta, axis);
    bool dead = false;
    for (int it = 0; it < 200 && tb - ta > 0; ++it) {
      const double tm = 0.5 * (ta + tb);
      if (tm == ta || tm == tb) break;
      const double vm = phi(tm, axis);
      if (std::isnan(vm)) {
        dead = true;  // branch went complex inside the bracket
        break;
      }
      if (vm == 0) {
        ta = tb = tm;
        va = vm;
        break;
      }
      if ((vm < 0) == (va < 0)) {
        ta = tm;
        va = vm;
      } else {
        tb = tm;
      }
    }
    if (dead) continue;

    Vec3 pose = pose0;
    pose[axis] += 0.5 * (ta + tb);

    Joints joints{};
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      if (kind == SingKind::serial && i == serial_leg) {
        // Tangency joint value: kills the corresponding diagonal of B.
        joints[i] = leg_quadratic(m, i, pose).mid;
      } else {
        const double r = branch_root(m, i, pose, sigma[i]);
        if (std::isnan(r)) {
          ok = false;
          break;
        }
        joints[i] = r;
      }
    }
    if (!ok) continue;
    if (apply_limits && !inside_limits(m, joints)) continue;

    const double fscale = residual_scale(m, pose);
    for (int i = 0; i < 3 && ok; ++i)
      ok = std::abs(constraint_residual(m, i, pose, joints[i])) <= fscale;
    if (!ok) continue;

    std::array<double, kNumVars> pt{};
    pt[VX] = pose.x;
    pt[VY] = pose.y;
    pt[VZ] = pose.z;
    for (int i = 0; i < 3; ++i) pt[VR1 + i] = joints[i];
    pt[VL] = m.link_length_d();
    const double det_res =
        std::abs(det_poly.eval(pt)) /
        (det_norm1 *
         std::pow(std::max(1.0, config_norm(pose, joints)), det_deg));
    if (det_res > kResidualTol) continue;

    result.configs.push_back({pose, joints, det_res});
  }
  return result;
}

SampleResult sample_singular(const RobotModel& m, SingKind kind, int n,
                             std::uint64_t seed, bool apply_limits) {
  const Box box{{-2, -2, -2}, {2, 6, 6}};
  return sample_singular(m, kind, n, seed, apply_limits, box);
}

}  // namespace deltakin
