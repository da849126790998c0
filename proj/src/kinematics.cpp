#include "deltakin/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace deltakin {

namespace {

// Roots of rho^2 - 2*mid*rho + c0 with a tangency band on the discriminant.
std::vector<double> monic_quadratic_roots(double mid, double c0) {
  const double disc = mid * mid - c0;
  const double scale = 1.0 + mid * mid + std::abs(c0);
  if (std::abs(disc) <= kTangencyEps * scale) return {mid};
  if (disc < 0) return {};
  const double root = std::sqrt(disc);
  // Stable evaluation: compute the larger-magnitude root first and recover
  // the other from the product of roots.
  if (mid >= 0) {
    const double hi = mid + root;
    return {hi, hi != 0.0 ? c0 / hi : mid - root};
  }
  const double lo = mid - root;
  return {lo != 0.0 ? c0 / lo : mid + root, lo};
}

}  // namespace

std::vector<double> ik_leg(const RobotModel& m, int leg, const Vec3& pose) {
  const LegSpec& spec = m.legs.at(static_cast<size_t>(leg));
  const Vec3 rel = pose - spec.base_d();
  const double mid = dot(spec.axis_d(), rel);
  const double L = m.link_length_d();
  const double c0 = norm2(rel) - L * L;
  return monic_quadratic_roots(mid, c0);
}

IkSolutionSet ik(const RobotModel& m, const Vec3& pose, bool apply_limits) {
  IkSolutionSet out;
  out.pose = pose;
  out.limits_applied = apply_limits;

  std::array<std::vector<double>, 3> roots;
  for (int i = 0; i < 3; ++i) {
    roots[i] = ik_leg(m, i, pose);
    if (apply_limits) {
      auto [lo, hi] = m.limit_interval();
      const double margin = 1e-9 * (1.0 + hi - lo);
      std::erase_if(roots[i], [&](double r) {
        return r <= lo + margin || r >= hi - margin;
      });
    }
    out.per_leg_root_counts[i] = static_cast<int>(roots[i].size());
  }

  if (roots[0].empty() || roots[1].empty() || roots[2].empty()) return out;
  for (double r1 : roots[0])
    for (double r2 : roots[1])
      for (double r3 : roots[2]) out.solutions.push_back({r1, r2, r3});
  return out;
}

DkSolutionSet dk(const RobotModel& m, const Joints& joints, bool apply_limits) {
  DkSolutionSet out;
  out.joints = joints;

  if (apply_limits) {
    auto [lo, hi] = m.limit_interval();
    const double margin = 1e-9 * (1.0 + hi - lo);
    for (double rho : joints) {
      if (rho <= lo + margin || rho >= hi - margin) return out;
    }
  }

  Vec3 centers[3];
  for (int i = 0; i < 3; ++i)
    centers[i] = m.legs[i].base_d() + joints[i] * m.legs[i].axis_d();

  // Radical planes of f1 - f3 and f2 - f3: n . P = d.
  Vec3 n[2];
  double d[2];
  for (int i = 0; i < 2; ++i) {
    n[i] = 2.0 * (centers[i] - centers[2]);
    d[i] = norm2(centers[i]) - norm2(centers[2]);
  }

  const Vec3 line_dir = cross(n[0], n[1]);
  const double nn = norm(n[0]) * norm(n[1]);
  if (norm(line_dir) <= 1e-12 * std::max(nn, 1e-300)) {
    out.degenerate = true;  // parallel planes: distinct or coincident
    return out;
  }

  // Point on the line: solve [n0; n1; dir] P0 = [d0; d1; 0] by Cramer.
  const double det = dot(line_dir, line_dir);
  const Vec3 p0 =
      (1.0 / det) * (d[0] * cross(n[1], line_dir) + d[1] * cross(line_dir, n[0]));

  // Substitute P0 + t*dir into f3.
  const Vec3 w = p0 - centers[2];
  const double L = m.link_length_d();
  const double qa = det;
  const double qb = 2.0 * dot(line_dir, w);
  const double qc = norm2(w) - L * L;
  const double disc = qb * qb - 4.0 * qa * qc;
  const double scale = qb * qb + std::abs(4.0 * qa * qc) + qa * qa;
  if (std::abs(disc) <= kTangencyEps * scale) {
    out.solutions.push_back(p0 + (-qb / (2.0 * qa)) * line_dir);
  } else if (disc > 0) {
    const double root = std::sqrt(disc);
    const double t1 = (-qb + root) / (2.0 * qa);
    const double t2 = (-qb - root) / (2.0 * qa);
    out.solutions.push_back(p0 + t1 * line_dir);
    out.solutions.push_back(p0 + t2 * line_dir);
  }
  return out;
}

int count_ik(const RobotModel& m, const Vec3& pose, bool apply_limits) {
  return ik(m, pose, apply_limits).count();
}

int count_dk(const RobotModel& m, const Joints& joints, bool apply_limits) {
  DkSolutionSet s = dk(m, joints, apply_limits);
  return s.degenerate ? 0 : s.count();
}

double residual_scale(const RobotModel& m, const Vec3& pose) {
  const double L = m.link_length_d();
  return 1e-9 * (1.0 + norm2(pose) + L * L);
}

double constraint_residual(const RobotModel& m, int leg, const Vec3& pose,
                           double rho) {
  const LegSpec& spec = m.legs.at(static_cast<size_t>(leg));
  const Vec3 anchor = spec.base_d() + rho * spec.axis_d();
  const double L = m.link_length_d();
  return norm2(pose - anchor) - L * L;
}

}  // namespace deltakin
