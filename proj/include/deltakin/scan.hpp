#ifndef DELTAKIN_SCAN_HPP
#define DELTAKIN_SCAN_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "deltakin/geometry.hpp"
#include "deltakin/kinematics.hpp"
#include "deltakin/robot.hpp"
#include "deltakin/singularity.hpp"

namespace deltakin {

using Res3 = std::array<int, 3>;

/// The scan window conventionally used for workspace comparisons:
/// x in [-2,2], y in [-2,6], z in [-2,6].
Box default_workspace_box();

/// (0, 2L)^3 from the joint limits.
Box default_jointspace_box(const RobotModel& m);

/// Dense cell-center classification of a box. Labels are the solution count
/// at each cell center: {0,1,2,4,8} for workspace grids, {0,1,2} for joint
/// space grids (degenerate direct kinematics labels 0 and sets a flag).
/// Cells are indexed x-fastest: index = i + nx*(j + ny*k).
struct ClassifiedGrid {
  Box box;
  Res3 res{0, 0, 0};
  ProjSpace space = ProjSpace::workspace;
  bool limits_applied = true;
  std::vector<std::uint8_t> labels;
  std::vector<std::uint8_t> degenerate;  // jointspace only, else empty

  long cell_count() const {
    return static_cast<long>(res[0]) * res[1] * res[2];
  }
  long index(int i, int j, int k) const {
    return i + static_cast<long>(res[0]) * (j + static_cast<long>(res[1]) * k);
  }
  Vec3 center(int i, int j, int k) const;
};

/// Labels every cell center with count_ik. Deterministic and bit-identical
/// for any worker count (workers fill disjoint z-slabs of the same array).
ClassifiedGrid scan_workspace(const RobotModel& m, const Box& box,
                              const Res3& res, bool apply_limits = true,
                              int workers = 1);

/// Labels every cell center with count_dk (nondegenerate roots only).
ClassifiedGrid scan_jointspace(const RobotModel& m, const Box& box,
                               const Res3& res, int workers = 1);

/// Interior face between two cells whose labels differ. `cell` is the lower
/// cell, `axis` the direction towards its neighbor.
struct BoundaryFace {
  std::array<int, 3> cell;
  int axis;
  std::uint8_t label_a, label_b;
};

std::vector<BoundaryFace> extract_boundary(const ClassifiedGrid& g);

struct RegionSummary {
  std::map<int, long> cell_counts;       // label -> cells
  std::map<int, double> volume_fraction; // label -> cells / total
  std::map<int, int> components;         // label -> 6-neighborhood components
  long degenerate_cells = 0;
  long total_cells = 0;
};

RegionSummary region_summary(const ClassifiedGrid& g);

}  // namespace deltakin

#endif
