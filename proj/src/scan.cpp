#include "deltakin/scan.hpp"

#include <stdexcept>
#include <thread>

namespace deltakin {

Box default_workspace_box() { return {{-2, -2, -2}, {2, 6, 6}}; }

Box default_jointspace_box(const RobotModel& m) {
  auto [lo, hi] = m.limit_interval();
  return {{lo, lo, lo}, {hi, hi, hi}};
}

Vec3 ClassifiedGrid::center(int i, int j, int k) const {
  const double sx = (box.max.x - box.min.x) / res[0];
  const double sy = (box.max.y - box.min.y) / res[1];
  const double sz = (box.max.z - box.min.z) / res[2];
  return {box.min.x + (i + 0.5) * sx, box.min.y + (j + 0.5) * sy,
          box.min.z + (k + 0.5) * sz};
}

namespace {

void check_scan_args(const Box& box, const Res3& res) {
  if (!box.valid()) throw std::invalid_argument("scan: box min must be < max");
  for (int r : res) {
    if (r < 2) throw std::invalid_argument("scan: resolution must be >= 2 per axis");
  }
}

template <typename CellFn>
void fill_grid(ClassifiedGrid& g, int workers, CellFn&& cell) {
  const int nz = g.res[2];
  workers = std::max(1, std::min(workers, nz));
  auto run_slab = [&](int k0, int k1) {
    for (int k = k0; k < k1; ++k)
      for (int j = 0; j < g.res[1]; ++j)
        for (int i = 0; i < g.res[0]; ++i) cell(i, j, k);
  };
  if (workers == 1) {
    run_slab(0, nz);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int k0 = static_cast<int>(static_cast<long>(nz) * w / workers);
    const int k1 = static_cast<int>(static_cast<long>(nz) * (w + 1) / workers);
    pool.emplace_back(run_slab, k0, k1);
  }
  for (auto& t : pool) t.join();
}

}  // namespace

ClassifiedGrid scan_workspace(const RobotModel& m, const Box& box,
                              const Res3& res, bool apply_limits, int workers) {
  check_scan_args(box, res);
  ClassifiedGrid g;
  g.box = box;
  g.res = res;
  g.space = ProjSpace::workspace;
  g.limits_applied = apply_limits;
  g.labels.assign(g.cell_count(), 0);
  fill_grid(g, workers, [&](int i, int j, int k) {
    g.labels[g.index(i, j, k)] = static_cast<std::uint8_t>(
        count_ik(m, g.center(i, j, k), apply_limits));
  });
  return g;
}

ClassifiedGrid scan_jointspace(const RobotModel& m, const Box& box,
                               const Res3& res, int workers) {
  check_scan_args(box, res);
  ClassifiedGrid g;
  g.box = box;
  g.res = res;
  g.space = ProjSpace::jointspace;
  // Joint values are inputs here, not outputs to filter; solution counting
  // is purely geometric.
  g.limits_applied = false;
  g.labels.assign(g.cell_count(), 0);
  g.degenerate.assign(g.cell_count(), 0);
  fill_grid(g, workers, [&](int i, int j, int k) {
    const Vec3 c = g.center(i, j, k);
    const DkSolutionSet s = dk(m, {c.x, c.y, c.z}, /*apply_limits=*/false);
    const long idx = g.index(i, j, k);
    g.labels[idx] = s.degenerate ? 0 : static_cast<std::uint8_t>(s.count());
    g.degenerate[idx] = s.degenerate ? 1 : 0;
  });
  return g;
}

std::vector<BoundaryFace> extract_boundary(const ClassifiedGrid& g) {
  std::vector<BoundaryFace> faces;
  const int nx = g.res[0], ny = g.res[1], nz = g.res[2];
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::uint8_t a = g.labels[g.index(i, j, k)];
        if (i + 1 < nx) {
          const std::uint8_t b = g.labels[g.index(i + 1, j, k)];
          if (a != b) faces.push_back({{i, j, k}, 0, a, b});
        }
        if (j + 1 < ny) {
          const std::uint8_t b = g.labels[g.index(i, j + 1, k)];
          if (a != b) faces.push_back({{i, j, k}, 1, a, b});
        }
        if (k + 1 < nz) {
          const std::uint8_t b = g.labels[g.index(i, j, k + 1)];
          if (a != b) faces.push_back({{i, j, k}, 2, a, b});
        }
      }
    }
  }
  return faces;
}

RegionSummary region_summary(const ClassifiedGrid& g) {
  RegionSummary s;
  s.total_cells = g.cell_count();
  for (std::uint8_t l : g.labels) ++s.cell_counts[l];
  for (const auto& [label, count] : s.cell_counts)
    s.volume_fraction[label] =
        static_cast<double>(count) / static_cast<double>(s.total_cells);
  for (std::uint8_t d : g.degenerate) s.degenerate_cells += d;

  // Connected components per label over the 6-neighborhood, which matches
  // the face adjacency used by extract_boundary.
  std::vector<std::uint8_t> seen(g.labels.size(), 0);
  std::vector<long> stack;
  const int nx = g.res[0], ny = g.res[1], nz = g.res[2];
  for (long start = 0; start < static_cast<long>(g.labels.size()); ++start) {
    if (seen[start]) continue;
    const std::uint8_t label = g.labels[start];
    ++s.components[label];
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const long cur = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(cur % nx);
      const int j = static_cast<int>((cur / nx) % ny);
      const int k = static_cast<int>(cur / (static_cast<long>(nx) * ny));
      const int di[6] = {1, -1, 0, 0, 0, 0};
      const int dj[6] = {0, 0, 1, -1, 0, 0};
      const int dk[6] = {0, 0, 0, 0, 1, -1};
      for (int t = 0; t < 6; ++t) {
        const int ni = i + di[t], nj = j + dj[t], nk = k + dk[t];
        if (ni < 0 || nj < 0 || nk < 0 || ni >= nx || nj >= ny || nk >= nz)
          continue;
        const long nidx = g.index(ni, nj, nk);
        if (!seen[nidx] && g.labels[nidx] == label) {
          seen[nidx] = 1;
          stack.push_back(nidx);
        }
      }
    }
  }
  return s;
}

}  // namespace deltakin
