#ifndef DELTAKIN_IO_HPP
#define DELTAKIN_IO_HPP

#include <functional>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "deltakin/mpoly.hpp"
#include "deltakin/robot.hpp"
#include "deltakin/scan.hpp"
#include "deltakin/singularity.hpp"

namespace deltakin {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// --- scalars -------------------------------------------------------------

/// "p/q" for rationals, {"rat":"p/q","sqrt3":"r/s"} otherwise.
nlohmann::json scalar_to_json(const Scalar& s);
/// Accepts a JSON integer, a "p/q" string or a {"rat","sqrt3"} object.
Scalar scalar_from_json(const nlohmann::json& j);

// --- polynomials ---------------------------------------------------------

/// {"terms":[{"exp":[7 ints],"rat":"p/q","sqrt3":"r/s"}, ...]} with terms in
/// the canonical order.
nlohmann::json poly_to_json(const MPoly& p);
MPoly poly_from_json(const nlohmann::json& j);

nlohmann::json stats_to_json(const PolyStats& s);

// --- robot configuration -------------------------------------------------

nlohmann::json robot_to_json(const RobotModel& m);
/// Throws std::invalid_argument on schema violations.
RobotModel robot_from_json(const nlohmann::json& j);

// --- projected surfaces --------------------------------------------------

struct PaperTarget {
  PolyStats stats;
  bool available = false;
};

/// Reported reference values for the builtin singularity projections, when
/// the literature provides them for that robot/kind.
PaperTarget paper_target(const std::string& robot, SingKind kind,
                         ProjSpace space);

/// Full report: polynomial (text + JSON), computed stats, the reference
/// stats with per-field match flags when available, and the elimination
/// trace.
nlohmann::json surface_report(const RobotModel& m, SingKind kind,
                              const ProjectedSurface& s);

// --- classified grids ----------------------------------------------------

void write_grid_csv(const ClassifiedGrid& g, std::ostream& os);
void write_grid_ply(const ClassifiedGrid& g, std::ostream& os);
void write_grid_vtk(const ClassifiedGrid& g, std::ostream& os);
nlohmann::json summary_to_json(const RegionSummary& s);

struct CsvRow {
  double x, y, z;
  int label;
};
/// Parses the CSV form written by write_grid_csv.
std::vector<CsvRow> read_grid_csv(std::istream& is);

struct PlyVertex {
  double x, y, z;
  int r, g, b;
};
std::vector<PlyVertex> read_ply(std::istream& is);

/// Solution-count color mapping: 1 blue, 2 red, 4 yellow, 8 green.
std::array<int, 3> label_color(int label);
int color_label(const std::array<int, 3>& rgb);

// --- files ---------------------------------------------------------------

/// Writes via a temp file in the same directory and renames into place.
void atomic_write(const std::string& path,
                  const std::function<void(std::ostream&)>& writer);

}  // namespace deltakin

#endif
