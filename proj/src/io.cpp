#include "deltakin/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace deltakin {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return s.rat.get_str();
  return json{{"rat", s.rat.get_str()}, {"sqrt3", s.sqrt3.get_str()}};
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    auto s = Scalar::parse(j.get<std::string>());
    if (!s) throw std::invalid_argument("bad scalar: " + j.dump());
    return *s;
  }
  if (j.is_object()) {
    Scalar out;
    if (j.contains("rat")) {
      auto r = Scalar::parse(j.at("rat").get<std::string>());
      if (!r || !r->is_rational())
        throw std::invalid_argument("bad scalar rat part: " + j.dump());
      out.rat = r->rat;
    }
    if (j.contains("sqrt3")) {
      auto s = Scalar::parse(j.at("sqrt3").get<std::string>());
      if (!s || !s->is_rational())
        throw std::invalid_argument("bad scalar sqrt3 part: " + j.dump());
      out.sqrt3 = s->rat;
    }
    return out;
  }
  throw std::invalid_argument("bad scalar: " + j.dump());
}

json poly_to_json(const MPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json exp = json::array();
    for (int k = 0; k < kNumVars; ++k) exp.push_back(e[k]);
    terms.push_back(
        {{"exp", exp}, {"rat", c.rat.get_str()}, {"sqrt3", c.sqrt3.get_str()}});
  }
  return json{{"terms", terms}};
}

MPoly poly_from_json(const json& j) {
  std::vector<MPoly::Term> terms;
  for (const auto& t : j.at("terms")) {
    ExpVec e{};
    const auto& exp = t.at("exp");
    if (exp.size() != kNumVars)
      throw std::invalid_argument("polynomial term needs 7 exponents");
    for (int k = 0; k < kNumVars; ++k) e[k] = exp[k].get<std::uint16_t>();
    mpq_class rat(t.at("rat").get<std::string>());
    rat.canonicalize();
    mpq_class s3(t.at("sqrt3").get<std::string>());
    s3.canonicalize();
    terms.push_back({e, Scalar(std::move(rat), std::move(s3))});
  }
  return MPoly::from_terms(std::move(terms));
}

json stats_to_json(const PolyStats& s) {
  return json{{"degree", s.total_degree},
              {"per_var_degrees", s.per_var},
              {"per_var_triple", s.pose_triple ? "x,y,z" : "rho1,rho2,rho3"},
              {"terms", s.num_terms},
              {"bitsize", s.coeff_bitsize}};
}

json robot_to_json(const RobotModel& m) {
  json legs = json::array();
  for (const auto& leg : m.legs) {
    legs.push_back(
        {{"base", {scalar_to_json(leg.base[0]), scalar_to_json(leg.base[1]),
                   scalar_to_json(leg.base[2])}},
         {"axis", {scalar_to_json(leg.axis[0]), scalar_to_json(leg.axis[1]),
                   scalar_to_json(leg.axis[2])}}});
  }
  json limits{{"min", scalar_to_json(m.limits.min)}};
  limits["max"] = m.limits.max ? scalar_to_json(*m.limits.max) : json("2L");
  return json{{"name", m.name},
              {"L", scalar_to_json(m.link_length)},
              {"legs", legs},
              {"limits", limits}};
}

RobotModel robot_from_json(const json& j) {
  RobotModel m;
  m.name = j.at("name").get<std::string>();
  if (j.contains("L")) m.link_length = scalar_from_json(j.at("L"));
  const auto& legs = j.at("legs");
  if (!legs.is_array() || legs.size() != 3)
    throw std::invalid_argument("robot config needs exactly 3 legs");
  for (int i = 0; i < 3; ++i) {
    const auto& leg = legs[i];
    const auto& base = leg.at("base");
    const auto& axis = leg.at("axis");
    if (base.size() != 3 || axis.size() != 3)
      throw std::invalid_argument("leg base/axis need 3 components");
    for (int k = 0; k < 3; ++k) {
      m.legs[i].base[k] = scalar_from_json(base[k]);
      m.legs[i].axis[k] = scalar_from_json(axis[k]);
    }
  }
  if (j.contains("limits")) {
    const auto& lim = j.at("limits");
    if (lim.contains("min")) m.limits.min = scalar_from_json(lim.at("min"));
    if (lim.contains("max")) {
      const auto& mx = lim.at("max");
      if (!(mx.is_string() && mx.get<std::string>() == "2L"))
        m.limits.max = scalar_from_json(mx);
    }
  }
  return m;
}

PaperTarget paper_target(const std::string& robot, SingKind kind,
                         ProjSpace space) {
  // Reference characteristics of the projected singularity polynomials in
  // three variables (degree, per-variable degrees, terms, coefficient
  // bitsize). Parallel values refer to the workspace projection; the serial
  // reference is compared against both spaces.
  auto make = [](int deg, std::array<int, 3> pv, long terms, int bits,
                 bool pose) {
    PaperTarget t;
    t.stats = PolyStats{deg, pv, pose, terms, bits};
    t.available = true;
    return t;
  };
  const bool pose = space == ProjSpace::workspace;
  if (kind == SingKind::parallel) {
    if (space != ProjSpace::workspace) return {};
    if (robot == "orthoglide") return make(18, {10, 10, 10}, 97, 15, pose);
    if (robot == "hybridglide") return make(20, {16, 8, 12}, 119, 17, pose);
    if (robot == "triaglide") return make(3, {0, 0, 3}, 2, 2, pose);
    if (robot == "uranesx") return make(6, {6, 4, 0}, 15, 40, pose);
    return {};
  }
  if (robot == "orthoglide") return make(18, {12, 12, 12}, 62, 12, pose);
  if (robot == "hybridglide") return make(18, {12, 12, 12}, 281, 17, pose);
  if (robot == "triaglide") return make(6, {6, 6, 6}, 42, 7, pose);
  if (robot == "uranesx") return make(12, {12, 12, 12}, 252, 151, pose);
  return {};
}

json surface_report(const RobotModel& m, SingKind kind,
                    const ProjectedSurface& s) {
  json trace = json::array();
  for (const auto& step : s.trace) {
    json e{{"content_removed", step.content_removed},
           {"factor", step.factor},
           {"result_degree", step.result_degree},
           {"result_terms", step.result_terms}};
    if (step.input_reduction) {
      e["step"] = "input_reduction";
    } else if (step.power_reduction) {
      e["step"] = "square_root";
      e["roots_extracted"] = step.deg_g;
    } else {
      e["step"] = std::string("eliminate_") + kVarName[step.eliminated];
      e["skipped"] = step.skipped;
      if (!step.skipped) {
        e["deg_in_var"] = step.deg_g;
        e["pivot_deg_in_var"] = step.deg_f;
        e["sylvester_size"] = step.sylvester_size;
      }
    }
    bool any_mono = false;
    for (int v = 0; v < kNumVars; ++v) any_mono |= step.monomial_removed[v] > 0;
    if (any_mono) {
      json mono;
      for (int v = 0; v < kNumVars; ++v)
        if (step.monomial_removed[v] > 0)
          mono[kVarName[v]] = step.monomial_removed[v];
      e["monomial_removed"] = mono;
    }
    trace.push_back(e);
  }

  json report{
      {"robot", m.name},
      {"kind", to_string(kind)},
      {"space", to_string(s.space)},
      {"L", scalar_to_json(m.link_length)},
      {"polynomial", s.poly.text()},
      {"polynomial_json", poly_to_json(s.poly)},
      {"stats", stats_to_json(s.stats)},
      {"trace", trace},
      {"note",
       "bitsize is the maximum bit length over the integer coefficient parts "
       "after clearing denominators"},
  };

  const PaperTarget target = paper_target(m.name, kind, s.space);
  if (target.available) {
    report["reference"] = stats_to_json(target.stats);
    report["match"] = json{
        {"degree", target.stats.total_degree == s.stats.total_degree},
        {"per_var_degrees", target.stats.per_var == s.stats.per_var},
        {"terms", target.stats.num_terms == s.stats.num_terms},
        {"bitsize", target.stats.coeff_bitsize == s.stats.coeff_bitsize},
    };
  } else {
    report["reference"] = nullptr;
    report["match"] = nullptr;
  }
  return report;
}

void write_grid_csv(const ClassifiedGrid& g, std::ostream& os) {
  os << "x,y,z,label\n";
  for (int k = 0; k < g.res[2]; ++k) {
    for (int j = 0; j < g.res[1]; ++j) {
      for (int i = 0; i < g.res[0]; ++i) {
        const Vec3 c = g.center(i, j, k);
        os << format_double(c.x) << ',' << format_double(c.y) << ','
           << format_double(c.z) << ','
           << static_cast<int>(g.labels[g.index(i, j, k)]) << '\n';
      }
    }
  }
}

std::vector<CsvRow> read_grid_csv(std::istream& is) {
  std::vector<CsvRow> rows;
  std::string line;
  if (!std::getline(is, line)) return rows;  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    CsvRow r{};
    std::istringstream ss(line);
    std::string field;
    double* cols[3] = {&r.x, &r.y, &r.z};
    for (auto* col : cols) {
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("bad CSV row");
      *col = std::stod(field);
    }
    if (!std::getline(ss, field, ',')) throw std::invalid_argument("bad CSV row");
    r.label = std::stoi(field);
    rows.push_back(r);
  }
  return rows;
}

std::array<int, 3> label_color(int label) {
  switch (label) {
    case 1: return {0, 0, 255};    // blue
    case 2: return {255, 0, 0};    // red
    case 4: return {255, 255, 0};  // yellow
    case 8: return {0, 255, 0};    // green
    default: return {128, 128, 128};
  }
}

int color_label(const std::array<int, 3>& rgb) {
  for (int label : {1, 2, 4, 8}) {
    if (label_color(label) == rgb) return label;
  }
  return -1;
}

void write_grid_ply(const ClassifiedGrid& g, std::ostream& os) {
  long count = 0;
  for (std::uint8_t l : g.labels) count += l != 0;
  os << "ply\nformat ascii 1.0\n"
     << "element vertex " << count << "\n"
     << "property float x\nproperty float y\nproperty float z\n"
     << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
     << "end_header\n";
  for (int k = 0; k < g.res[2]; ++k) {
    for (int j = 0; j < g.res[1]; ++j) {
      for (int i = 0; i < g.res[0]; ++i) {
        const int label = g.labels[g.index(i, j, k)];
        if (label == 0) continue;
        const Vec3 c = g.center(i, j, k);
        const auto rgb = label_color(label);
        os << format_double(c.x) << ' ' << format_double(c.y) << ' '
           << format_double(c.z) << ' ' << rgb[0] << ' ' << rgb[1] << ' '
           << rgb[2] << '\n';
      }
    }
  }
}

std::vector<PlyVertex> read_ply(std::istream& is) {
  std::string line;
  long count = -1;
  while (std::getline(is, line)) {
    if (line.rfind("element vertex ", 0) == 0)
      count = std::stol(line.substr(15));
    if (line == "end_header") break;
  }
  if (count < 0) throw std::invalid_argument("not a PLY point cloud");
  std::vector<PlyVertex> verts;
  verts.reserve(count);
  for (long n = 0; n < count; ++n) {
    if (!std::getline(is, line)) throw std::invalid_argument("truncated PLY");
    std::istringstream ss(line);
    PlyVertex v{};
    ss >> v.x >> v.y >> v.z >> v.r >> v.g >> v.b;
    if (!ss) throw std::invalid_argument("bad PLY vertex");
    verts.push_back(v);
  }
  return verts;
}

void write_grid_vtk(const ClassifiedGrid& g, std::ostream& os) {
  const Vec3 origin = g.center(0, 0, 0);
  const double sx = (g.box.max.x - g.box.min.x) / g.res[0];
  const double sy = (g.box.max.y - g.box.min.y) / g.res[1];
  const double sz = (g.box.max.z - g.box.min.z) / g.res[2];
  os << "# vtk DataFile Version 3.0\n"
     << "solution count grid\n"
     << "ASCII\n"
     << "DATASET STRUCTURED_POINTS\n"
     << "DIMENSIONS " << g.res[0] << ' ' << g.res[1] << ' ' << g.res[2] << "\n"
     << "ORIGIN " << format_double(origin.x) << ' ' << format_double(origin.y)
     << ' ' << format_double(origin.z) << "\n"
     << "SPACING " << format_double(sx) << ' ' << format_double(sy) << ' '
     << format_double(sz) << "\n"
     << "POINT_DATA " << g.cell_count() << "\n"
     << "SCALARS label int 1\n"
     << "LOOKUP_TABLE default\n";
  for (long idx = 0; idx < g.cell_count(); ++idx)
    os << static_cast<int>(g.labels[idx]) << '\n';
}

json summary_to_json(const RegionSummary& s) {
  json counts, fractions, components;
  for (const auto& [label, c] : s.cell_counts) counts[std::to_string(label)] = c;
  for (const auto& [label, f] : s.volume_fraction)
    fractions[std::to_string(label)] = f;
  for (const auto& [label, c] : s.components)
    components[std::to_string(label)] = c;
  return json{{"total_cells", s.total_cells},
              {"cell_counts", counts},
              {"volume_fractions", fractions},
              {"connected_components", components},
              {"degenerate_cells", s.degenerate_cells},
              {"classification",
               "solution count sampled at cell centers (not a certified "
               "per-cell decomposition)"}};
}

void atomic_write(const std::string& path,
                  const std::function<void(std::ostream&)>& writer) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
    writer(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace deltakin
