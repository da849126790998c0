#include "deltakin/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "deltakin/io.hpp"
#include "deltakin/kinematics.hpp"
#include "deltakin/robot.hpp"
#include "deltakin/scan.hpp"
#include "deltakin/singularity.hpp"

namespace deltakin {

using nlohmann::json;

namespace {

std::array<double, 3> parse_triple(const std::string& text, const char* what) {
  std::array<double, 3> out{};
  std::istringstream ss(text);
  std::string field;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, field, ','))
      throw std::invalid_argument(std::string("bad ") + what + ": " + text);
    try {
      out[i] = std::stod(field);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + ": " + text);
    }
  }
  if (std::getline(ss, field, ','))
    throw std::invalid_argument(std::string("bad ") + what + ": " + text);
  return out;
}

Box parse_box(const std::string& text) {
  // xmin:xmax,ymin:ymax,zmin:zmax
  Box box;
  std::istringstream ss(text);
  std::string field;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, field, ':'))
      throw std::invalid_argument("bad --box: " + text);
    box.min[i] = std::stod(field);
    const char sep = i < 2 ? ',' : '\0';
    if (!std::getline(ss, field, sep))
      throw std::invalid_argument("bad --box: " + text);
    box.max[i] = std::stod(field);
  }
  if (!box.valid()) throw std::invalid_argument("bad --box (min >= max): " + text);
  return box;
}

Res3 parse_res(const std::string& text) {
  Res3 res{};
  std::istringstream ss(text);
  std::string field;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, field, 'x'))
      throw std::invalid_argument("bad --res: " + text);
    res[i] = std::stoi(field);
  }
  return res;
}

json joints_json(const Joints& j) {
  return json::array({j[0], j[1], j[2]});
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

struct Cli::State {
  CLI::App app{"Exact kinematics, singularity and workspace analysis for "
               "delta-like parallel robots",
               "deltakin"};

  // Option storage shared by the model-taking subcommands.
  struct ModelArgs {
    std::string model, config, L;
  };
  ModelArgs m_ik, m_dk, m_det, m_proj, m_samp, m_scan;

  std::string ik_pose, dk_joints;
  bool ik_no_limits = false, dk_no_limits = false, samp_no_limits = false,
       scan_no_limits = false;
  std::string out_models, out_ik, out_dk, out_det, out_proj, out_samp, out_scan;
  std::string fmt_ik = "json", fmt_dk = "json", fmt_det = "text",
              fmt_proj = "json", fmt_samp = "json", fmt_scan = "csv";
  std::string det_space = "parallel";
  std::string proj_kind = "parallel", proj_space = "workspace";
  std::string samp_kind = "parallel";
  int samp_count = 50;
  std::uint64_t samp_seed = 0;
  std::string samp_box, scan_box;
  std::string scan_space = "workspace", scan_res = "33x33x33";
  int scan_workers = 1;

  std::ostream* out = &std::cout;
  int exit_code = 0;

  State() { build(); }

  void build() {
    app.require_subcommand(1);

    auto add_model_opts = [](CLI::App* cmd, ModelArgs& args) {
      auto* model = cmd->add_option("--model", args.model,
                                    "Builtin model name (orthoglide, "
                                    "hybridglide, triaglide, uranesx)");
      auto* config =
          cmd->add_option("--config", args.config, "Robot config JSON file");
      model->excludes(config);
      config->excludes(model);
      cmd->add_option("--L", args.L,
                      "Numeric link length (exact: 2, 3/2, 1.5); default 2");
    };

    CLI::App* models =
        app.add_subcommand("models", "List the builtin robot models");
    models->add_option("--out", out_models, "Output file (default stdout)");
    models->callback([this] { run_models(); });

    CLI::App* ik_cmd =
        app.add_subcommand("ik", "Inverse kinematics for one pose");
    add_model_opts(ik_cmd, m_ik);
    ik_cmd->add_option("--pose", ik_pose, "Pose x,y,z")->required();
    ik_cmd->add_flag("--no-limits", ik_no_limits, "Do not filter joint limits");
    ik_cmd->add_option("--out", out_ik, "Output file (default stdout)");
    ik_cmd->add_option("--format", fmt_ik, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    ik_cmd->callback([this] { run_ik(); });

    CLI::App* dk_cmd =
        app.add_subcommand("dk", "Direct kinematics for one joint triple");
    add_model_opts(dk_cmd, m_dk);
    dk_cmd->add_option("--joints", dk_joints, "Joint values rho1,rho2,rho3")
        ->required();
    dk_cmd->add_flag("--no-limits", dk_no_limits,
                     "Accept joints outside the limit interval");
    dk_cmd->add_option("--out", out_dk, "Output file (default stdout)");
    dk_cmd->add_option("--format", fmt_dk, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    dk_cmd->callback([this] { run_dk(); });

    CLI::App* sing =
        app.add_subcommand("sing", "Singularity polynomials and sampling");
    sing->require_subcommand(1);

    CLI::App* det = sing->add_subcommand(
        "det", "Determinant of the parallel or serial Jacobian");
    add_model_opts(det, m_det);
    det->add_option("--space", det_space, "parallel or serial")
        ->check(CLI::IsMember({"parallel", "serial"}));
    det->add_option("--out", out_det, "Output file (default stdout)");
    det->add_option("--format", fmt_det, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    det->callback([this] { run_det(); });

    CLI::App* proj = sing->add_subcommand(
        "project", "Eliminate variables from a singularity determinant");
    add_model_opts(proj, m_proj);
    proj->add_option("--kind", proj_kind, "parallel or serial")
        ->check(CLI::IsMember({"parallel", "serial"}));
    proj->add_option("--space", proj_space, "workspace or jointspace")
        ->check(CLI::IsMember({"workspace", "jointspace"}));
    proj->add_option("--out", out_proj, "Output file (default stdout)");
    proj->add_option("--format", fmt_proj, "json (full report) or text")
        ->check(CLI::IsMember({"json", "text"}));
    proj->callback([this] { run_project(); });

    CLI::App* samp = sing->add_subcommand(
        "sample", "Sample configurations on a singularity surface");
    add_model_opts(samp, m_samp);
    samp->add_option("--kind", samp_kind, "parallel or serial")
        ->check(CLI::IsMember({"parallel", "serial"}));
    samp->add_option("-n,--count", samp_count, "Number of configurations");
    samp->add_option("--seed", samp_seed, "Random seed");
    samp->add_flag("--no-limits", samp_no_limits,
                   "Allow joints outside the limit interval");
    samp->add_option("--box", samp_box,
                     "Pose sampling box xmin:xmax,ymin:ymax,zmin:zmax");
    samp->add_option("--out", out_samp, "Output file (default stdout)");
    samp->add_option("--format", fmt_samp, "json")
        ->check(CLI::IsMember({"json"}));
    samp->callback([this] { run_sample(); });

    CLI::App* scan_cmd = app.add_subcommand(
        "scan", "Classify a grid by solution count");
    add_model_opts(scan_cmd, m_scan);
    scan_cmd->add_option("--space", scan_space, "workspace or jointspace")
        ->check(CLI::IsMember({"workspace", "jointspace"}));
    scan_cmd->add_option("--box", scan_box,
                         "Grid box xmin:xmax,ymin:ymax,zmin:zmax");
    scan_cmd->add_option("--res", scan_res, "Grid resolution NxNxN");
    scan_cmd->add_flag("--no-limits", scan_no_limits,
                       "Count IK solutions without joint limits");
    scan_cmd->add_option("--workers", scan_workers, "Worker threads");
    scan_cmd->add_option("--out", out_scan, "Output file (default stdout)");
    scan_cmd->add_option("--format", fmt_scan, "csv, ply, vtk or json summary")
        ->check(CLI::IsMember({"csv", "ply", "vtk", "json"}));
    scan_cmd->callback([this] { run_scan(); });
  }

  RobotModel load_model(const ModelArgs& args) const {
    if (args.model.empty() && args.config.empty())
      throw std::invalid_argument("a model source is required: --model or --config");
    RobotModel m;
    if (!args.model.empty()) {
      m = builtin_model(args.model);
    } else {
      std::ifstream is(args.config);
      if (!is) throw std::invalid_argument("cannot read config: " + args.config);
      json j;
      try {
        is >> j;
        m = robot_from_json(j);
      } catch (const json::exception& e) {
        throw std::invalid_argument("unreadable config " + args.config + ": " +
                                    e.what());
      }
    }
    if (!args.L.empty()) {
      auto L = Scalar::parse(args.L);
      if (!L) throw std::invalid_argument("bad --L value: " + args.L);
      m.link_length = *L;
    }
    const auto violations = validate_model(m);
    if (!violations.empty()) {
      std::string msg = "invalid model:";
      for (const auto& v : violations) msg += " " + v + ";";
      throw std::domain_error(msg);
    }
    return m;
  }

  void emit(const std::string& path,
            const std::function<void(std::ostream&)>& writer) const {
    if (path.empty()) {
      writer(*out);
    } else {
      atomic_write(path, writer);
    }
  }

  void run_models() const {
    emit(out_models, [&](std::ostream& os) {
      for (const char* name : kBuiltinNames) {
        const RobotModel m = builtin_model(name);
        os << m.name << "\n";
        os << "  L = " << m.link_length.str() << " (default), limits (0, 2L)\n";
        for (int i = 0; i < 3; ++i) {
          const auto& leg = m.legs[i];
          os << "  leg " << i + 1 << ": base (" << leg.base[0].str() << ", "
             << leg.base[1].str() << ", " << leg.base[2].str() << ")  axis ("
             << leg.axis[0].str() << ", " << leg.axis[1].str() << ", "
             << leg.axis[2].str() << ")\n";
        }
      }
    });
  }

  void run_ik() const {
    const RobotModel m = load_model(m_ik);
    const auto p = parse_triple(ik_pose, "--pose");
    const IkSolutionSet s = ik(m, {p[0], p[1], p[2]}, !ik_no_limits);
    emit(out_ik, [&](std::ostream& os) {
      if (fmt_ik == "text") {
        os << s.count() << " solution(s)\n";
        for (const auto& sol : s.solutions)
          os << format_double(sol[0]) << ' ' << format_double(sol[1]) << ' '
             << format_double(sol[2]) << '\n';
        return;
      }
      json out_json{{"pose", vec_json(s.pose)},
                    {"count", s.count()},
                    {"per_leg_root_counts", s.per_leg_root_counts},
                    {"limits_applied", s.limits_applied},
                    {"solutions", json::array()}};
      for (const auto& sol : s.solutions)
        out_json["solutions"].push_back(joints_json(sol));
      os << out_json.dump(2) << "\n";
    });
  }

  void run_dk() const {
    const RobotModel m = load_model(m_dk);
    const auto j = parse_triple(dk_joints, "--joints");
    const DkSolutionSet s = dk(m, {j[0], j[1], j[2]}, !dk_no_limits);
    emit(out_dk, [&](std::ostream& os) {
      if (fmt_dk == "text") {
        os << s.count() << " solution(s)" << (s.degenerate ? " (degenerate)" : "")
           << "\n";
        for (const auto& sol : s.solutions)
          os << format_double(sol.x) << ' ' << format_double(sol.y) << ' '
             << format_double(sol.z) << '\n';
        return;
      }
      json out_json{{"joints", joints_json(s.joints)},
                    {"count", s.count()},
                    {"degenerate", s.degenerate},
                    {"solutions", json::array()}};
      for (const auto& sol : s.solutions)
        out_json["solutions"].push_back(vec_json(sol));
      os << out_json.dump(2) << "\n";
    });
  }

  void run_det() const {
    const RobotModel m = load_model(m_det);
    const MPoly g =
        det_space == "parallel" ? parallel_det(m) : serial_det(m);
    emit(out_det, [&](std::ostream& os) {
      if (fmt_det == "text") {
        os << g.text() << "\n";
        return;
      }
      json out_json{{"robot", m.name},
                    {"kind", det_space},
                    {"polynomial", g.text()},
                    {"polynomial_json", poly_to_json(g)},
                    {"stats", stats_to_json(poly_stats(g))}};
      os << out_json.dump(2) << "\n";
    });
  }

  void run_project() const {
    const RobotModel m = load_model(m_proj);
    const SingKind kind =
        proj_kind == "parallel" ? SingKind::parallel : SingKind::serial;
    const MPoly g =
        kind == SingKind::parallel ? parallel_det(m) : serial_det(m);
    const ProjSpace space = proj_space == "workspace" ? ProjSpace::workspace
                                                      : ProjSpace::jointspace;
    const ProjectedSurface s = project(m, g, space);
    emit(out_proj, [&](std::ostream& os) {
      if (fmt_proj == "text") {
        os << s.poly.text() << "\n";
        return;
      }
      os << surface_report(m, kind, s).dump(2) << "\n";
    });
  }

  void run_sample() {
    const RobotModel m = load_model(m_samp);
    const SingKind kind =
        samp_kind == "parallel" ? SingKind::parallel : SingKind::serial;
    const Box box =
        samp_box.empty() ? default_workspace_box() : parse_box(samp_box);
    if (samp_count < 1) throw std::invalid_argument("--count must be >= 1");
    const SampleResult result =
        sample_singular(m, kind, samp_count, samp_seed, !samp_no_limits, box);
    emit(out_samp, [&](std::ostream& os) {
      json configs = json::array();
      for (const auto& c : result.configs) {
        configs.push_back({{"pose", vec_json(c.pose)},
                           {"joints", joints_json(c.joints)},
                           {"det_residual", c.det_residual}});
      }
      json out_json{{"robot", m.name},
                    {"kind", samp_kind},
                    {"requested", result.requested},
                    {"found", static_cast<int>(result.configs.size())},
                    {"attempts", result.attempts},
                    {"configs", configs}};
      os << out_json.dump(2) << "\n";
    });
    if (!result.complete()) exit_code = 1;
  }

  void run_scan() const {
    const RobotModel m = load_model(m_scan);
    const Res3 res = parse_res(scan_res);
    ClassifiedGrid grid;
    if (scan_space == "workspace") {
      const Box box =
          scan_box.empty() ? default_workspace_box() : parse_box(scan_box);
      grid = scan_workspace(m, box, res, !scan_no_limits, scan_workers);
    } else {
      const Box box =
          scan_box.empty() ? default_jointspace_box(m) : parse_box(scan_box);
      grid = scan_jointspace(m, box, res, scan_workers);
    }
    emit(out_scan, [&](std::ostream& os) {
      if (fmt_scan == "csv") {
        write_grid_csv(grid, os);
      } else if (fmt_scan == "ply") {
        write_grid_ply(grid, os);
      } else if (fmt_scan == "vtk") {
        write_grid_vtk(grid, os);
      } else {
        os << summary_to_json(region_summary(grid)).dump(2) << "\n";
      }
    });
  }
};

Cli::Cli() : state_(std::make_unique<State>()) {}
Cli::~Cli() = default;

CLI::App& Cli::app() { return state_->app; }

int Cli::run(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  state_->out = &out;
  state_->exit_code = 0;
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("deltakin");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    state_->app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return state_->app.exit(e, out, err);  // prints contextual help, exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return state_->app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return state_->exit_code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Cli cli;
  return cli.run(args, out, err);
}

}  // namespace deltakin
