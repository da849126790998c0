#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "deltakin/cli.hpp"

using deltakin::Cli;
using deltakin::run_cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
  std::string slurp() const {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }
};

}  // namespace

TEST_CASE("models lists the four builtins") {
  const Run r = run({"models"});
  CHECK(r.code == 0);
  for (const char* name :
       {"orthoglide", "hybridglide", "triaglide", "uranesx"})
    CHECK(r.out.find(name) != std::string::npos);
  CHECK(r.out.find("1/2") != std::string::npos);     // uranesx base
  CHECK(r.out.find("sqrt3") != std::string::npos);   // exact sqrt3/2
}

TEST_CASE("ik returns the eight working modes as JSON") {
  const Run r = run({"ik", "--model", "orthoglide", "--L", "2", "--pose",
                     "1.2,1.2,1.2"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["count"] == 8);
  CHECK(j["solutions"].size() == 8);
  CHECK(j["limits_applied"] == true);
  CHECK(j["per_leg_root_counts"] == json::array({2, 2, 2}));
}

TEST_CASE("unreachable pose is a success with an empty solution list") {
  const Run r = run({"ik", "--model", "orthoglide", "--pose", "0,0,3"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["count"] == 0);
  CHECK(j["solutions"].empty());
}

TEST_CASE("dk reports degeneracy") {
  const Run r =
      run({"dk", "--model", "triaglide", "--joints", "1,1,1"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["degenerate"] == true);
  CHECK(j["count"] == 0);
}

TEST_CASE("sing det prints the published triaglide polynomial") {
  const Run r = run({"sing", "det", "--model", "triaglide", "--space",
                     "parallel", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "8*rho1*z+8*rho2*z-16*rho3*z\n");
}

TEST_CASE("sing project reports stats beside the reference values") {
  const Run r = run({"sing", "project", "--model", "triaglide", "--kind",
                     "parallel", "--space", "workspace"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["stats"]["degree"] == 3);
  CHECK(j["stats"]["terms"] == 2);
  CHECK(j["reference"]["degree"] == 3);
  CHECK(j["reference"]["terms"] == 2);
  CHECK(j["match"]["degree"] == true);
  CHECK(j["match"]["terms"] == true);
  CHECK(j["match"]["per_var_degrees"] == true);
  CHECK(j["polynomial"].get<std::string>().find("z^3") != std::string::npos);
}

TEST_CASE("sing project carries the reference row for the orthoglide") {
  const Run r = run({"sing", "project", "--model", "orthoglide", "--kind",
                     "parallel", "--space", "workspace"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["reference"]["degree"] == 18);
  CHECK(j["reference"]["per_var_degrees"] == json::array({10, 10, 10}));
  CHECK(j["reference"]["terms"] == 97);
  CHECK(j["reference"]["bitsize"] == 15);
  CHECK(j["match"].contains("degree"));  // flags present either way
}

TEST_CASE("scan exports PLY and VTK through the CLI") {
  TempFile ply("deltakin_test.ply"), vtk("deltakin_test.vtk");
  CHECK(run({"scan", "--model", "triaglide", "--res", "6x6x6", "--format",
             "ply", "--out", ply.path})
            .code == 0);
  const std::string ply_text = ply.slurp();
  CHECK(ply_text.rfind("ply\nformat ascii 1.0\n", 0) == 0);
  CHECK(run({"scan", "--model", "triaglide", "--res", "6x6x6", "--format",
             "vtk", "--out", vtk.path})
            .code == 0);
  CHECK(vtk.slurp().find("DIMENSIONS 6 6 6") != std::string::npos);
}

TEST_CASE("sing sample writes configurations and respects the seed") {
  const Run a = run({"sing", "sample", "--model", "triaglide", "--kind",
                     "parallel", "-n", "5", "--seed", "7"});
  CHECK(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["found"] == 5);
  CHECK(ja["configs"].size() == 5);

  const Run b = run({"sing", "sample", "--model", "triaglide", "--kind",
                     "parallel", "-n", "5", "--seed", "7"});
  CHECK(b.out == a.out);
}

TEST_CASE("scan writes CSV to a file atomically") {
  TempFile file("deltakin_test_scan.csv");
  const Run r = run({"scan", "--model", "orthoglide", "--res", "4x4x4",
                     "--format", "csv", "--out", file.path});
  CHECK(r.code == 0);
  CHECK_FALSE(std::filesystem::exists(file.path + ".tmp"));
  const std::string text = file.slurp();
  CHECK(text.substr(0, 12) == "x,y,z,label\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 4 * 4 * 4);
}

TEST_CASE("byte-identical output on repeated runs") {
  TempFile a("deltakin_det_a.json"), b("deltakin_det_b.json");
  for (const std::string& path : {a.path, b.path}) {
    const Run r = run({"scan", "--model", "hybridglide", "--res", "6x6x6",
                       "--workers", path == a.path ? "1" : "4", "--format",
                       "json", "--out", path});
    CHECK(r.code == 0);
  }
  CHECK(a.slurp() == b.slurp());
  CHECK_FALSE(a.slurp().empty());
}

TEST_CASE("exit codes") {
  CHECK(run({"ik", "--model", "orthoglide"}).code == 2);  // missing --pose
  CHECK(run({"ik", "--model", "nonesuch", "--pose", "0,0,0"}).code == 2);
  CHECK(run({"ik", "--pose", "0,0,0"}).code == 2);  // no model source
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"ik", "--model", "orthoglide", "--pose", "0,0"}).code == 2);
  CHECK(run({"scan", "--model", "orthoglide", "--res", "1x4x4"}).code == 2);
  CHECK(run({"ik", "--model", "orthoglide", "--pose", "0,0,0", "--format",
             "yaml"})
            .code == 2);

  // Unreadable / malformed / invalid configs.
  CHECK(run({"ik", "--config", "/nonexistent.json", "--pose", "0,0,0"}).code ==
        2);
  TempFile bad("deltakin_bad.json");
  {
    std::ofstream os(bad.path);
    os << "{ not json";
  }
  CHECK(run({"ik", "--config", bad.path, "--pose", "0,0,0"}).code == 2);
  TempFile invalid("deltakin_invalid.json");
  {
    std::ofstream os(invalid.path);
    os << R"({"name":"bad","L":"2","legs":[
      {"base":[0,0,0],"axis":[1,1,0]},
      {"base":[0,0,0],"axis":[0,1,0]},
      {"base":[0,0,0],"axis":[0,0,1]}]})";
  }
  CHECK(run({"ik", "--config", invalid.path, "--pose", "0,0,0"}).code == 1);
}

TEST_CASE("a config file drives the kinematics") {
  TempFile cfg("deltakin_cfg.json");
  {
    std::ofstream os(cfg.path);
    os << R"({"name":"mirror","L":"2","legs":[
      {"base":[0,0,0],"axis":[1,0,0]},
      {"base":[0,0,0],"axis":[0,1,0]},
      {"base":[0,0,0],"axis":[0,0,1]}],
      "limits":{"min":"0","max":"2L"}})";
  }
  const Run r =
      run({"ik", "--config", cfg.path, "--pose", "1.2,1.2,1.2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 8);
}

TEST_CASE("help enumerates every registered flag") {
  Cli cli;
  std::function<void(CLI::App*)> walk = [&](CLI::App* app) {
    std::ostringstream help;
    help << app->help("", CLI::AppFormatMode::Normal);
    const std::string text = help.str();
    for (const CLI::Option* opt : app->get_options()) {
      std::string name = opt->get_name(false, true);
      const auto comma = name.find(',');
      if (comma != std::string::npos) name = name.substr(0, comma);
      INFO(app->get_name() << " option " << name);
      CHECK(text.find(name) != std::string::npos);
    }
    for (CLI::App* sub : app->get_subcommands(nullptr)) walk(sub);
  };
  walk(&cli.app());
}
