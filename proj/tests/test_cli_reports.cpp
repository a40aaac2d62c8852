#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "pwf/cli.hpp"

using namespace pwf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pwframe_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(PWFRAME_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("validate: built-in table, broken file, missing file") {
  const auto dir = scratch("validate");
  CHECK(run("validate --family haar_cos --out " + (dir / "ok").string()) == 0);
  const auto report = read_json(dir / "ok" / "validation.json");
  CHECK(report.at("valid") == true);

  auto table = to_json(builtin_family(Family::kHaarCos, 3, 4));
  table["levels"][0]["nu"][1] = 0.5;
  write_json(dir / "broken.json", table);
  CHECK(run("validate --mask-file " + (dir / "broken.json").string() + " --out " +
            (dir / "bad").string()) == 1);
  const auto bad = read_json(dir / "bad" / "validation.json");
  REQUIRE(bad.at("violations").size() > 0);
  bool quadrature_row = false;
  for (const auto& v : bad.at("violations")) {
    if (v.at("invariant") == "quadrature" && v.at("j") == 3 && v.at("k") == 1) quadrature_row = true;
  }
  CHECK(quadrature_row);

  CHECK(run("validate --mask-file " + (dir / "nope.json").string() + " --out " +
            (dir / "missing").string()) == 2);
}

TEST_CASE("usage errors exit with 2") {
  const auto dir = scratch("usage");
  const std::string out = " --out " + dir.string();
  CHECK(run("lift -K 0" + out) == 2);
  CHECK(run("lift -K 9" + out) == 2);
  CHECK(run("experiment --family daubechies" + out) == 2);
  CHECK(run("uc --tol 0.5" + out) == 2);
  CHECK(run("uc --jmin 1" + out) == 2);
  CHECK(run("frobnicate" + out) == 2);
  CHECK(run("uc --config " + (dir / "absent.json").string() + out) == 2);
}

TEST_CASE("lift writes splines and reports end conditions") {
  const auto dir = scratch("lift");
  CHECK(run("lift --family haar_cos -K 1 --jmin 4 --jmax 5 --out " + dir.string()) == 0);
  const auto rep = read_json(dir / "lift_report.json");
  for (const auto& lv : rep.at("levels")) {
    CHECK(lv.at("smoothness").at("max_mismatch").get<double>() <= 1e-12);
  }
  CHECK(fs::exists(dir / "spline_j4.json"));
  CHECK(fs::exists(dir / "spline_j5.json"));

  const auto dir3 = scratch("lift3");
  CHECK(run("lift --family meyer_smooth -K 3 --jmin 4 --jmax 5 --out " + dir3.string()) == 0);
  const auto rep3 = read_json(dir3 / "lift_report.json");
  CHECK(rep3.at("end_conditions").at("right_count") == 1);
  const auto spline = read_json(dir3 / "spline_j4.json");
  CHECK(spline.at("K") == 3);
  CHECK(spline.at("knots").size() == 5);
}

TEST_CASE("uc: empty range gives a header-only table") {
  const auto dir = scratch("uc_empty");
  CHECK(run("uc --jmin 6 --jmax 5 --out " + dir.string()) == 0);
  CHECK(slurp(dir / "uc.csv") == uc_csv_header());
  const std::string self = slurp(dir / "uc_selftest.csv");
  CHECK(self.find("gaussian,nan,nan,nan,0.5") != std::string::npos);
}

TEST_CASE("outputs are deterministic and carry the config hash") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const fs::path cfg = a / "cfg.json";
  write_json(cfg, {{"family", "meyer_smooth"}, {"jmin", 4}, {"jmax", 5}, {"span", 2.0}});
  CHECK(run("build --config " + cfg.string() + " --out " + (a / "run").string()) == 0);
  CHECK(run("build --config " + cfg.string() + " --out " + (a / "run").string()) == 0);
  CHECK(run("build --config " + cfg.string() + " --out " + (b / "run").string()) == 0);
  for (const char* f : {"frame_j4.json", "spectrum_j5.csv", "uep.json"}) {
    CHECK(fs::exists(a / "run" / f));
  }
  const auto manifest = read_json(a / "run" / "manifest.json");
  CHECK(manifest.at("config").at("family") == "meyer_smooth");
  CHECK(read_json(a / "run" / "uep.json").at("config_hash") == manifest.at("config_hash"));
  CHECK(slurp(a / "run" / "spectrum_j5.csv") == slurp(b / "run" / "spectrum_j5.csv"));
}

TEST_CASE("experiment exit status follows the conditions") {
  const auto dir = scratch("exp");
  CHECK(run("experiment --family haar_cos --jmin 4 --jmax 5 --span 2 --out " + dir.string()) == 1);
  const auto summary = read_json(dir / "experiment_summary.json");
  CHECK(summary.at("conditions_hold") == false);
  CHECK(summary.at("rows").size() == 2);
  CHECK(summary.at("rows")[0].at("cond1").at("verdict") == "likely-divergent");
}

TEST_CASE("config file with flag overrides") {
  const json doc = {{"family", "meyer_smooth"}, {"K", 3}, {"N", 12}, {"res", 2}};
  const RunConfig c = config_from_json(doc);
  CHECK(c.family == "meyer_smooth");
  CHECK(c.K == 3);
  REQUIRE(c.N.has_value());
  CHECK(*c.N == 12);
  CHECK(c.G == 2);
  CHECK(c.j_min == RunConfig{}.j_min);
  CHECK_THROWS_AS(config_from_json({{"colour", "blue"}}), UsageError);
  CHECK_THROWS_AS(config_from_json({{"K", "three"}}), UsageError);

  RunConfig x;
  RunConfig y;
  y.tol = 1e-9;
  CHECK(config_hash(x) == config_hash(RunConfig{}));
  CHECK(config_hash(x) != config_hash(y));
  CHECK(config_hash(x).size() == 16);
}

TEST_CASE("mask table file round trip") {
  const auto dir = scratch("table");
  const auto t = builtin_family(Family::kMeyerSmooth, 3, 6);
  save_mask_table(dir / "t.json", t);
  const auto back = load_mask_table(dir / "t.json");
  REQUIRE(back.j_min() == 3);
  REQUIRE(back.j_max() == 6);
  for (int j = 3; j <= 6; ++j) {
    for (std::int64_t k = 0; k < pow2(j); ++k) CHECK(back.nu(j, k) == t.nu(j, k));
  }
  CHECK_THROWS_AS(mask_table_from_json({{"j_min", 3}, {"levels", {{{"j", 4}, {"nu", {1.0}}}}}}),
                  StructuralError);
}
