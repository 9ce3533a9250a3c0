#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "projwalk/config.hpp"

using namespace projwalk;
namespace fs = std::filesystem;

namespace {

const char* kCli = PROJWALK_CLI_PATH;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(kCli) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "projwalk_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << body;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string scaling_config(const fs::path& out_dir, std::uint64_t seed) {
  return std::string(R"({
  "system": {"flavor": "cyclic-coset", "rank": 2, "axis": "a",
             "constants": {"L": 1, "B": 1, "s": 2}, "ball_radius": 4},
  "measure": {"uniform_letters": 2},
  "experiment": {"kind": "scaling", "n_list": [50, 200], "trials": 40, "window_c": 4.0},
  "seed": )") +
         std::to_string(seed) + R"(, "out_dir": ")" + out_dir.string() + "\"}";
}

}  // namespace

TEST_CASE("config: canonical form round-trips with a stable hash") {
  const fs::path dir = fresh_dir("roundtrip");
  const ExperimentConfig a = ExperimentConfig::from_json_text(scaling_config(dir, 7));
  const ExperimentConfig b = ExperimentConfig::from_json_text(a.canonical_json());
  CHECK(a.hash() == b.hash());
  CHECK(a.canonical_json() == b.canonical_json());
  CHECK(a.kind() == "scaling");
  // The hash responds to the seed.
  const ExperimentConfig c = ExperimentConfig::from_json_text(scaling_config(dir, 8));
  CHECK(a.hash() != c.hash());
}

TEST_CASE("config: parse errors") {
  CHECK_THROWS(ExperimentConfig::from_json_text("{"));
  CHECK_THROWS(ExperimentConfig::from_json_text(R"({"experiment": {"kind": "scaling"}})"));
  CHECK_THROWS(ExperimentConfig::from_json_text(
      R"({"system": {"flavor": "nope"}, "measure": {"uniform_letters": 2},
          "experiment": {"kind": "scaling", "n_list": [10]}})"));
  // Stallings flavor requires a subgroup.
  CHECK_THROWS(ExperimentConfig::from_json_text(
      R"({"system": {"flavor": "stallings-coset", "rank": 2},
          "measure": {"uniform_letters": 2},
          "experiment": {"kind": "scaling", "n_list": [10]}})"));
}

TEST_CASE("config: stallings subgroup specs build") {
  const ExperimentConfig config = ExperimentConfig::from_json_text(
      R"({"system": {"flavor": "stallings-coset", "rank": 3,
                     "subgroup": {"generators": ["a", "b"]},
                     "constants": {"L": 1, "B": 1, "s": 2}, "ball_radius": 4},
          "measure": {"uniform_letters": 3},
          "experiment": {"kind": "scaling", "n_list": [20], "trials": 5},
          "seed": 3})");
  const ProjectionSystem sys = config.system.build();
  CHECK(sys.flavor() == Flavor::kStallingsCoset);
  CHECK(sys.graph().single_vertex());
  // Round-trip through the canonical form preserves the subgroup.
  const ExperimentConfig again = ExperimentConfig::from_json_text(config.canonical_json());
  CHECK(again.hash() == config.hash());
}

TEST_CASE("execute: flagged second-moment run (undersampled)") {
  // Pinned search result: seed 11 at n = 65 with 4 trials has zero Y events.
  const ExperimentConfig config = ExperimentConfig::from_json_text(
      R"({"system": {"flavor": "cyclic-coset", "rank": 2, "axis": "a",
                     "constants": {"L": 1, "B": 1, "s": 2}, "ball_radius": 4},
          "measure": {"uniform_letters": 2},
          "experiment": {"kind": "second-moment", "n": 65, "trials": 4, "eps1": 0.72},
          "seed": 11})");
  const RunOutputs out = execute(config, 1);
  CHECK(out.flagged);
  CHECK(out.files.size() == 2);  // reports are still written
}

TEST_CASE("cli: verify-axioms passes and writes the certificate") {
  const fs::path dir = fresh_dir("verify");
  const fs::path cfg = dir / "config.json";
  write_text(cfg, scaling_config(dir, 7));
  CHECK(run_cli("verify-axioms --config " + cfg.string()) == 0);
  const ExperimentConfig config = ExperimentConfig::from_json_text(scaling_config(dir, 7));
  const fs::path cert = dir / ("axioms_" + config.hash().substr(0, 8) + ".json");
  const std::string body = read_text(cert);
  CHECK(body.find("\"B\": 1") != std::string::npos);
  CHECK(body.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("cli: wrong declared B exits 2") {
  const fs::path dir = fresh_dir("verify_bad");
  const fs::path cfg = dir / "config.json";
  std::string text = scaling_config(dir, 7);
  const auto pos = text.find("\"B\": 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "\"B\": 0");
  write_text(cfg, text);
  CHECK(run_cli("verify-axioms --config " + cfg.string()) == 2);
  CHECK(run_cli("run --config " + cfg.string()) == 2);
}

TEST_CASE("cli: malformed config exits 1") {
  const fs::path dir = fresh_dir("badjson");
  const fs::path cfg = dir / "config.json";
  write_text(cfg, "{ not json");
  CHECK(run_cli("verify-axioms --config " + cfg.string()) == 1);
  CHECK(run_cli("run --config " + cfg.string()) == 1);
  CHECK(run_cli("replay " + (dir / "missing.json").string()) == 1);
}

TEST_CASE("cli: run twice produces identical report bodies; replay round-trips") {
  const fs::path dir1 = fresh_dir("run1");
  const fs::path dir2 = fresh_dir("run2");
  const fs::path cfg1 = dir1 / "config.json";
  const fs::path cfg2 = dir2 / "config.json";
  write_text(cfg1, scaling_config(dir1, 2026));
  write_text(cfg2, scaling_config(dir2, 2026));
  CHECK(run_cli("run --config " + cfg1.string() + " --workers 1") == 0);
  CHECK(run_cli("run --config " + cfg2.string() + " --workers 3") == 0);

  const ExperimentConfig config = ExperimentConfig::from_json_text(scaling_config(dir1, 2026));
  const std::string tag = config.hash().substr(0, 8);
  // The configs differ only in out_dir, which the hash excludes.
  for (const std::string name : {"sups_" + tag + ".csv", "scaling_" + tag + ".json"})
    CHECK(read_text(dir1 / name) == read_text(dir2 / name));

  CHECK(run_cli("replay " + (dir1 / ("manifest_" + tag + ".json")).string()) == 0);

  // Tampering with a CSV body must be caught.
  const fs::path csv = dir1 / ("sups_" + tag + ".csv");
  std::string body = read_text(csv);
  body[body.size() / 2] = body[body.size() / 2] == '1' ? '2' : '1';
  write_text(csv, body);
  CHECK(run_cli("replay " + (dir1 / ("manifest_" + tag + ".json")).string()) == 4);

  // A missing report file is an I/O error, not a mismatch.
  fs::remove(csv);
  CHECK(run_cli("replay " + (dir1 / ("manifest_" + tag + ".json")).string()) == 1);
}

TEST_CASE("cli: seed override changes outputs and the manifest hash") {
  const fs::path dir = fresh_dir("seedover");
  const fs::path cfg = dir / "config.json";
  write_text(cfg, scaling_config(dir, 1));
  CHECK(run_cli("run --config " + cfg.string() + " --seed 9001") == 0);
  ExperimentConfig config = ExperimentConfig::from_json_text(scaling_config(dir, 1));
  config.seed = 9001;
  CHECK(fs::exists(dir / ("manifest_" + config.hash().substr(0, 8) + ".json")));
}

TEST_CASE("cli: undersampled second-moment run exits 3 but writes reports") {
  const fs::path dir = fresh_dir("flagged");
  const fs::path cfg = dir / "config.json";
  write_text(cfg, std::string(R"({
  "system": {"flavor": "cyclic-coset", "rank": 2, "axis": "a",
             "constants": {"L": 1, "B": 1, "s": 2}, "ball_radius": 4},
  "measure": {"uniform_letters": 2},
  "experiment": {"kind": "second-moment", "n": 65, "trials": 4, "eps1": 0.72},
  "seed": 11, "out_dir": ")") + dir.string() + "\"}");
  CHECK(run_cli("run --config " + cfg.string()) == 3);
  int reports = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().filename().string().rfind("secondmoment_", 0) == 0) ++reports;
  CHECK(reports == 2);
}

TEST_CASE("cli: systole and distance-formula kinds run without a measure") {
  const fs::path dir = fresh_dir("nomeasure");
  const fs::path sys_cfg = dir / "systole.json";
  write_text(sys_cfg, std::string(R"({
  "system": {"flavor": "cyclic-coset", "rank": 2, "axis": "a"},
  "experiment": {"kind": "systole", "n_list": [1000, 10000], "trials": 5, "c": 1.0, "D1": 1.0},
  "seed": 5, "out_dir": ")") + dir.string() + "\"}");
  CHECK(run_cli("run --config " + sys_cfg.string()) == 0);

  const fs::path df_cfg = dir / "distance.json";
  write_text(df_cfg, std::string(R"({
  "system": {"flavor": "cyclic-coset", "rank": 2, "axis": "a",
             "constants": {"L": 1, "B": 1, "s": 2}},
  "experiment": {"kind": "distance-formula", "words": 50, "max_len": 200},
  "seed": 5, "out_dir": ")") + dir.string() + "\"}");
  CHECK(run_cli("run --config " + df_cfg.string()) == 0);
}
