// projwalk CLI: axiom certification, experiment runs, and byte-exact replay.
//
// Exit codes: 0 ok, 1 config error, 2 axiom violation, 3 statistical flag
// (reports still written), 4 replay mismatch.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>

#include <CLI11.hpp>

#include "projwalk/config.hpp"
#include "projwalk/version.hpp"

namespace fs = std::filesystem;
using namespace projwalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAxiom = 2;
constexpr int kExitFlagged = 3;
constexpr int kExitReplayMismatch = 4;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool needs_certified_system(const ExperimentConfig& config) {
  return std::holds_alternative<TailParams>(config.params) ||
         std::holds_alternative<ScalingParams>(config.params) ||
         std::holds_alternative<SecondMomentParams>(config.params);
}

int cmd_verify_axioms(const std::string& config_path, const std::string& out_dir_override,
                      int workers) {
  ExperimentConfig config = ExperimentConfig::load(config_path);
  if (!out_dir_override.empty()) config.out_dir = out_dir_override;
  const ProjectionSystem system = config.system.build();
  const AxiomCertificate cert = system.verify_axioms(config.system.ball_radius, workers);

  fs::create_directories(config.out_dir);
  const fs::path cert_path =
      fs::path(config.out_dir) / ("axioms_" + config.hash().substr(0, 8) + ".json");
  write_file(cert_path, cert.to_json());
  std::cout << "certificate: " << cert_path.string() << "\n"
            << "empirical L=" << cert.empirical_lipschitz << " B=" << cert.empirical_behrstock
            << " s=" << cert.empirical_antichain << " -> " << (cert.pass ? "pass" : "FAIL")
            << "\n";
  if (!cert.pass) {
    for (const AxiomViolation& v : cert.violations)
      std::cerr << "violation [" << v.kind << "] g=" << v.g << " h=" << v.h
                << " coset=" << v.coset << " value=" << v.value << "\n";
    return kExitAxiom;
  }
  return kExitOk;
}

int cmd_run(const std::string& config_path, bool seed_set, std::uint64_t seed,
            const std::string& out_dir_override, int workers) {
  ExperimentConfig config = ExperimentConfig::load(config_path);
  if (seed_set) config.seed = seed;
  if (!out_dir_override.empty()) config.out_dir = out_dir_override;

  if (needs_certified_system(config)) {
    const ProjectionSystem system = config.system.build();
    const AxiomCertificate cert = system.verify_axioms(config.system.ball_radius, workers);
    if (!cert.pass) {
      std::cerr << "axiom certification failed (empirical L=" << cert.empirical_lipschitz
                << " B=" << cert.empirical_behrstock << " s=" << cert.empirical_antichain
                << " vs declared L=" << cert.declared.lipschitz << " B=" << cert.declared.behrstock
                << " s=" << cert.declared.antichain << ")\n";
      for (const AxiomViolation& v : cert.violations)
        std::cerr << "violation [" << v.kind << "] g=" << v.g << " h=" << v.h
                  << " coset=" << v.coset << " value=" << v.value << "\n";
      return kExitAxiom;
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  const RunOutputs outputs = execute(config, workers);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(config.out_dir);
  RunManifest manifest;
  manifest.config_hash = config.hash();
  manifest.config_json = config.canonical_json();
  manifest.timestamp = utc_timestamp();
  manifest.tool_version = kToolVersion;
  manifest.wall_clock_seconds = wall;
  manifest.workers = workers;
  for (const auto& [name, body] : outputs.files) {
    write_file(fs::path(config.out_dir) / name, body);
    manifest.report_files.push_back(name);
    std::cout << "report: " << (fs::path(config.out_dir) / name).string() << "\n";
  }
  // The manifest is written last: its presence marks a complete run.
  const fs::path manifest_path =
      fs::path(config.out_dir) / ("manifest_" + config.hash().substr(0, 8) + ".json");
  write_file(manifest_path, manifest.to_json());
  std::cout << "manifest: " << manifest_path.string() << "\n";
  if (outputs.flagged) {
    std::cerr << "statistical flag raised (see report)\n";
    return kExitFlagged;
  }
  return kExitOk;
}

int cmd_replay(const std::string& manifest_path, int workers) {
  const fs::path mpath(manifest_path);
  const RunManifest manifest = RunManifest::from_json_text(read_file(mpath));
  ExperimentConfig config = ExperimentConfig::from_json_text(manifest.config_json);
  if (config.hash() != manifest.config_hash)
    throw std::invalid_argument("manifest config hash mismatch (edited config?)");

  const RunOutputs outputs = execute(config, workers);
  if (outputs.files.size() != manifest.report_files.size()) {
    std::cerr << "replay: report list differs\n";
    return kExitReplayMismatch;
  }
  const fs::path dir = mpath.parent_path();
  for (std::size_t i = 0; i < outputs.files.size(); ++i) {
    const auto& [name, body] = outputs.files[i];
    if (name != manifest.report_files[i]) {
      std::cerr << "replay: report name mismatch at " << i << "\n";
      return kExitReplayMismatch;
    }
    const std::string stored = read_file(dir / name);
    if (stored != body) {
      std::cerr << "replay: " << name << " differs\n";
      return kExitReplayMismatch;
    }
  }
  std::cout << "replay: " << outputs.files.size() << " report bodies identical\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projwalk: coset-projection statistics of random walks on free groups"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir, manifest_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;

  CLI::App* verify = app.add_subcommand("verify-axioms", "certify the projection-system axioms");
  verify->add_option("--config", config_path, "config JSON path")->required();
  verify->add_option("--out", out_dir, "output directory override");
  verify->add_option("--workers", workers, "worker threads");

  CLI::App* run = app.add_subcommand("run", "run the configured experiment");
  run->add_option("--config", config_path, "config JSON path")->required();
  run->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
    seed_set = true;
  });
  run->add_option("--out", out_dir, "output directory override");
  run->add_option("--workers", workers, "worker threads");

  CLI::App* replay = app.add_subcommand("replay", "recompute a manifest and byte-compare");
  replay->add_option("manifest", manifest_path, "manifest JSON path")->required();
  replay->add_option("--workers", workers, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify_axioms(config_path, out_dir, workers);
    if (run->parsed()) return cmd_run(config_path, seed_set, seed, out_dir, workers);
    if (replay->parsed()) return cmd_replay(manifest_path, workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
