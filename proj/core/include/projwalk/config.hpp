// Experiment configuration, config hashing, and the dispatcher that turns a
// config into deterministic report bodies. File writing and manifests live
// in the CLI; this layer is pure so that replay can byte-compare.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "projwalk/experiments.hpp"
#include "projwalk/projection.hpp"
#include "projwalk/systole.hpp"

namespace projwalk {

struct SystemSpec {
  Flavor flavor = Flavor::kCyclicCoset;
  int rank = 2;
  int axis = 0;                          // cyclic flavor
  std::vector<std::string> generators;   // stallings flavor (word strings)
  std::string graph_json;                // alternative stallings input
  SystemConstants constants;
  int ball_radius = 6;
  int tau = 1;

  ProjectionSystem build() const;
};

struct MeasureSpec {
  // Either explicit support entries or the uniform letter walk on `rank`.
  std::vector<std::pair<std::string, double>> support;
  std::optional<int> uniform_letters;

  StepMeasure build() const;
};

struct TailParams {
  std::string coset;  // canonical representative string, "" = Y0
  std::uint64_t n = 10000;
  std::int64_t trials = 10000;
  std::vector<int> r_grid = {0, 2, 4};
  int t_max = 10;
};

struct ScalingParams {
  std::vector<std::uint64_t> n_list;
  std::int64_t trials = 1000;
  double window_c = 4.0;
  bool include_arg_coset = true;
};

struct SecondMomentParams {
  std::uint64_t n = 10000;
  std::int64_t trials = 100000;
  std::optional<double> eps1;  // or derive from k
  std::optional<int> k;
  std::optional<double> eps2;
};

struct DistanceFormulaParams {
  std::int64_t words = 10000;
  long max_len = 10000;
  std::optional<int> k_threshold;
};

struct SystoleParams {
  std::vector<std::uint64_t> n_list;
  std::int64_t trials = 100;
  RivinParams rivin;
};

using ExperimentParams =
    std::variant<TailParams, ScalingParams, SecondMomentParams, DistanceFormulaParams,
                 SystoleParams>;

struct ExperimentConfig {
  SystemSpec system;
  MeasureSpec measure;
  ExperimentParams params = ScalingParams{};
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  std::string kind() const;
  // Effective config with defaults materialized; key-sorted, stable.
  std::string canonical_json() const;
  // FNV-1a 64 over the canonical form, as 16 hex digits.
  std::string hash() const;
};

struct RunOutputs {
  std::vector<std::pair<std::string, std::string>> files;  // name -> body
  bool flagged = false;  // statistical flag (e.g. undersampled second moment)
};

// Deterministic in (config, seed); independent of `workers`.
RunOutputs execute(const ExperimentConfig& config, int workers);

struct RunManifest {
  std::string config_hash;
  std::string config_json;  // embedded effective config
  std::string timestamp;
  std::string tool_version;
  std::vector<std::string> report_files;
  double wall_clock_seconds = 0.0;
  int workers = 1;

  std::string to_json() const;
  static RunManifest from_json_text(const std::string& text);
};

}  // namespace projwalk
