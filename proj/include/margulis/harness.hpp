#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "margulis/config.hpp"

namespace margulis {

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_name;
  std::vector<CheckRecord> checks;
  std::vector<std::string> emitted_files;
  double wall_time_seconds = 0.0;  // excluded from the determinism contract

  bool pass() const;
  nlohmann::json to_json() const;
};

struct HarnessOptions {
  std::uint64_t seed = 42;
  int depth = 3;
  int max_len = 3;
  std::vector<double> t_grid;  // empty = per-command default
  double tol = 1e-8;
  std::string out_path;
};

extern const std::vector<std::string> kCommands;

/// Dispatches one CLI command against a loaded config. Throws margulis
/// errors; the caller maps them to exit codes.
RunReport run_command(const std::string& command, const GroupConfig& config,
                      const HarnessOptions& options);

}  // namespace margulis
