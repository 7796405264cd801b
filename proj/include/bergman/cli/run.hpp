#pragma once

#include <cstdint>
#include <string>

#include "bergman/cli/config.hpp"

namespace bergman::cli {

enum ExitStatus : int {
  kPassed = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kRuntimeError = 3,
};

struct RunOptions {
  std::string out_dir;  // empty: the config's output path
  int jobs = 1;
  std::uint64_t seed = 20240601;
  bool strict = false;
};

/// Executes a validated configuration, writing CSV tables and summary.json
/// into the output directory. Library errors are caught and written to
/// error.json.
int run(const RunConfig& config, const RunOptions& options);

/// Loads and runs a configuration file. Parse and validation errors are
/// recorded in error.json under `options.out_dir` (or the default output).
int run_file(const std::string& config_path, const RunOptions& options);

}  // namespace bergman::cli
