#pragma once

// Executes decoded experiments and writes their outputs.
//
// Exit codes: 0 when every experiment passed, 1 when at least one report
// failed (or a frame/convergence failure occurred), 2 on configuration
// errors. Outputs are written to a temporary file and renamed into place.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace tfmod::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::size_t jobs = 1;
};

struct ExperimentResult {
  std::string name;
  std::string kind;
  /// "passed", "failed" or "error".
  std::string status;
  std::string message;
  std::vector<std::string> outputs;
};

struct RunResult {
  int exit_code = kExitPass;
  std::vector<ExperimentResult> experiments;
};

/// Result document of one experiment (the content of <output>.json).
/// `passed` receives the pass/fail verdict.
Json run_experiment(const Experiment& e, bool& passed);

/// Runs every experiment (up to opts.jobs at a time), writes outputs and
/// manifest.json under opts.out_dir.
RunResult run(const Config& cfg, const RunOptions& opts);

/// Full `run` command: reads TFMOD_SEED, loads the config, runs it and
/// prints one status line per experiment to `out` (errors to `err`).
int run_command(const std::filesystem::path& config, const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` through a temporary file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Seconds since the epoch from SOURCE_DATE_EPOCH when set, else the clock,
/// formatted as an ISO 8601 UTC timestamp.
std::string manifest_timestamp();

}  // namespace tfmod::cli
