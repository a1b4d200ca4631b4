#pragma once

// Command implementations behind the toric_cli executable. Each returns the
// text destined for stdout/stderr and an exit code, so tests can drive them
// without spawning a process.

#include <cstdint>
#include <string>
#include <vector>

namespace toric::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

struct RunConfig {
  std::string command;
  int n = 2;
  double a = 0.5;
  double b = 1.0;
  int points = 100;
  int samples = 10;
  std::uint64_t seed = 7;
  double step = 0.0;  // <= 0: command default
  std::string format = "json";
  double tolerance_hard = 1e-9;
  double tolerance_soft = 1e-5;
  std::string preset = "fubini-study";
  double margin = 0.0;  // <= 0: command default
};

struct CommandOutput {
  int exit_code = kExitPass;
  std::string out;
  std::string err;
};

CommandOutput run_derive(const RunConfig& config);
CommandOutput run_profile(const RunConfig& config);
CommandOutput run_verify(const RunConfig& config);
CommandOutput run_bridge_check(const RunConfig& config);
CommandOutput run_example(const RunConfig& config);

/// Dispatches on config.command.
CommandOutput run_command(const RunConfig& config);

/// Parses argv (argv[0] is the program name) and runs the selected command.
CommandOutput run_cli(const std::vector<std::string>& args);

}  // namespace toric::cli
