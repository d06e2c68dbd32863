#pragma once

#include <optional>
#include <string>

#include "nashexec/game.hpp"
#include "nashexec/scenarios.hpp"

namespace nashexec {

// Parsed run configuration. A config file is a single JSON document; which
// parts a command requires is the command's business (solve wants a scenario
// or a game, check-kernel wants a kernel, ...). See the README for the
// schema and shipped examples.
struct LoadedConfig {
  std::optional<FrontRunningScenario> scenario;
  std::optional<GameSpec> game;
  std::optional<DecayKernel> kernel;   // standalone kernel (check-kernel)
  std::optional<double> horizon;       // standalone horizon (check-kernel)
  std::optional<int> grid_size;
  std::optional<SolverKind> solver;
  std::optional<double> tolerance;
};

// Parses a JSON config document. Throws ConfigError on malformed JSON,
// unknown enum strings, or missing/mistyped fields; domain validation errors
// from the constructed objects propagate as std::invalid_argument.
LoadedConfig parse_config(const std::string& json_text);

// Reads and parses a config file. Throws ConfigError when the file cannot
// be read.
LoadedConfig load_config_file(const std::string& path);

// The kernel a config provides for kernel checks: the standalone "kernel"
// entry, or failing that the game's kernel, or the scenario's exponential
// kernel. Throws ConfigError when the config has none of these.
DecayKernel config_kernel(const LoadedConfig& config);

// Mirror helper for the horizon accompanying config_kernel: standalone
// "horizon", else the game's or scenario's horizon, else 1.0.
double config_horizon(const LoadedConfig& config);

}  // namespace nashexec
