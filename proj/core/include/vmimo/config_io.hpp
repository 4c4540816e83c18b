#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vmimo/experiments.hpp"
#include "vmimo/power_game.hpp"

namespace vmimo {

/// Built-in defaults: 32/40-bit frames at 1 Mbps, DPSK, 2x2 antennas, a
/// uniform 100-level grid over [1, 100] mW, ideal (all-zero) circuit blocks,
/// and the shipped link-gain/cost calibration. Mirrored by configs/default.json.
GameConfig default_game_config();

GameConfig load_game_config(const std::filesystem::path& file);
GameConfig parse_game_config_text(const std::string& json_text, const std::string& error_path);

/// Loads one spec file: either a single experiment object or an array of
/// them. `overrides` are dotted key=value assignments applied to the raw
/// JSON before interpretation (e.g. "sweep.points=500",
/// "configs.SISO.cost_k=100").
std::vector<ExperimentSpec> load_experiment_specs(const std::filesystem::path& file,
                                                  const std::vector<std::string>& overrides = {});

/// Reads the resolved spec back out of a result sidecar written by
/// write_result.
ExperimentSpec load_sidecar_spec(const std::filesystem::path& sidecar_file);

/// Full snapshots, parseable back through the loaders above.
std::string resolved_config_json(const GameConfig& config);
std::string resolved_spec_json(const ExperimentSpec& spec);

}  // namespace vmimo
