#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vmimo/power_game.hpp"

namespace vmimo {

enum class ExperimentKind {
    BerSweep,
    FrameSuccessSweep,
    PowerEfficiencySweep,
    NetUtilitySweep,
    EquilibriumSolve,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view name);

/// One swept variable: `points` values from start to stop, spaced linearly or
/// logarithmically.
struct SweepAxis {
    enum class Scale { Linear, Log };

    std::string variable;  // "sinr_db" or "power_mw"
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    Scale scale = Scale::Linear;

    std::vector<double> values() const;
};

struct LabeledConfig {
    std::string label;
    GameConfig config;
};

struct ExperimentSpec {
    std::string name;
    ExperimentKind kind = ExperimentKind::BerSweep;
    std::optional<SweepAxis> sweep;  // required for sweep kinds
    std::vector<LabeledConfig> configs;
    std::string output_path;  // CSV destination, relative to the run's --out dir

    void validate() const;  // throws ConfigError naming the offending field
};

/// Columnar result data plus ordered metadata. Rows are aligned across all
/// columns; row_warnings, when allocated, adds a free-text warning column.
struct ResultTable {
    struct Column {
        std::string name;
        std::vector<double> values;
    };

    std::vector<Column> columns;
    std::vector<std::string> row_warnings;  // empty vector = no warning column
    std::vector<std::pair<std::string, std::string>> metadata;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
    const Column* find(std::string_view name) const;
    void add_metadata(std::string key, std::string value);

    /// Deterministic CSV payload: header line plus data rows, no metadata.
    std::string data_rows_csv() const;
    /// Full CSV: '#'-prefixed metadata block followed by the payload.
    std::string to_csv() const;
};

struct RunOptions {
    int threads = 1;           // sweep points are evaluated in parallel when > 1
    std::uint64_t seed = 12345;  // only consumed by the Monte Carlo oracle checks
};

ResultTable run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

ResultTable run_ber_sweep(const ExperimentSpec& spec, const RunOptions& options = {});
ResultTable run_frame_success_sweep(const ExperimentSpec& spec, const RunOptions& options = {});
ResultTable run_power_efficiency_sweep(const ExperimentSpec& spec, const RunOptions& options = {});
ResultTable run_net_utility_sweep(const ExperimentSpec& spec, const RunOptions& options = {});
ResultTable run_equilibrium_solve(const ExperimentSpec& spec, const RunOptions& options = {});

/// Independent cross-checks of an experiment's output: high-precision
/// recomputation, Monte Carlo frame simulation, dense threshold scans and
/// brute-force equilibrium enumeration, as applicable to the kind.
struct OracleReport {
    struct Check {
        std::string name;
        bool ok = false;
        std::string details;
    };

    std::vector<Check> checks;

    bool all_ok() const;
};

OracleReport run_oracle(const ExperimentSpec& spec, const RunOptions& options = {});

struct WrittenFiles {
    std::filesystem::path csv;
    std::filesystem::path sidecar;
};

/// Writes `<out_dir>/<spec.output_path>` and a JSON sidecar carrying the
/// fully resolved spec; re-running from the sidecar reproduces the table.
WrittenFiles write_result(const ResultTable& table, const ExperimentSpec& spec,
                          const std::filesystem::path& out_dir);

/// Shortest-round-trip decimal rendering used for all CSV values.
std::string format_value(double value);

}  // namespace vmimo
