#include "vmimo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include <json.hpp>

#include "vmimo/config_io.hpp"
#include "vmimo/equilibrium.hpp"
#include "vmimo/errors.hpp"
#include "vmimo/version.hpp"

namespace vmimo {

namespace {

constexpr ModulationScheme kAllSchemes[] = {ModulationScheme::Fsk, ModulationScheme::Dpsk,
                                            ModulationScheme::Bpsk};

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

// Runs body(0..count-1) on up to `threads` workers. Each index writes its own
// output slot, so results are identical regardless of scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void require_kind(const ExperimentSpec& spec, ExperimentKind kind) {
    if (spec.kind != kind)
        throw ConfigError(spec.name + ".kind",
                          "expected " + std::string(to_string(kind)) + ", got " +
                              std::string(to_string(spec.kind)));
}

const SweepAxis& require_sweep(const ExperimentSpec& spec) {
    if (!spec.sweep) throw ConfigError(spec.name + ".sweep", "missing sweep axis");
    return *spec.sweep;
}

void add_common_metadata(ResultTable& table, const ExperimentSpec& spec) {
    table.add_metadata("tool", kToolName);
    table.add_metadata("version", kVersion);
    table.add_metadata("experiment", spec.name);
    table.add_metadata("kind", std::string(to_string(spec.kind)));
    table.add_metadata("generated", iso8601_utc_now());
    for (const LabeledConfig& labeled : spec.configs)
        table.add_metadata("config_" + labeled.label, resolved_config_json(labeled.config));
}

StrategyGrid grid_from_axis(const SweepAxis& axis) {
    return axis.scale == SweepAxis::Scale::Linear
               ? StrategyGrid::uniform(axis.start, axis.stop, axis.points)
               : StrategyGrid::geometric(axis.start, axis.stop, axis.points);
}

// Index of the maximum value; the first one wins on exact ties.
std::size_t argmax_index(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::BerSweep: return "ber_sweep";
        case ExperimentKind::FrameSuccessSweep: return "frame_success_sweep";
        case ExperimentKind::PowerEfficiencySweep: return "power_efficiency_sweep";
        case ExperimentKind::NetUtilitySweep: return "net_utility_sweep";
        case ExperimentKind::EquilibriumSolve: return "equilibrium_solve";
    }
    throw std::logic_error("unknown experiment kind");
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
    if (name == "ber_sweep") return ExperimentKind::BerSweep;
    if (name == "frame_success_sweep") return ExperimentKind::FrameSuccessSweep;
    if (name == "power_efficiency_sweep") return ExperimentKind::PowerEfficiencySweep;
    if (name == "net_utility_sweep") return ExperimentKind::NetUtilitySweep;
    if (name == "equilibrium_solve") return ExperimentKind::EquilibriumSolve;
    throw std::domain_error("unknown experiment kind '" + std::string(name) + "'");
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> out(points);
    if (scale == Scale::Linear) {
        const double step = (stop - start) / (points - 1);
        for (int i = 0; i < points; ++i) out[i] = start + i * step;
    } else {
        const double ratio = stop / start;
        for (int i = 0; i < points; ++i)
            out[i] = start * std::pow(ratio, static_cast<double>(i) / (points - 1));
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

void ExperimentSpec::validate() const {
    if (name.empty() || name.find_first_of(",\n\r") != std::string::npos)
        throw ConfigError("name", "must be a non-empty identifier without commas");
    if (output_path.empty()) throw ConfigError("output_path", "must not be empty");
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (configs[i].label.empty() ||
            configs[i].label.find_first_of(",\n\r") != std::string::npos)
            throw ConfigError("configs[" + std::to_string(i) + "].label",
                              "must be a non-empty identifier without commas");
        for (std::size_t j = i + 1; j < configs.size(); ++j)
            if (configs[i].label == configs[j].label)
                throw ConfigError("configs[" + std::to_string(j) + "].label",
                                  "duplicate label '" + configs[i].label + "'");
        configs[i].config.validate();
    }
    if (configs.empty()) throw ConfigError("configs", "needs at least one labeled config");

    const bool needs_sweep = kind != ExperimentKind::EquilibriumSolve;
    if (needs_sweep) {
        if (!sweep) throw ConfigError("sweep", "this experiment kind needs a sweep axis");
        if (sweep->points < 2) throw ConfigError("sweep.points", "need at least 2 points");
        if (!std::isfinite(sweep->start) || !std::isfinite(sweep->stop))
            throw ConfigError("sweep.start", "bounds must be finite");
        if (!(sweep->stop > sweep->start))
            throw ConfigError("sweep.stop", "must be greater than sweep.start");
        if (sweep->scale == SweepAxis::Scale::Log && !(sweep->start > 0.0))
            throw ConfigError("sweep.start", "log scale needs a positive start");
        const bool snr_axis =
            kind == ExperimentKind::BerSweep || kind == ExperimentKind::FrameSuccessSweep;
        const char* expected = snr_axis ? "sinr_db" : "power_mw";
        if (sweep->variable != expected)
            throw ConfigError("sweep.variable",
                              "expected '" + std::string(expected) + "' for " +
                                  std::string(to_string(kind)));
        if (!snr_axis && !(sweep->start > 0.0))
            throw ConfigError("sweep.start", "power sweeps need a positive start");
    } else if (configs.size() != 1) {
        throw ConfigError("configs", "equilibrium_solve takes exactly one labeled config");
    }
}

ResultTable run_ber_sweep(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    require_kind(spec, ExperimentKind::BerSweep);
    const std::vector<double> sinr_db = require_sweep(spec).values();

    ResultTable table;
    table.columns.push_back({"sinr_db", sinr_db});
    for (ModulationScheme scheme : kAllSchemes)
        table.columns.push_back(
            {"pe_" + std::string(to_string(scheme)), std::vector<double>(sinr_db.size())});

    parallel_for(sinr_db.size(), options.threads, [&](std::size_t i) {
        const double gamma = db_to_linear(sinr_db[i]);
        for (std::size_t s = 0; s < std::size(kAllSchemes); ++s)
            table.columns[1 + s].values[i] = bit_error_probability(kAllSchemes[s], gamma);
    });

    add_common_metadata(table, spec);
    return table;
}

ResultTable run_frame_success_sweep(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    require_kind(spec, ExperimentKind::FrameSuccessSweep);
    const std::vector<double> sinr_db = require_sweep(spec).values();
    const int frame_bits = spec.configs.front().config.frame.frame_bits;

    ResultTable table;
    table.columns.push_back({"sinr_db", sinr_db});
    for (ModulationScheme scheme : kAllSchemes)
        table.columns.push_back({"frame_success_" + std::string(to_string(scheme)),
                                 std::vector<double>(sinr_db.size())});
    for (ModulationScheme scheme : kAllSchemes)
        table.columns.push_back({"frame_error_" + std::string(to_string(scheme)),
                                 std::vector<double>(sinr_db.size())});

    parallel_for(sinr_db.size(), options.threads, [&](std::size_t i) {
        const double gamma = db_to_linear(sinr_db[i]);
        for (std::size_t s = 0; s < std::size(kAllSchemes); ++s) {
            const double pe = bit_error_probability(kAllSchemes[s], gamma);
            const double success = frame_success_probability(pe, frame_bits);
            table.columns[1 + s].values[i] = success;
            table.columns[1 + std::size(kAllSchemes) + s].values[i] = 1.0 - success;
        }
    });

    add_common_metadata(table, spec);
    table.add_metadata("frame_bits", format_value(frame_bits));
    return table;
}

ResultTable run_power_efficiency_sweep(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    require_kind(spec, ExperimentKind::PowerEfficiencySweep);
    const std::vector<double> power_mw = require_sweep(spec).values();
    const std::size_t n_configs = spec.configs.size();

    ResultTable table;
    table.columns.push_back({"power_mw", power_mw});
    for (const LabeledConfig& labeled : spec.configs)
        table.columns.push_back({"eff_" + labeled.label, std::vector<double>(power_mw.size())});
    for (const LabeledConfig& labeled : spec.configs)
        table.columns.push_back(
            {"eff_norm_" + labeled.label, std::vector<double>(power_mw.size())});

    parallel_for(power_mw.size(), options.threads, [&](std::size_t i) {
        for (std::size_t c = 0; c < n_configs; ++c) {
            const GameConfig& config = spec.configs[c].config;
            // The swept value is the pooled budget; each node carries its split.
            const double p_node = per_node_transmit_power(power_mw[i], config.antennas);
            table.columns[1 + c].values[i] =
                expected_power_efficiency(p_node, config).efficiency;
        }
    });

    add_common_metadata(table, spec);
    for (std::size_t c = 0; c < n_configs; ++c) {
        const auto& eff = table.columns[1 + c].values;
        auto& norm = table.columns[1 + n_configs + c].values;
        const std::size_t best = argmax_index(eff);
        const double peak = eff[best];
        for (std::size_t i = 0; i < eff.size(); ++i)
            norm[i] = peak > 0.0 ? eff[i] / peak : 0.0;
        const std::string& label = spec.configs[c].label;
        table.add_metadata("eff_peak_" + label, format_value(peak));
        table.add_metadata("eff_peak_power_mw_" + label, format_value(power_mw[best]));
    }
    return table;
}

ResultTable run_net_utility_sweep(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    require_kind(spec, ExperimentKind::NetUtilitySweep);
    const SweepAxis& axis = require_sweep(spec);
    const StrategyGrid grid = grid_from_axis(axis);
    const std::size_t n_levels = grid.levels.size();
    const std::size_t n_configs = spec.configs.size();

    std::vector<GameConfig> configs;
    configs.reserve(n_configs);
    for (const LabeledConfig& labeled : spec.configs) {
        GameConfig config = labeled.config;
        config.grid = grid;  // the sweep axis defines the strategy grid
        config.validate();
        configs.push_back(std::move(config));
    }

    ResultTable table;
    const std::size_t n_rows = n_levels + 1;  // leading row for the silent action
    table.columns.push_back({"power_mw", std::vector<double>(n_rows)});
    table.columns[0].values[0] = 0.0;
    for (std::size_t i = 0; i < n_levels; ++i) table.columns[0].values[1 + i] = grid.levels[i];
    for (const LabeledConfig& labeled : spec.configs)
        table.columns.push_back({"net_" + labeled.label, std::vector<double>(n_rows, 0.0)});

    parallel_for(n_levels, options.threads, [&](std::size_t i) {
        for (std::size_t c = 0; c < n_configs; ++c)
            table.columns[1 + c].values[1 + i] =
                net_utility(Action::transmit(grid.levels[i]), configs[c]).net_utility;
    });

    // Level-wise improvement ratio when the sweep pits exactly one config
    // against a "SISO" baseline.
    std::size_t siso_index = n_configs;
    for (std::size_t c = 0; c < n_configs; ++c)
        if (spec.configs[c].label == "SISO") siso_index = c;
    const bool with_ratio = n_configs == 2 && siso_index < n_configs;
    const std::size_t other_index = siso_index == 0 ? 1 : 0;
    if (with_ratio) {
        std::vector<double> ratio(n_rows, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t r = 0; r < n_rows; ++r) {
            const double base = table.columns[1 + siso_index].values[r];
            const double other = table.columns[1 + other_index].values[r];
            if (base > 0.0 && other > 0.0) ratio[r] = other / base;
        }
        table.columns.push_back({"improvement_ratio", std::move(ratio)});
    }

    add_common_metadata(table, spec);
    std::vector<std::size_t> argmax_rows(n_configs);
    for (std::size_t c = 0; c < n_configs; ++c) {
        const std::string& label = spec.configs[c].label;
        std::vector<double> nets(table.columns[1 + c].values.begin() + 1,
                                 table.columns[1 + c].values.end());
        const std::size_t best = argmax_index(nets);
        argmax_rows[c] = 1 + best;
        const bool interior = best > 0 && best + 1 < n_levels;
        table.add_metadata("argmax_power_mw_" + label, format_value(grid.levels[best]));
        table.add_metadata("argmax_net_" + label, format_value(nets[best]));
        table.add_metadata("argmax_interior_" + label, interior ? "true" : "false");
        const ThresholdResult threshold = threshold_power(configs[c]);
        table.add_metadata("threshold_mw_" + label,
                           threshold.found()
                               ? format_value(threshold.power_mw)
                               : "none (" +
                                     std::string(ThresholdResult::status_name(threshold.status)) +
                                     ")");
        table.add_metadata("circuit_power_mw_" + label,
                           format_value(circuit_power(configs[c].circuit, configs[c].antennas)));
        table.add_metadata("amplifier_alpha_" + label,
                           format_value(configs[c].amplifier.alpha()));
    }
    if (with_ratio) {
        const std::size_t row = argmax_rows[other_index];
        table.add_metadata("improvement_ratio_at_argmax",
                           format_value(table.columns.back().values[row]));
        table.add_metadata("improvement_ratio_argmax_power_mw",
                           format_value(table.columns[0].values[row]));
    }
    return table;
}

ResultTable run_equilibrium_solve(const ExperimentSpec& spec, const RunOptions&) {
    spec.validate();
    require_kind(spec, ExperimentKind::EquilibriumSolve);
    const GameConfig& config = spec.configs.front().config;
    const int n = config.n_players;

    const EquilibriumResult result =
        find_equilibrium(config, StrategyProfile::all_silent(n));

    ResultTable table;
    table.columns.push_back({"player", std::vector<double>(n)});
    table.columns.push_back({"silent", std::vector<double>(n)});
    table.columns.push_back({"power_mw", std::vector<double>(n)});
    table.columns.push_back({"net_utility", std::vector<double>(n)});
    table.row_warnings.assign(n, "");
    for (int i = 0; i < n; ++i) {
        const Action& action = result.profile.actions[i];
        table.columns[0].values[i] = i;
        table.columns[1].values[i] = action.is_silent() ? 1.0 : 0.0;
        table.columns[2].values[i] =
            action.is_silent() ? std::numeric_limits<double>::quiet_NaN() : action.power_mw();
        table.columns[3].values[i] = result.per_player_net[i];
    }

    add_common_metadata(table, spec);
    table.add_metadata("is_nash", result.is_nash ? "true" : "false");
    table.add_metadata("converged", result.converged ? "true" : "false");
    table.add_metadata("rounds", format_value(result.rounds));
    table.add_metadata("improving_moves", format_value(result.trace.size()));
    const std::size_t trace_cap = std::min<std::size_t>(result.trace.size(), 50);
    for (std::size_t i = 0; i < trace_cap; ++i) {
        const BestResponseMove& move = result.trace[i];
        table.add_metadata("trace_" + std::to_string(i),
                           "round=" + std::to_string(move.round) +
                               " player=" + std::to_string(move.player) + " from=" +
                               to_string(move.from) + " to=" + to_string(move.to) +
                               " gain=" + format_value(move.gain));
    }
    if (result.certificate.best_deviation) {
        const Deviation& d = *result.certificate.best_deviation;
        table.add_metadata("best_deviation", "player=" + std::to_string(d.player) + " to=" +
                                                 to_string(d.to) + " gain=" +
                                                 format_value(d.gain));
    }

    try {
        const std::vector<StrategyProfile> nash_set = enumerate_nash_bruteforce(config);
        table.add_metadata("bruteforce_profiles", format_value(nash_set.size()));
        bool contains = false;
        for (const StrategyProfile& profile : nash_set)
            if (profile.actions == result.profile.actions) contains = true;
        table.add_metadata("bruteforce_contains_result", contains ? "true" : "false");
        const std::size_t list_cap = std::min<std::size_t>(nash_set.size(), 100);
        for (std::size_t i = 0; i < list_cap; ++i) {
            std::string entry;
            for (const Action& action : nash_set[i].actions) {
                if (!entry.empty()) entry += " / ";
                entry += action.is_silent() ? "silent" : format_value(action.power_mw()) + " mW";
            }
            table.add_metadata("bruteforce_nash_" + std::to_string(i), entry);
        }
    } catch (const OracleSizeError& e) {
        std::string warning = e.what();
        for (char& c : warning)
            if (c == ',' || c == '\n') c = ';';
        table.row_warnings[0] = warning;
        table.add_metadata("bruteforce_profiles", "skipped");
    }
    return table;
}

ResultTable run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
    switch (spec.kind) {
        case ExperimentKind::BerSweep: return run_ber_sweep(spec, options);
        case ExperimentKind::FrameSuccessSweep: return run_frame_success_sweep(spec, options);
        case ExperimentKind::PowerEfficiencySweep:
            return run_power_efficiency_sweep(spec, options);
        case ExperimentKind::NetUtilitySweep: return run_net_utility_sweep(spec, options);
        case ExperimentKind::EquilibriumSolve: return run_equilibrium_solve(spec, options);
    }
    throw std::logic_error("unknown experiment kind");
}

bool OracleReport::all_ok() const {
    for (const Check& check : checks)
        if (!check.ok) return false;
    return true;
}

namespace {

long double bit_error_long(ModulationScheme scheme, long double gamma) {
    switch (scheme) {
        case ModulationScheme::Fsk: return 0.5L * std::exp(-gamma / 2.0L);
        case ModulationScheme::Dpsk: return 0.5L * std::exp(-gamma);
        case ModulationScheme::Bpsk: return 0.5L * std::exp(-std::sqrt(gamma));
    }
    throw std::logic_error("unknown modulation scheme");
}

double rel_diff(double a, long double b) {
    const long double denom = std::max<long double>(std::abs(b), 1e-300L);
    return static_cast<double>(std::abs(a - b) / denom);
}

// Plain per-bit Monte Carlo of iid corruption; a frame survives when every
// bit does.
double simulate_frame_success(double pe, int frame_bits, std::uint64_t seed, int frames) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    int successes = 0;
    for (int f = 0; f < frames; ++f) {
        bool clean = true;
        for (int b = 0; b < frame_bits; ++b) {
            if (uniform(rng) < pe) {
                clean = false;
                break;
            }
        }
        if (clean) ++successes;
    }
    return static_cast<double>(successes) / frames;
}

void check_ber_table(OracleReport& report, const ResultTable& table) {
    const auto* sinr = table.find("sinr_db");
    double worst = 0.0;
    bool monotone = true;
    for (ModulationScheme scheme : kAllSchemes) {
        const auto* column = table.find("pe_" + std::string(to_string(scheme)));
        for (std::size_t i = 0; i < sinr->values.size(); ++i) {
            const long double gamma = std::pow(10.0L, sinr->values[i] / 10.0L);
            worst = std::max(worst, rel_diff(column->values[i], bit_error_long(scheme, gamma)));
            if (i > 0 && !(column->values[i] < column->values[i - 1])) monotone = false;
        }
    }
    report.checks.push_back({"ber_closed_form_recompute", worst <= 1e-12,
                             "max relative error " + format_value(worst)});
    report.checks.push_back({"ber_strictly_decreasing", monotone,
                             monotone ? "all schemes" : "monotonicity violated"});
}

void check_frame_table(OracleReport& report, const ResultTable& table, int frame_bits,
                       std::uint64_t seed) {
    const auto* sinr = table.find("sinr_db");
    double worst_sum = 0.0;
    double worst_recompute = 0.0;
    for (ModulationScheme scheme : kAllSchemes) {
        const std::string name(to_string(scheme));
        const auto* success = table.find("frame_success_" + name);
        const auto* error = table.find("frame_error_" + name);
        for (std::size_t i = 0; i < sinr->values.size(); ++i) {
            worst_sum = std::max(worst_sum,
                                 std::abs(success->values[i] + error->values[i] - 1.0));
            const long double gamma = std::pow(10.0L, sinr->values[i] / 10.0L);
            const long double ps =
                std::pow(1.0L - bit_error_long(scheme, gamma), frame_bits);
            worst_recompute = std::max(worst_recompute, rel_diff(success->values[i], ps));
        }
    }
    report.checks.push_back({"frame_success_error_complement", worst_sum <= 1e-15,
                             "max |success + error - 1| = " + format_value(worst_sum)});
    report.checks.push_back({"frame_closed_form_recompute", worst_recompute <= 1e-12,
                             "max relative error " + format_value(worst_recompute)});

    // 4 standard errors per cell: Bonferroni headroom for 15 simultaneous
    // cells under arbitrary seeds. Formula bugs show up orders of magnitude
    // beyond this.
    constexpr int kFrames = 200000;
    const std::size_t n = sinr->values.size();
    const std::size_t picks[] = {0, n / 4, n / 2, 3 * n / 4, n - 1};
    bool mc_ok = true;
    double worst_sigma = 0.0;
    std::uint64_t stream = seed;
    for (ModulationScheme scheme : kAllSchemes) {
        const auto* success = table.find("frame_success_" + std::string(to_string(scheme)));
        for (std::size_t row : picks) {
            const double p = success->values[row];
            const double pe =
                bit_error_probability(scheme, db_to_linear(sinr->values[row]));
            const double simulated = simulate_frame_success(pe, frame_bits, stream++, kFrames);
            const double sigma = std::sqrt(p * (1.0 - p) / kFrames);
            const double gap = std::abs(simulated - p);
            if (gap > 4.0 * sigma) mc_ok = false;
            if (sigma > 0.0) worst_sigma = std::max(worst_sigma, gap / sigma);
        }
    }
    report.checks.push_back({"frame_monte_carlo", mc_ok,
                             "worst deviation " + format_value(worst_sigma) +
                                 " of 4 allowed binomial standard errors over " +
                                 format_value(std::size(picks) * std::size(kAllSchemes)) +
                                 " cells"});
}

void check_power_efficiency_table(OracleReport& report, const ResultTable& table,
                                  const ExperimentSpec& spec) {
    const auto* power = table.find("power_mw");
    double worst = 0.0;
    double worst_identity = 0.0;
    double worst_norm = 0.0;
    for (const LabeledConfig& labeled : spec.configs) {
        const auto* eff = table.find("eff_" + labeled.label);
        const auto* norm = table.find("eff_norm_" + labeled.label);
        double peak = 0.0;
        for (std::size_t i = 0; i < power->values.size(); ++i) {
            const double p_node =
                per_node_transmit_power(power->values[i], labeled.config.antennas);
            const long double gamma = received_snr(labeled.config.channel, p_node);
            const long double ps = std::pow(
                1.0L - bit_error_long(labeled.config.scheme, gamma),
                labeled.config.frame.frame_bits);
            worst = std::max(worst, rel_diff(eff->values[i], ps / p_node));

            const PowerEfficiencyReport rep =
                expected_power_efficiency(p_node, labeled.config);
            if (rep.frame_success > 0.0)
                worst_identity = std::max(
                    worst_identity,
                    std::abs(rep.efficiency * p_node * rep.expected_transmissions - 1.0));
            peak = std::max(peak, norm->values[i]);
        }
        if (peak > 0.0) worst_norm = std::max(worst_norm, std::abs(peak - 1.0));
    }
    report.checks.push_back({"efficiency_composition_recompute", worst <= 1e-12,
                             "max relative error " + format_value(worst)});
    report.checks.push_back({"efficiency_reciprocal_identity", worst_identity <= 1e-12,
                             "max |eff * p * E[tx] - 1| = " + format_value(worst_identity)});
    report.checks.push_back({"efficiency_normalized_peak", worst_norm <= 1e-15,
                             "max |peak - 1| = " + format_value(worst_norm)});
}

void check_net_utility_table(OracleReport& report, const ResultTable& table,
                             const ExperimentSpec& spec) {
    const StrategyGrid grid = grid_from_axis(*spec.sweep);

    bool silent_zero = true;
    for (const LabeledConfig& labeled : spec.configs) {
        const auto* net = table.find("net_" + labeled.label);
        if (net->values.front() != 0.0) silent_zero = false;
    }
    report.checks.push_back({"silent_row_zero", silent_zero, "row 0 is the silent action"});

    for (const LabeledConfig& labeled : spec.configs) {
        GameConfig config = labeled.config;
        config.grid = grid;

        // Dense scan vs. the bisection threshold.
        constexpr int kScanPoints = 1000000;
        const double step = (grid.p_max_mw - grid.p_min_mw) / (kScanPoints - 1);
        double last_crossing = -1.0;
        bool any_nonneg = false;
        double prev_net = net_utility(Action::transmit(grid.p_min_mw), config).net_utility;
        if (prev_net >= 0.0) any_nonneg = true;
        double prev_p = grid.p_min_mw;
        for (int i = 1; i < kScanPoints; ++i) {
            const double p = grid.p_min_mw + i * step;
            const double net = net_utility(Action::transmit(p), config).net_utility;
            if (net >= 0.0) any_nonneg = true;
            if (prev_net >= 0.0 && net < 0.0) last_crossing = prev_p;
            prev_net = net;
            prev_p = p;
        }
        const ThresholdResult threshold = threshold_power(config);
        bool ok = false;
        std::string details;
        if (threshold.found()) {
            ok = last_crossing >= 0.0 &&
                 std::abs(threshold.power_mw - last_crossing) <= step;
            details = "bisection " + format_value(threshold.power_mw) + " vs scan " +
                      format_value(last_crossing) + " (step " + format_value(step) + ")";
        } else if (threshold.status == ThresholdResult::Status::NeverCrossesZero) {
            ok = prev_net >= 0.0;
            details = "net utility still non-negative at p_max";
        } else {
            ok = !any_nonneg;
            details = "net utility negative across the scan";
        }
        report.checks.push_back({"threshold_dense_scan_" + labeled.label, ok, details});

        // The sweep argmax must agree with the single-player brute force.
        GameConfig solo = config;
        solo.n_players = 1;
        const std::vector<StrategyProfile> nash_set = enumerate_nash_bruteforce(solo);
        const auto* net = table.find("net_" + labeled.label);
        std::vector<double> nets(net->values.begin() + 1, net->values.end());
        const std::size_t best = argmax_index(nets);
        const Action& oracle_action = nash_set.front().actions.front();
        bool agrees;
        std::string argmax_details;
        if (oracle_action.is_silent()) {
            agrees = nets[best] <= kUtilityTieTolerance;
            argmax_details = "oracle stays silent; sweep max " + format_value(nets[best]);
        } else {
            agrees = oracle_action.power_mw() == grid.levels[best];
            argmax_details = "oracle " + format_value(oracle_action.power_mw()) +
                             " mW vs sweep " + format_value(grid.levels[best]) + " mW";
        }
        report.checks.push_back(
            {"argmax_vs_bruteforce_" + labeled.label, agrees, argmax_details});
    }
}

void check_equilibrium_solve(OracleReport& report, const ExperimentSpec& spec) {
    const GameConfig& config = spec.configs.front().config;
    const EquilibriumResult result =
        find_equilibrium(config, StrategyProfile::all_silent(config.n_players));

    std::vector<StrategyProfile> nash_set;
    try {
        nash_set = enumerate_nash_bruteforce(config);
    } catch (const OracleSizeError& e) {
        report.checks.push_back({"bruteforce_membership", true,
                                 std::string("skipped: ") + e.what()});
        return;
    }

    bool member = false;
    for (const StrategyProfile& profile : nash_set)
        if (profile.actions == result.profile.actions) member = true;
    report.checks.push_back({"bruteforce_membership", !result.is_nash || member,
                             "brute force found " + format_value(nash_set.size()) +
                                 " Nash profiles"});

    // Every unilateral perturbation must be classified exactly as the brute
    // force classifies it.
    bool perturbations_ok = true;
    std::vector<Action> actions;
    actions.push_back(Action::silent());
    for (double level : config.grid.levels) actions.push_back(Action::transmit(level));
    for (int player = 0; player < config.n_players && perturbations_ok; ++player) {
        for (const Action& alternative : actions) {
            if (alternative == result.profile.actions[player]) continue;
            StrategyProfile perturbed = result.profile;
            perturbed.actions[player] = alternative;
            const bool certified = verify_nash(perturbed, config).is_nash;
            bool in_set = false;
            for (const StrategyProfile& profile : nash_set)
                if (profile.actions == perturbed.actions) in_set = true;
            if (certified != in_set) {
                perturbations_ok = false;
                break;
            }
        }
    }
    report.checks.push_back({"perturbation_classification", perturbations_ok,
                             "verify_nash matches brute-force membership on all "
                             "single-player deviations"});
}

}  // namespace

OracleReport run_oracle(const ExperimentSpec& spec, const RunOptions& options) {
    spec.validate();
    OracleReport report;
    const ResultTable table = run_experiment(spec, options);
    switch (spec.kind) {
        case ExperimentKind::BerSweep:
            check_ber_table(report, table);
            break;
        case ExperimentKind::FrameSuccessSweep:
            check_frame_table(report, table, spec.configs.front().config.frame.frame_bits,
                              options.seed);
            break;
        case ExperimentKind::PowerEfficiencySweep:
            check_power_efficiency_table(report, table, spec);
            break;
        case ExperimentKind::NetUtilitySweep:
            check_net_utility_table(report, table, spec);
            break;
        case ExperimentKind::EquilibriumSolve:
            check_equilibrium_solve(report, spec);
            break;
    }
    return report;
}

WrittenFiles write_result(const ResultTable& table, const ExperimentSpec& spec,
                          const std::filesystem::path& out_dir) {
    WrittenFiles files;
    files.csv = out_dir / spec.output_path;
    files.sidecar = files.csv;
    files.sidecar += ".meta.json";
    if (files.csv.has_parent_path())
        std::filesystem::create_directories(files.csv.parent_path());

    {
        std::ofstream out(files.csv);
        if (!out) throw std::runtime_error("cannot write " + files.csv.string());
        out << table.to_csv();
    }
    {
        nlohmann::json side;
        side["tool"] = kToolName;
        side["version"] = kVersion;
        side["generated"] = iso8601_utc_now();
        side["spec"] = nlohmann::json::parse(resolved_spec_json(spec));
        nlohmann::json meta = nlohmann::json::object();
        for (const auto& [key, value] : table.metadata) meta[key] = value;
        side["metadata"] = std::move(meta);
        std::ofstream out(files.sidecar);
        if (!out) throw std::runtime_error("cannot write " + files.sidecar.string());
        out << side.dump(2) << '\n';
    }
    return files;
}

}  // namespace vmimo
