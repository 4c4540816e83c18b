#include "vmimo/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vmimo/errors.hpp"

namespace vmimo {

namespace {

using nlohmann::json;

// Shipped calibration for the default link: DPSK with 40-bit frames, the
// 2x2-vs-SISO break-even placed at 15/1.1 = 13.64 mW, and the net-utility
// zero crossing at 80 mW on the default grid. Cross-checked against the
// calibration routines by the test suite.
constexpr double kDefaultLinkGainPerMw = 0.59351827673199364;
constexpr double kDefaultCostK = 249.99999951074915;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path, message);
}

const json* find_member(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double require_double(const json& j, const std::string& path, const char* key) {
    const json* member = find_member(j, key);
    if (!member) fail(path + "." + key, "missing required field");
    return as_double(*member, path + "." + key);
}

double optional_double(const json& j, const std::string& path, const char* key,
                       double fallback) {
    const json* member = find_member(j, key);
    return member ? as_double(*member, path + "." + key) : fallback;
}

int require_int(const json& j, const std::string& path, const char* key) {
    const json* member = find_member(j, key);
    if (!member) fail(path + "." + key, "missing required field");
    if (!member->is_number_integer()) {
        if (member->is_number()) {
            const double value = member->get<double>();
            if (value == static_cast<long long>(value)) return static_cast<int>(value);
        }
        fail(path + "." + key, "expected an integer");
    }
    return member->get<int>();
}

int optional_int(const json& j, const std::string& path, const char* key, int fallback) {
    if (!find_member(j, key)) return fallback;
    return require_int(j, path, key);
}

std::string require_string(const json& j, const std::string& path, const char* key) {
    const json* member = find_member(j, key);
    if (!member) fail(path + "." + key, "missing required field");
    if (!member->is_string()) fail(path + "." + key, "expected a string");
    return member->get<std::string>();
}

json load_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) fail(file.string(), "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(file.string(), std::string("JSON parse error: ") + e.what());
    }
}

ChannelModel parse_channel(const json& j, const std::string& path) {
    const std::string mode = require_string(j, path, "mode");
    try {
        if (mode == "exogenous") {
            const json* linear = find_member(j, "gamma_linear");
            const json* db = find_member(j, "gamma_db");
            if (!linear && !db)
                fail(path, "exogenous channel needs gamma_linear or gamma_db");
            if (linear && db)
                fail(path, "give exactly one of gamma_linear and gamma_db");
            return linear ? ChannelModel::exogenous(as_double(*linear, path + ".gamma_linear"))
                          : ChannelModel::exogenous_db(as_double(*db, path + ".gamma_db"));
        }
        if (mode == "link_budget") {
            const json* gain = find_member(j, "gain_per_mw");
            const json* reference = find_member(j, "reference");
            const json* free_space = find_member(j, "free_space");
            const int given = (gain != nullptr) + (reference != nullptr) + (free_space != nullptr);
            if (given != 1)
                fail(path, "link_budget channel needs exactly one of gain_per_mw, "
                           "reference, free_space");
            if (gain) return ChannelModel::link_budget(as_double(*gain, path + ".gain_per_mw"));
            if (reference) {
                const std::string rpath = path + ".reference";
                const double p_ref = require_double(*reference, rpath, "p_ref_mw");
                const json* ref_linear = find_member(*reference, "gamma_ref_linear");
                const json* ref_db = find_member(*reference, "gamma_ref_db");
                if ((ref_linear != nullptr) == (ref_db != nullptr))
                    fail(rpath, "give exactly one of gamma_ref_linear and gamma_ref_db");
                const double gamma_ref =
                    ref_linear ? as_double(*ref_linear, rpath + ".gamma_ref_linear")
                               : db_to_linear(as_double(*ref_db, rpath + ".gamma_ref_db"));
                return ChannelModel::link_budget_from_reference(p_ref, gamma_ref);
            }
            const std::string fpath = path + ".free_space";
            return ChannelModel::link_budget(free_space_gain_per_mw(
                require_double(*free_space, fpath, "distance_m"),
                require_double(*free_space, fpath, "wavelength_m"),
                optional_double(*free_space, fpath, "tx_gain", 1.0),
                optional_double(*free_space, fpath, "rx_gain", 1.0),
                optional_double(*free_space, fpath, "system_loss", 1.0),
                require_double(*free_space, fpath, "noise_mw")));
        }
    } catch (const std::domain_error& e) {
        fail(path, e.what());
    }
    fail(path + ".mode", "expected 'exogenous' or 'link_budget'");
}

StrategyGrid parse_grid(const json& j, const std::string& path) {
    const std::string spacing = require_string(j, path, "spacing");
    try {
        if (spacing == "uniform" || spacing == "geometric") {
            const double p_min = require_double(j, path, "p_min_mw");
            const double p_max = require_double(j, path, "p_max_mw");
            const int levels = require_int(j, path, "levels");
            return spacing == "uniform" ? StrategyGrid::uniform(p_min, p_max, levels)
                                        : StrategyGrid::geometric(p_min, p_max, levels);
        }
        if (spacing == "explicit") {
            const json* values = find_member(j, "values");
            if (!values || !values->is_array())
                fail(path + ".values", "explicit grid needs an array of levels");
            std::vector<double> levels;
            levels.reserve(values->size());
            for (std::size_t i = 0; i < values->size(); ++i)
                levels.push_back(as_double((*values)[i],
                                           path + ".values[" + std::to_string(i) + "]"));
            return StrategyGrid::explicit_levels(std::move(levels));
        }
    } catch (const std::domain_error& e) {
        fail(path, e.what());
    }
    fail(path + ".spacing", "expected 'uniform', 'geometric' or 'explicit'");
}

GameConfig parse_game_config(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a config object");
    GameConfig config = default_game_config();

    if (const json* frame = find_member(j, "frame")) {
        const std::string fpath = path + ".frame";
        config.frame.info_bits = optional_int(*frame, fpath, "info_bits", config.frame.info_bits);
        config.frame.frame_bits =
            optional_int(*frame, fpath, "frame_bits", config.frame.frame_bits);
        config.frame.rate_bps =
            optional_double(*frame, fpath, "rate_bps", config.frame.rate_bps);
    }
    if (const json* scheme = find_member(j, "modulation")) {
        if (!scheme->is_string()) fail(path + ".modulation", "expected a string");
        try {
            config.scheme = modulation_from_string(scheme->get<std::string>());
        } catch (const std::domain_error& e) {
            fail(path + ".modulation", e.what());
        }
    }
    config.cost_k = optional_double(j, path, "cost_k", config.cost_k);
    if (const json* antennas = find_member(j, "antennas")) {
        const std::string apath = path + ".antennas";
        config.antennas.n_tx = optional_int(*antennas, apath, "n_tx", config.antennas.n_tx);
        config.antennas.n_rx = optional_int(*antennas, apath, "n_rx", config.antennas.n_rx);
    }
    if (const json* channel = find_member(j, "channel"))
        config.channel = parse_channel(*channel, path + ".channel");
    if (const json* rates = find_member(j, "per_branch_rates")) {
        if (!rates->is_array()) fail(path + ".per_branch_rates", "expected an array");
        config.per_branch_rates.clear();
        for (std::size_t i = 0; i < rates->size(); ++i)
            config.per_branch_rates.push_back(as_double(
                (*rates)[i], path + ".per_branch_rates[" + std::to_string(i) + "]"));
    }
    if (const json* grid = find_member(j, "grid")) config.grid = parse_grid(*grid, path + ".grid");
    config.n_players = optional_int(j, path, "n_players", config.n_players);
    if (const json* energy = find_member(j, "energy")) {
        const std::string epath = path + ".energy";
        if (const json* amplifier = find_member(*energy, "amplifier")) {
            const std::string apath = epath + ".amplifier";
            config.amplifier.drain_efficiency = optional_double(
                *amplifier, apath, "drain_efficiency", config.amplifier.drain_efficiency);
            config.amplifier.peak_to_average = optional_double(
                *amplifier, apath, "peak_to_average", config.amplifier.peak_to_average);
        }
        if (const json* circuit = find_member(*energy, "circuit_mw")) {
            const std::string cpath = epath + ".circuit_mw";
            auto& c = config.circuit;
            c.dac_mw = optional_double(*circuit, cpath, "dac", c.dac_mw);
            c.mixer_mw = optional_double(*circuit, cpath, "mix", c.mixer_mw);
            c.tx_filter_mw = optional_double(*circuit, cpath, "filt_tx", c.tx_filter_mw);
            c.synthesizer_mw = optional_double(*circuit, cpath, "synth", c.synthesizer_mw);
            c.lna_mw = optional_double(*circuit, cpath, "lna", c.lna_mw);
            c.if_amplifier_mw = optional_double(*circuit, cpath, "ifa", c.if_amplifier_mw);
            c.rx_filter_mw = optional_double(*circuit, cpath, "filt_rx", c.rx_filter_mw);
            c.adc_mw = optional_double(*circuit, cpath, "adc", c.adc_mw);
        }
    }

    try {
        config.validate();
    } catch (const std::domain_error& e) {
        fail(path, e.what());
    }
    return config;
}

json channel_to_json(const ChannelModel& channel) {
    json j;
    switch (channel.mode) {
        case ChannelMode::Exogenous:
            j["mode"] = "exogenous";
            j["gamma_linear"] = channel.gamma_fixed;
            break;
        case ChannelMode::LinkBudget:
            j["mode"] = "link_budget";
            j["gain_per_mw"] = channel.gain_per_mw;
            break;
    }
    return j;
}

json grid_to_json(const StrategyGrid& grid) {
    json j;
    switch (grid.spacing) {
        case GridSpacing::Uniform:
        case GridSpacing::Geometric:
            j["spacing"] = grid.spacing == GridSpacing::Uniform ? "uniform" : "geometric";
            j["p_min_mw"] = grid.p_min_mw;
            j["p_max_mw"] = grid.p_max_mw;
            j["levels"] = static_cast<int>(grid.levels.size());
            break;
        case GridSpacing::Explicit:
            j["spacing"] = "explicit";
            j["values"] = grid.levels;
            break;
    }
    return j;
}

json game_config_to_json(const GameConfig& config) {
    json j;
    j["frame"] = {{"info_bits", config.frame.info_bits},
                  {"frame_bits", config.frame.frame_bits},
                  {"rate_bps", config.frame.rate_bps}};
    j["modulation"] = std::string(to_string(config.scheme));
    j["cost_k"] = config.cost_k;
    j["antennas"] = {{"n_tx", config.antennas.n_tx}, {"n_rx", config.antennas.n_rx}};
    j["channel"] = channel_to_json(config.channel);
    if (!config.per_branch_rates.empty()) j["per_branch_rates"] = config.per_branch_rates;
    j["grid"] = grid_to_json(config.grid);
    j["n_players"] = config.n_players;
    j["energy"] = {
        {"amplifier",
         {{"drain_efficiency", config.amplifier.drain_efficiency},
          {"peak_to_average", config.amplifier.peak_to_average}}},
        {"circuit_mw",
         {{"dac", config.circuit.dac_mw},
          {"mix", config.circuit.mixer_mw},
          {"filt_tx", config.circuit.tx_filter_mw},
          {"synth", config.circuit.synthesizer_mw},
          {"lna", config.circuit.lna_mw},
          {"ifa", config.circuit.if_amplifier_mw},
          {"filt_rx", config.circuit.rx_filter_mw},
          {"adc", config.circuit.adc_mw}}}};
    return j;
}

SweepAxis parse_sweep(const json& j, const std::string& path) {
    SweepAxis axis;
    axis.variable = require_string(j, path, "variable");
    axis.start = require_double(j, path, "start");
    axis.stop = require_double(j, path, "stop");
    axis.points = require_int(j, path, "points");
    const std::string scale = find_member(j, "scale")
                                  ? require_string(j, path, "scale")
                                  : "linear";
    if (scale == "linear")
        axis.scale = SweepAxis::Scale::Linear;
    else if (scale == "log")
        axis.scale = SweepAxis::Scale::Log;
    else
        fail(path + ".scale", "expected 'linear' or 'log'");
    return axis;
}

json sweep_to_json(const SweepAxis& axis) {
    return {{"variable", axis.variable},
            {"start", axis.start},
            {"stop", axis.stop},
            {"points", axis.points},
            {"scale", axis.scale == SweepAxis::Scale::Linear ? "linear" : "log"}};
}

ExperimentSpec parse_spec(const json& j, const std::string& path,
                          const std::filesystem::path& base_dir) {
    if (!j.is_object()) fail(path, "expected an experiment object");
    ExperimentSpec spec;
    spec.name = require_string(j, path, "name");
    try {
        spec.kind = experiment_kind_from_string(require_string(j, path, "kind"));
    } catch (const std::domain_error& e) {
        fail(path + ".kind", e.what());
    }
    if (const json* sweep = find_member(j, "sweep"))
        spec.sweep = parse_sweep(*sweep, path + ".sweep");
    spec.output_path = require_string(j, path, "output_path");

    json base = game_config_to_json(default_game_config());
    if (const json* base_config = find_member(j, "base_config")) {
        if (!base_config->is_string()) fail(path + ".base_config", "expected a file path string");
        const std::filesystem::path file =
            base_dir / std::filesystem::path(base_config->get<std::string>());
        base = load_json_file(file);
    }

    const json* configs = find_member(j, "configs");
    if (!configs || !configs->is_array() || configs->empty())
        fail(path + ".configs", "expected a non-empty array of labeled configs");
    for (std::size_t i = 0; i < configs->size(); ++i) {
        const json& entry = (*configs)[i];
        const std::string epath = path + ".configs[" + std::to_string(i) + "]";
        LabeledConfig labeled;
        labeled.label = require_string(entry, epath, "label");
        const json* complete = find_member(entry, "config");
        const json* overlay = find_member(entry, "overlay");
        if (complete && overlay) fail(epath, "give either 'config' or 'overlay', not both");
        json resolved = base;
        if (complete)
            resolved = *complete;
        else if (overlay)
            resolved.merge_patch(*overlay);
        labeled.config = parse_game_config(resolved, epath + (complete ? ".config" : ".overlay"));
        spec.configs.push_back(std::move(labeled));
    }

    try {
        spec.validate();
    } catch (const ConfigError& e) {
        fail(path.empty() ? e.path() : path + "." + e.path(), e.what());
    }
    return spec;
}

json parse_override_value(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        return json(text);  // bare strings are taken literally
    }
}

// Applies "a.b.c=value". Array elements are addressed by index; entries of
// the top-level "configs" array may be addressed by label, descending into
// their overlay.
void apply_override(json& root, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        fail("--set " + assignment, "expected key=value");
    const std::string key = assignment.substr(0, eq);
    const json value = parse_override_value(assignment.substr(eq + 1));

    std::vector<std::string> tokens;
    std::stringstream stream(key);
    std::string token;
    while (std::getline(stream, token, '.')) tokens.push_back(token);
    if (tokens.empty()) fail("--set " + assignment, "empty key");

    json* node = &root;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        const std::string& part = tokens[i];
        if (node->is_array()) {
            bool by_label = false;
            for (json& element : *node) {
                if (element.is_object() && element.contains("label") &&
                    element["label"] == part) {
                    node = &element["overlay"];
                    by_label = true;
                    break;
                }
            }
            if (by_label) continue;
            std::size_t index = 0;
            try {
                index = std::stoul(part);
            } catch (...) {
                fail("--set " + key, "no array element labeled '" + part + "'");
            }
            if (index >= node->size()) fail("--set " + key, "array index out of range");
            node = &(*node)[index];
        } else {
            node = &(*node)[part];
        }
    }
    (*node)[tokens.back()] = value;
}

}  // namespace

GameConfig default_game_config() {
    GameConfig config;
    config.frame = FrameFormat{32, 40, 1e6};
    config.scheme = ModulationScheme::Dpsk;
    config.cost_k = kDefaultCostK;
    config.antennas = AntennaConfig{2, 2};
    config.channel = ChannelModel::link_budget(kDefaultLinkGainPerMw);
    config.grid = StrategyGrid::uniform(1.0, 100.0, 100);
    config.n_players = 1;
    config.amplifier = AmplifierParams{0.35, 1.0};
    config.circuit = CircuitPowerParams{};
    return config;
}

GameConfig load_game_config(const std::filesystem::path& file) {
    return parse_game_config(load_json_file(file), file.string());
}

GameConfig parse_game_config_text(const std::string& json_text, const std::string& error_path) {
    try {
        return parse_game_config(json::parse(json_text), error_path);
    } catch (const json::parse_error& e) {
        fail(error_path, std::string("JSON parse error: ") + e.what());
    }
}

std::vector<ExperimentSpec> load_experiment_specs(const std::filesystem::path& file,
                                                  const std::vector<std::string>& overrides) {
    json root = load_json_file(file);
    const std::filesystem::path base_dir = file.parent_path();

    std::vector<ExperimentSpec> specs;
    if (root.is_array()) {
        for (std::size_t i = 0; i < root.size(); ++i) {
            json entry = root[i];
            for (const std::string& assignment : overrides) apply_override(entry, assignment);
            specs.push_back(
                parse_spec(entry, file.string() + "[" + std::to_string(i) + "]", base_dir));
        }
    } else {
        for (const std::string& assignment : overrides) apply_override(root, assignment);
        specs.push_back(parse_spec(root, file.string(), base_dir));
    }
    return specs;
}

ExperimentSpec load_sidecar_spec(const std::filesystem::path& sidecar_file) {
    const json root = load_json_file(sidecar_file);
    const json* spec = find_member(root, "spec");
    if (!spec) fail(sidecar_file.string(), "sidecar has no 'spec' member");
    return parse_spec(*spec, sidecar_file.string() + ".spec", sidecar_file.parent_path());
}

std::string resolved_config_json(const GameConfig& config) {
    return game_config_to_json(config).dump();
}

std::string resolved_spec_json(const ExperimentSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["kind"] = std::string(to_string(spec.kind));
    if (spec.sweep) j["sweep"] = sweep_to_json(*spec.sweep);
    json configs = json::array();
    for (const LabeledConfig& labeled : spec.configs)
        configs.push_back({{"label", labeled.label},
                           {"config", game_config_to_json(labeled.config)}});
    j["configs"] = std::move(configs);
    j["output_path"] = spec.output_path;
    return j.dump(2);
}

}  // namespace vmimo
