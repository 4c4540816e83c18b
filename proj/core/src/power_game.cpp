#include "vmimo/power_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vmimo {

StrategyGrid StrategyGrid::uniform(double p_min_mw, double p_max_mw, int levels) {
    if (levels < 2) throw std::domain_error("strategy grid needs at least 2 levels");
    StrategyGrid grid;
    grid.spacing = GridSpacing::Uniform;
    grid.p_min_mw = p_min_mw;
    grid.p_max_mw = p_max_mw;
    grid.levels.resize(levels);
    const double step = (p_max_mw - p_min_mw) / (levels - 1);
    for (int i = 0; i < levels; ++i) grid.levels[i] = p_min_mw + i * step;
    grid.levels.back() = p_max_mw;
    grid.validate();
    return grid;
}

StrategyGrid StrategyGrid::geometric(double p_min_mw, double p_max_mw, int levels) {
    if (levels < 2) throw std::domain_error("strategy grid needs at least 2 levels");
    if (!(p_min_mw > 0.0)) throw std::domain_error("geometric grid needs p_min > 0");
    StrategyGrid grid;
    grid.spacing = GridSpacing::Geometric;
    grid.p_min_mw = p_min_mw;
    grid.p_max_mw = p_max_mw;
    grid.levels.resize(levels);
    const double ratio = p_max_mw / p_min_mw;
    for (int i = 0; i < levels; ++i)
        grid.levels[i] = p_min_mw * std::pow(ratio, static_cast<double>(i) / (levels - 1));
    grid.levels.front() = p_min_mw;
    grid.levels.back() = p_max_mw;
    grid.validate();
    return grid;
}

StrategyGrid StrategyGrid::explicit_levels(std::vector<double> levels) {
    if (levels.size() < 2) throw std::domain_error("strategy grid needs at least 2 levels");
    StrategyGrid grid;
    grid.spacing = GridSpacing::Explicit;
    grid.levels = std::move(levels);
    grid.p_min_mw = grid.levels.front();
    grid.p_max_mw = grid.levels.back();
    grid.validate();
    return grid;
}

void StrategyGrid::validate() const {
    if (levels.size() < 2) throw std::domain_error("strategy grid needs at least 2 levels");
    if (!(p_min_mw > 0.0)) throw std::domain_error("strategy grid needs p_min > 0");
    if (!(p_max_mw > p_min_mw)) throw std::domain_error("strategy grid needs p_max > p_min");
    double prev = 0.0;
    for (double level : levels) {
        if (!std::isfinite(level) || level <= prev)
            throw std::domain_error("strategy grid levels must be finite and strictly increasing");
        prev = level;
    }
    const double slack = 1e-9 * p_max_mw;
    if (levels.front() < p_min_mw - slack || levels.back() > p_max_mw + slack)
        throw std::domain_error("strategy grid levels must lie within [p_min, p_max]");
}

Action Action::transmit(double power_mw) {
    if (!std::isfinite(power_mw) || power_mw <= 0.0)
        throw std::domain_error("transmit power must be finite and > 0, got " +
                                std::to_string(power_mw));
    Action a;
    a.power_ = power_mw;
    return a;
}

double Action::power_mw() const {
    if (is_silent()) throw std::logic_error("silent action has no power level");
    return *power_;
}

std::string to_string(const Action& action) {
    if (action.is_silent()) return "silent";
    return std::to_string(action.power_mw()) + " mW";
}

StrategyProfile StrategyProfile::all_silent(int n_players) {
    if (n_players < 1) throw std::domain_error("profile needs at least one player");
    StrategyProfile profile;
    profile.actions.assign(n_players, Action::silent());
    return profile;
}

void GameConfig::validate() const {
    frame.validate();
    if (!std::isfinite(cost_k) || cost_k < 0.0)
        throw std::domain_error("cost_k must be finite and >= 0");
    antennas.validate();
    channel.validate();
    grid.validate();
    amplifier.validate();
    circuit.validate();
    if (n_players < 1) throw std::domain_error("n_players must be >= 1");
    if (!per_branch_rates.empty()) {
        if (per_branch_rates.size() != static_cast<std::size_t>(antennas.n_rx))
            throw std::domain_error("per_branch_rates must have exactly n_rx entries");
        for (double r : per_branch_rates)
            if (!std::isfinite(r) || r <= 0.0)
                throw std::domain_error("per_branch_rates entries must be finite and > 0");
    }
}

std::vector<double> GameConfig::branch_rates() const {
    if (!per_branch_rates.empty()) return per_branch_rates;
    return std::vector<double>(antennas.n_rx, frame.rate_bps);
}

namespace {

double require_positive_power(double p_mw, const char* where) {
    if (!std::isfinite(p_mw) || p_mw <= 0.0)
        throw std::domain_error(std::string(where) + ": transmit power must be > 0, got " +
                                std::to_string(p_mw));
    return p_mw;
}

}  // namespace

UtilityReport utility_siso(double p_mw, const GameConfig& config) {
    config.validate();
    require_positive_power(p_mw, "utility_siso");
    if (!config.antennas.is_siso())
        throw std::domain_error("utility_siso requires a (1, 1) antenna configuration");

    const double gamma = received_snr(config.channel, p_mw);
    const double pe = bit_error_probability(config.scheme, gamma);
    const double f = efficiency_function(pe, config.frame.frame_bits);
    const double denominator = (config.frame.frame_bits * config.antennas.n_tx) * p_mw /
                               config.antennas.min_antennas();
    const double term = (config.frame.info_bits * config.frame.rate_bps) * f / denominator;

    UtilityReport report;
    report.gamma_used = gamma;
    report.per_branch_terms = {term};
    report.gross_utility = term;
    report.cost = cost(p_mw, config.cost_k);
    report.net_utility = report.gross_utility - report.cost;
    return report;
}

UtilityReport utility_vmimo(double p_mw, const GameConfig& config) {
    config.validate();
    require_positive_power(p_mw, "utility_vmimo");

    // Every cooperating transmitter mirrors the focal player's level, so the
    // pooled spend is N_T * p / min(N_T, N_R) and each branch sees the SNR of
    // one node's share p / min(N_T, N_R).
    const int min_antennas = config.antennas.min_antennas();
    const double p_node = p_mw / min_antennas;
    const double gamma = received_snr(config.channel, p_node);
    const double pe = bit_error_probability(config.scheme, gamma);
    const double f = efficiency_function(pe, config.frame.frame_bits);
    const double denominator =
        (config.frame.frame_bits * config.antennas.n_tx) * p_mw / min_antennas;

    UtilityReport report;
    report.gamma_used = gamma;
    const std::vector<double> rates = config.branch_rates();
    report.per_branch_terms.reserve(rates.size());
    double gross = 0.0;
    for (double rate : rates) {
        const double term = (config.frame.info_bits * rate) * f / denominator;
        report.per_branch_terms.push_back(term);
        gross += term;
    }
    report.gross_utility = gross;
    report.cost = cost(p_mw, config.cost_k);
    report.net_utility = report.gross_utility - report.cost;
    return report;
}

double cost(double p_mw, double k) {
    if (!std::isfinite(p_mw) || p_mw < 0.0)
        throw std::domain_error("cost: power must be >= 0");
    if (!std::isfinite(k) || k < 0.0)
        throw std::domain_error("cost: scaling factor must be >= 0");
    return k * p_mw;
}

UtilityReport net_utility(const Action& action, const GameConfig& config) {
    if (action.is_silent()) {
        config.validate();
        return UtilityReport{};  // staying silent is worth exactly zero
    }
    return utility_vmimo(action.power_mw(), config);
}

std::string_view ThresholdResult::status_name(Status status) {
    switch (status) {
        case Status::Found: return "found";
        case Status::NeverCrossesZero: return "never crosses zero";
        case Status::AlwaysNegative: return "always negative";
    }
    throw std::logic_error("unknown threshold status");
}

ThresholdResult threshold_power(const GameConfig& config) {
    config.validate();
    const double p_min = config.grid.p_min_mw;
    const double p_max = config.grid.p_max_mw;
    const auto net_at = [&config](double p) { return utility_vmimo(p, config).net_utility; };

    const double net_at_max = net_at(p_max);
    if (net_at_max > 0.0) return {ThresholdResult::Status::NeverCrossesZero, 0.0};
    if (net_at_max == 0.0) return {ThresholdResult::Status::Found, p_max};

    // Locate the last non-negative panel on the continuous relaxation, then
    // bisect inside it.
    constexpr int kScanPanels = 4096;
    const double step = (p_max - p_min) / kScanPanels;
    double lo = -1.0;
    double prev_p = p_min;
    double prev_net = net_at(p_min);
    for (int i = 1; i <= kScanPanels; ++i) {
        const double p = (i == kScanPanels) ? p_max : p_min + i * step;
        const double net = net_at(p);
        if (prev_net >= 0.0 && net < 0.0) lo = prev_p;
        prev_p = p;
        prev_net = net;
    }
    if (lo < 0.0) return {ThresholdResult::Status::AlwaysNegative, 0.0};

    double hi = lo + step;
    double mid = lo;
    while (hi - lo > 1e-13 * p_max) {
        mid = 0.5 * (lo + hi);
        const double net = net_at(mid);
        if (std::abs(net) <= 1e-9 * std::max(1.0, cost(mid, config.cost_k))) break;
        if (net >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {ThresholdResult::Status::Found, mid};
}

PowerEfficiencyReport expected_power_efficiency(double p_mw, const GameConfig& config) {
    config.validate();
    require_positive_power(p_mw, "expected_power_efficiency");

    const double gamma = received_snr(config.channel, p_mw);
    const double pe = bit_error_probability(config.scheme, gamma);
    const double p_s = frame_success_probability(pe, config.frame.frame_bits);

    PowerEfficiencyReport report;
    report.frame_success = p_s;
    report.efficiency = p_s / p_mw;
    report.expected_transmissions =
        p_s > 0.0 ? 1.0 / p_s : std::numeric_limits<double>::infinity();
    return report;
}

}  // namespace vmimo
