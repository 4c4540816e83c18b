#include "vmimo/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vmimo/errors.hpp"

namespace vmimo {

namespace {

// Silent first, then grid levels in ascending order. Index 0 <=> silent.
std::vector<Action> full_action_set(const GameConfig& config) {
    std::vector<Action> actions;
    actions.reserve(config.grid.levels.size() + 1);
    actions.push_back(Action::silent());
    for (double level : config.grid.levels) actions.push_back(Action::transmit(level));
    return actions;
}

double action_payoff(const Action& action, const GameConfig& config) {
    return net_utility(action, config).net_utility;
}

// Payoffs depend only on a player's own action under the adopted channel
// model, so one table serves every player.
std::vector<double> payoff_table(const std::vector<Action>& actions, const GameConfig& config) {
    std::vector<double> payoffs(actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i)
        payoffs[i] = action_payoff(actions[i], config);
    return payoffs;
}

// Lowest-index action within the tie tolerance of the best payoff. With the
// silent action at index 0 this is exactly the tie-break rule: silent wins
// only while nothing beats zero by more than the tolerance, otherwise the
// lowest qualifying power wins.
std::size_t best_action_index(const std::vector<double>& payoffs) {
    const double best = *std::max_element(payoffs.begin(), payoffs.end());
    for (std::size_t i = 0; i < payoffs.size(); ++i)
        if (payoffs[i] >= best - kUtilityTieTolerance) return i;
    throw std::logic_error("payoff table empty");
}

void check_profile(const StrategyProfile& profile, const GameConfig& config) {
    if (profile.actions.size() != static_cast<std::size_t>(config.n_players))
        throw std::domain_error("profile has " + std::to_string(profile.actions.size()) +
                                " actions for " + std::to_string(config.n_players) + " players");
    for (const Action& action : profile.actions) {
        if (action.is_silent()) continue;
        const auto& levels = config.grid.levels;
        if (std::find(levels.begin(), levels.end(), action.power_mw()) == levels.end())
            throw std::domain_error("profile action " + std::to_string(action.power_mw()) +
                                    " mW is not a grid level");
    }
}

}  // namespace

Action best_response(int player, const StrategyProfile& profile, const GameConfig& config) {
    config.validate();
    check_profile(profile, config);
    if (player < 0 || player >= config.n_players)
        throw std::domain_error("player index out of range");
    const auto actions = full_action_set(config);
    return actions[best_action_index(payoff_table(actions, config))];
}

EquilibriumResult find_equilibrium(const GameConfig& config, const StrategyProfile& initial,
                                   int max_rounds) {
    config.validate();
    check_profile(initial, config);
    if (max_rounds < 1) throw std::domain_error("max_rounds must be >= 1");

    const auto actions = full_action_set(config);
    const auto payoffs = payoff_table(actions, config);
    const std::size_t best_index = best_action_index(payoffs);

    const auto payoff_of = [&](const Action& a) {
        return a.is_silent() ? 0.0 : action_payoff(a, config);
    };

    EquilibriumResult result;
    result.profile = initial;
    for (int round = 1; round <= max_rounds; ++round) {
        result.rounds = round;
        bool changed = false;
        for (int player = 0; player < config.n_players; ++player) {
            Action& current = result.profile.actions[player];
            const Action& candidate = actions[best_index];
            if (candidate == current) continue;
            const double gain = payoffs[best_index] - payoff_of(current);
            if (gain > kUtilityTieTolerance)
                result.trace.push_back({round, player, current, candidate, gain});
            current = candidate;
            changed = true;
        }
        if (!changed) {
            result.converged = true;
            break;
        }
    }

    result.per_player_net.reserve(config.n_players);
    for (const Action& a : result.profile.actions) result.per_player_net.push_back(payoff_of(a));
    result.certificate = verify_nash(result.profile, config);
    result.is_nash = result.converged && result.certificate.is_nash;
    return result;
}

NashCertificate verify_nash(const StrategyProfile& profile, const GameConfig& config) {
    config.validate();
    check_profile(profile, config);

    const auto actions = full_action_set(config);
    const auto payoffs = payoff_table(actions, config);

    NashCertificate certificate;
    certificate.is_nash = true;
    double worst_gain = kUtilityTieTolerance;
    for (int player = 0; player < config.n_players; ++player) {
        const Action& current = profile.actions[player];
        const double base =
            current.is_silent() ? 0.0 : action_payoff(current, config);
        for (std::size_t i = 0; i < actions.size(); ++i) {
            const double gain = payoffs[i] - base;
            if (gain > worst_gain) {
                worst_gain = gain;
                certificate.is_nash = false;
                certificate.best_deviation = Deviation{player, current, actions[i], gain};
            }
        }
    }
    return certificate;
}

std::vector<StrategyProfile> enumerate_nash_bruteforce(const GameConfig& config) {
    config.validate();
    constexpr double kProfileLimit = 1e7;
    const auto actions = full_action_set(config);
    const double profile_count =
        std::pow(static_cast<double>(actions.size()), config.n_players);
    if (profile_count > kProfileLimit)
        throw OracleSizeError(profile_count, kProfileLimit);

    const auto payoffs = payoff_table(actions, config);
    const double best = *std::max_element(payoffs.begin(), payoffs.end());
    // An action survives the per-player deviation check iff nothing beats it
    // by more than the tolerance, i.e. it is within the tolerance of the best.
    std::vector<bool> undominated(actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i)
        undominated[i] = payoffs[i] >= best - kUtilityTieTolerance;

    std::vector<StrategyProfile> nash_set;
    std::vector<std::size_t> digits(config.n_players, 0);
    const std::size_t base = actions.size();
    while (true) {
        bool is_nash = true;
        for (std::size_t digit : digits) {
            if (!undominated[digit]) {
                is_nash = false;
                break;
            }
        }
        if (is_nash) {
            StrategyProfile profile;
            profile.actions.reserve(digits.size());
            for (std::size_t digit : digits) profile.actions.push_back(actions[digit]);
            nash_set.push_back(std::move(profile));
        }
        // Odometer step, last player fastest: emits profiles in lexicographic
        // action order (silent, then ascending power).
        int pos = config.n_players - 1;
        while (pos >= 0 && ++digits[pos] == base) digits[pos--] = 0;
        if (pos < 0) break;
    }
    return nash_set;
}

}  // namespace vmimo
