#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "vmimo/config_io.hpp"
#include "vmimo/equilibrium.hpp"
#include "vmimo/errors.hpp"

using namespace vmimo;

namespace {

GameConfig high_snr_config() {
    GameConfig config = default_game_config();
    config.antennas = {1, 1};
    config.channel = ChannelModel::exogenous(1e6);
    config.cost_k = 0.0;
    return config;
}

// Test-side oracle: enumerate every profile with plain loops and check every
// deviation directly against the payoff function, without touching the
// library's solvers.
std::vector<std::vector<Action>> reference_nash_set(const GameConfig& config) {
    std::vector<Action> actions{Action::silent()};
    for (double level : config.grid.levels) actions.push_back(Action::transmit(level));
    std::vector<double> payoff(actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i)
        payoff[i] = net_utility(actions[i], config).net_utility;

    const int players = config.n_players;
    std::vector<std::vector<Action>> result;
    std::vector<std::size_t> digits(players, 0);
    while (true) {
        bool nash = true;
        for (int p = 0; p < players && nash; ++p)
            for (std::size_t alt = 0; alt < actions.size(); ++alt)
                if (payoff[alt] > payoff[digits[p]] + 1e-12) {
                    nash = false;
                    break;
                }
        if (nash) {
            std::vector<Action> profile;
            for (std::size_t digit : digits) profile.push_back(actions[digit]);
            result.push_back(std::move(profile));
        }
        int pos = players - 1;
        while (pos >= 0 && ++digits[pos] == actions.size()) digits[pos--] = 0;
        if (pos < 0) break;
    }
    return result;
}

}  // namespace

TEST_CASE("best response stays silent when every power loses") {
    GameConfig config = default_game_config();
    config.cost_k = 1e12;
    const Action response = best_response(0, StrategyProfile::all_silent(1), config);
    CHECK(response.is_silent());
}

TEST_CASE("best response picks the minimum power in a cost-free pinned-SNR game") {
    const GameConfig config = high_snr_config();  // utility is C/p, decreasing
    const Action response = best_response(0, StrategyProfile::all_silent(1), config);
    REQUIRE_FALSE(response.is_silent());
    CHECK(response.power_mw() == config.grid.levels.front());
}

TEST_CASE("best response equals an exhaustive scan of the grid") {
    const GameConfig config = default_game_config();
    double best_net = 0.0;  // silence is worth zero
    Action best = Action::silent();
    for (double level : config.grid.levels) {
        const double net = net_utility(Action::transmit(level), config).net_utility;
        if (net > best_net + 1e-12) {
            best_net = net;
            best = Action::transmit(level);
        }
    }
    CHECK(best_response(0, StrategyProfile::all_silent(1), config) == best);
}

TEST_CASE("best response is idempotent") {
    const GameConfig config = default_game_config();
    StrategyProfile profile = StrategyProfile::all_silent(1);
    const Action first = best_response(0, profile, config);
    profile.actions[0] = first;
    CHECK(best_response(0, profile, config) == first);
}

TEST_CASE("single-player equilibrium is the grid argmax") {
    const GameConfig config = default_game_config();
    const EquilibriumResult result =
        find_equilibrium(config, StrategyProfile::all_silent(1));
    CHECK(result.is_nash);
    CHECK(result.converged);
    const auto reference = reference_nash_set(config);
    REQUIRE(reference.size() == 1);
    CHECK(result.profile.actions == reference.front());
    CHECK(result.per_player_net.front() > 0.0);
    CHECK(result.trace.size() == 1);
}

TEST_CASE("decoupled players all settle on the same level in the first round") {
    GameConfig config = default_game_config();
    config.n_players = 3;
    const EquilibriumResult result =
        find_equilibrium(config, StrategyProfile::all_silent(3));
    CHECK(result.is_nash);
    CHECK(result.converged);
    CHECK(result.rounds == 2);  // one sweep of moves plus the clean sweep
    CHECK(result.trace.size() == 3);
    for (const BestResponseMove& move : result.trace) {
        CHECK(move.round == 1);
        CHECK(move.gain > 0.0);
    }
    for (const Action& action : result.profile.actions)
        CHECK(action == result.profile.actions.front());
}

TEST_CASE("cost-free pinned-SNR game settles everyone at minimum power") {
    GameConfig config = high_snr_config();
    config.n_players = 2;
    const EquilibriumResult result =
        find_equilibrium(config, StrategyProfile::all_silent(2));
    CHECK(result.is_nash);
    for (const Action& action : result.profile.actions) {
        REQUIRE_FALSE(action.is_silent());
        CHECK(action.power_mw() == config.grid.levels.front());
    }
}

TEST_CASE("running out of rounds is reported in-band") {
    const GameConfig config = default_game_config();
    const EquilibriumResult result =
        find_equilibrium(config, StrategyProfile::all_silent(1), 1);
    CHECK_FALSE(result.converged);
    CHECK_FALSE(result.is_nash);
    // the profile it stopped on happens to pass the deviation check anyway
    CHECK(result.certificate.is_nash);
}

TEST_CASE("equilibrium search is deterministic") {
    GameConfig config = default_game_config();
    config.n_players = 2;
    const EquilibriumResult a = find_equilibrium(config, StrategyProfile::all_silent(2));
    const EquilibriumResult b = find_equilibrium(config, StrategyProfile::all_silent(2));
    CHECK(a.profile.actions == b.profile.actions);
    CHECK(a.rounds == b.rounds);
    CHECK(a.trace.size() == b.trace.size());
}

TEST_CASE("certification accepts the solver output and rejects a forced move") {
    const GameConfig config = default_game_config();
    const EquilibriumResult result =
        find_equilibrium(config, StrategyProfile::all_silent(1));
    CHECK(verify_nash(result.profile, config).is_nash);

    StrategyProfile perturbed = result.profile;
    perturbed.actions[0] = Action::transmit(config.grid.levels.back());
    const NashCertificate certificate = verify_nash(perturbed, config);
    CHECK_FALSE(certificate.is_nash);
    REQUIRE(certificate.best_deviation.has_value());
    CHECK(certificate.best_deviation->gain > 0.0);
    CHECK(certificate.best_deviation->to == result.profile.actions[0]);
}

TEST_CASE("brute force singleton for one player over a small explicit grid") {
    GameConfig config = high_snr_config();
    config.grid = StrategyGrid::explicit_levels({2.0, 4.0, 8.0, 16.0, 32.0});
    const auto nash_set = enumerate_nash_bruteforce(config);
    REQUIRE(nash_set.size() == 1);
    CHECK(nash_set.front().actions.front() == Action::transmit(2.0));
}

TEST_CASE("brute force produces the product set for decoupled players") {
    GameConfig config = default_game_config();
    config.n_players = 2;
    const auto nash_set = enumerate_nash_bruteforce(config);
    REQUIRE(nash_set.size() == 1);  // unique per-player argmax squared
    CHECK(nash_set.front().actions[0] == nash_set.front().actions[1]);
}

TEST_CASE("overpriced game leaves only the all-silent profile") {
    GameConfig config = default_game_config();
    config.cost_k = 1e12;
    config.n_players = 2;
    const auto nash_set = enumerate_nash_bruteforce(config);
    REQUIRE(nash_set.size() == 1);
    for (const Action& action : nash_set.front().actions) CHECK(action.is_silent());
}

TEST_CASE("brute force refuses oversized instances with a size report") {
    GameConfig config = default_game_config();
    config.n_players = 4;  // 101^4 profiles
    CHECK_THROWS_AS(enumerate_nash_bruteforce(config), OracleSizeError);
    try {
        enumerate_nash_bruteforce(config);
    } catch (const OracleSizeError& e) {
        CHECK(e.profile_count() > e.limit());
    }
}

TEST_CASE("solver, certifier and enumerator agree with a hand-rolled oracle") {
    GameConfig config = default_game_config();
    config.grid = StrategyGrid::explicit_levels({5.0, 10.0, 20.0, 40.0});

    for (int players = 1; players <= 2; ++players) {
        config.n_players = players;
        const auto expected = reference_nash_set(config);
        const auto actual = enumerate_nash_bruteforce(config);
        REQUIRE(actual.size() == expected.size());
        for (std::size_t i = 0; i < actual.size(); ++i)
            CHECK(actual[i].actions == expected[i]);

        const EquilibriumResult solved =
            find_equilibrium(config, StrategyProfile::all_silent(players));
        CHECK(solved.is_nash);
        const bool member =
            std::any_of(expected.begin(), expected.end(),
                        [&](const auto& profile) { return profile == solved.profile.actions; });
        CHECK(member);
    }
}

TEST_CASE("certifier classification matches brute force across the whole profile space") {
    GameConfig config = default_game_config();
    config.n_players = 2;
    const auto nash_set = enumerate_nash_bruteforce(config);

    std::vector<Action> actions{Action::silent()};
    for (double level : config.grid.levels) actions.push_back(Action::transmit(level));

    // all 101^2 profiles
    int certified = 0;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        for (std::size_t j = 0; j < actions.size(); ++j) {
            StrategyProfile profile;
            profile.actions = {actions[i], actions[j]};
            const bool is_nash = verify_nash(profile, config).is_nash;
            const bool in_set =
                std::any_of(nash_set.begin(), nash_set.end(), [&](const auto& p) {
                    return p.actions == profile.actions;
                });
            CHECK(is_nash == in_set);
            certified += is_nash;
        }
    }
    CHECK(certified == static_cast<int>(nash_set.size()));
}

TEST_CASE("profiles are validated against the grid and player count") {
    const GameConfig config = default_game_config();
    StrategyProfile wrong_size = StrategyProfile::all_silent(2);
    CHECK_THROWS_AS(verify_nash(wrong_size, config), std::domain_error);
    StrategyProfile off_grid = StrategyProfile::all_silent(1);
    off_grid.actions[0] = Action::transmit(3.14159);
    CHECK_THROWS_AS(verify_nash(off_grid, config), std::domain_error);
}
