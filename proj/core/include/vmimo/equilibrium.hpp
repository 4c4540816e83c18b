#pragma once

#include <optional>
#include <vector>

#include "vmimo/power_game.hpp"

namespace vmimo {

/// Payoff comparisons closer than this are treated as ties and resolved by
/// the deterministic tie-break rules (lower power; silent only when nothing
/// beats zero).
inline constexpr double kUtilityTieTolerance = 1e-12;

struct Deviation {
    int player = 0;
    Action from;
    Action to;
    double gain = 0.0;
};

/// Result of an exhaustive deviation check of one profile.
struct NashCertificate {
    bool is_nash = false;
    // Best improving deviation found; absent when is_nash.
    std::optional<Deviation> best_deviation;
};

struct BestResponseMove {
    int round = 0;
    int player = 0;
    Action from;
    Action to;
    double gain = 0.0;  // strictly positive; tie-break moves are not recorded
};

struct EquilibriumResult {
    StrategyProfile profile;
    std::vector<double> per_player_net;
    bool is_nash = false;  // converged and certified by exhaustive deviation check
    bool converged = false;
    int rounds = 0;  // best-response sweeps performed
    std::vector<BestResponseMove> trace;
    NashCertificate certificate;
};

/// The action maximizing the player's net utility with everyone else held
/// fixed. Ties go to the lower power; silent wins only when no action beats
/// zero by more than the tolerance. (Under the adopted channel model payoffs
/// depend only on the player's own action, so p_{-i} carries no information,
/// but the profile is part of the contract.)
Action best_response(int player, const StrategyProfile& profile, const GameConfig& config);

/// Round-robin best-response iteration from `initial` until a full sweep
/// makes no change, or max_rounds sweeps have run. The returned profile is
/// certified by verify_nash either way; non-convergence is reported in-band.
EquilibriumResult find_equilibrium(const GameConfig& config, const StrategyProfile& initial,
                                   int max_rounds = 100);

/// Exhaustively enumerates every player's full action set (silent plus every
/// grid level) and reports whether any unilateral deviation improves the net
/// utility by more than the tolerance.
NashCertificate verify_nash(const StrategyProfile& profile, const GameConfig& config);

/// Exact set of pure-strategy Nash profiles, by deviation-checking every
/// profile in the joint action space. Refuses instances with more than 1e7
/// profiles. Results are in lexicographic action order (silent first, then
/// ascending power).
std::vector<StrategyProfile> enumerate_nash_bruteforce(const GameConfig& config);

}  // namespace vmimo
