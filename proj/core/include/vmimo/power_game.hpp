#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmimo/channel.hpp"
#include "vmimo/energy.hpp"
#include "vmimo/modulation.hpp"

namespace vmimo {

enum class GridSpacing { Uniform, Geometric, Explicit };

/// Discrete transmit-power strategy space in milliwatts. Levels are strictly
/// increasing, positive, and bounded by [p_min_mw, p_max_mw].
struct StrategyGrid {
    std::vector<double> levels;
    double p_min_mw = 0.0;
    double p_max_mw = 0.0;
    GridSpacing spacing = GridSpacing::Explicit;

    static StrategyGrid uniform(double p_min_mw, double p_max_mw, int levels);
    static StrategyGrid geometric(double p_min_mw, double p_max_mw, int levels);
    static StrategyGrid explicit_levels(std::vector<double> levels);

    void validate() const;
};

/// A player's move: stay silent, or transmit at a power level.
class Action {
public:
    static Action silent() { return Action{}; }
    static Action transmit(double power_mw);

    bool is_silent() const { return !power_.has_value(); }
    double power_mw() const;  // requires !is_silent()

    friend bool operator==(const Action&, const Action&) = default;

private:
    std::optional<double> power_;
};

std::string to_string(const Action& action);

/// The joint state of the game: one action per player.
struct StrategyProfile {
    std::vector<Action> actions;

    static StrategyProfile all_silent(int n_players);
};

/// Full description of one power-control game instance.
struct GameConfig {
    FrameFormat frame;
    ModulationScheme scheme = ModulationScheme::Dpsk;
    double cost_k = 0.0;  // utility units per mW
    AntennaConfig antennas;
    ChannelModel channel = ChannelModel::exogenous(1.0);
    // Per receive-branch rates; empty means frame.rate_bps on every branch.
    std::vector<double> per_branch_rates;
    StrategyGrid grid = StrategyGrid::uniform(1.0, 100.0, 100);
    int n_players = 1;
    AmplifierParams amplifier;
    CircuitPowerParams circuit;  // reported alongside results, never charged in the cost

    void validate() const;
    std::vector<double> branch_rates() const;  // resolved to exactly n_rx entries
};

/// Breakdown of one utility evaluation.
struct UtilityReport {
    double gross_utility = 0.0;
    double cost = 0.0;
    double net_utility = 0.0;
    double gamma_used = 0.0;  // per-branch linear SNR (0 when silent)
    std::vector<double> per_branch_terms;
};

/// Single-link utility b*r*f(gamma(p)) / (F*p). Requires SISO antennas.
UtilityReport utility_siso(double p_mw, const GameConfig& config);

/// Cooperative utility: each of the N_R receive branches contributes
/// b*r_j*f(gamma_j) against the shared denominator F*N_T*p/min(N_T,N_R),
/// with gamma_j taken at the per-node power p/min(N_T,N_R). All cooperating
/// transmitters mirror the focal player's level. Reduces exactly to
/// utility_siso at (1, 1).
UtilityReport utility_vmimo(double p_mw, const GameConfig& config);

/// Linear transmission penalty A(p) = k*p.
double cost(double p_mw, double k);

/// Net payoff of an action: gross utility minus cost when transmitting,
/// all zeros when silent.
UtilityReport net_utility(const Action& action, const GameConfig& config);

/// Largest power in [p_min, p_max] with non-negative net utility, refined by
/// bisection on the continuous relaxation of the grid.
struct ThresholdResult {
    enum class Status { Found, NeverCrossesZero, AlwaysNegative };

    Status status = Status::AlwaysNegative;
    double power_mw = 0.0;  // meaningful only when found()

    bool found() const { return status == Status::Found; }
    static std::string_view status_name(Status status);
};

ThresholdResult threshold_power(const GameConfig& config);

/// Retransmit-until-success economics at power p: success probability p_s of
/// one attempt, expected attempt count 1/p_s, and the resulting efficiency
/// p_s/p (reciprocal of the expected power spent per delivered frame).
struct PowerEfficiencyReport {
    double efficiency = 0.0;  // p_s / p, 1/mW
    double frame_success = 0.0;
    double expected_transmissions = 0.0;  // 1 / p_s, +inf when p_s == 0
};

PowerEfficiencyReport expected_power_efficiency(double p_mw, const GameConfig& config);

}  // namespace vmimo
