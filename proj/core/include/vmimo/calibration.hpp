#pragma once

#include "vmimo/modulation.hpp"
#include "vmimo/power_game.hpp"

namespace vmimo {

/// SNR maximizing gamma * f'(gamma): the steepest point of the efficiency
/// curve against log-power.
double steepest_efficiency_snr(ModulationScheme scheme, int frame_bits);

/// SNR x above which a 2x2 cooperative split beats a single link,
/// i.e. the upper root of 2*f(x/2) = f(x).
double vmimo_break_even_snr(ModulationScheme scheme, int frame_bits);

/// Link gain placing the 2x2-vs-SISO break-even power at claim_floor_mw/margin,
/// so the cooperative scheme dominates at and above claim_floor_mw. The
/// shipped default uses (15 mW, 1.10).
double calibrate_link_gain(ModulationScheme scheme, int frame_bits, double claim_floor_mw,
                           double margin);

/// Cost scaling that puts the zero of the net utility exactly at
/// target_threshold_mw for this config. Solved directly: the gross utility
/// does not depend on k, so k = gross(target)/target.
double calibrate_cost_k(const GameConfig& config, double target_threshold_mw);

}  // namespace vmimo
