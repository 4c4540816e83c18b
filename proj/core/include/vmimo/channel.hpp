#pragma once

namespace vmimo {

enum class ChannelMode { Exogenous, LinkBudget };

/// Maps a node's transmit power to the expected linear SNR at the receiver.
///
/// Exogenous pins gamma regardless of power (SINR-anchored sweeps);
/// LinkBudget couples gamma = gain_per_mw * p, which is what gives the net
/// utility an interior optimum over the power grid.
struct ChannelModel {
    ChannelMode mode = ChannelMode::Exogenous;
    double gamma_fixed = 1.0;  // Exogenous only, linear, > 0
    double gain_per_mw = 0.0;  // LinkBudget only, > 0

    static ChannelModel exogenous(double gamma_linear);
    static ChannelModel exogenous_db(double gamma_db);
    static ChannelModel link_budget(double gain_per_mw);
    /// Fit the gain through a measured (power, SNR) point: gain = gamma_ref / p_ref.
    static ChannelModel link_budget_from_reference(double p_ref_mw, double gamma_ref);

    void validate() const;
};

/// Expected linear SNR seen by the receiver for a node transmitting at
/// p_node_mw. LinkBudget mode requires p_node_mw > 0.
double received_snr(const ChannelModel& model, double p_node_mw);

/// Free-space link budget collapsed to a single gain in 1/mW:
///   gamma = p * tx_gain * rx_gain * wavelength^2 / ((4*pi*d)^2 * system_loss * noise_mw)
/// Convenience for building LinkBudget models from radio parameters.
double free_space_gain_per_mw(double distance_m, double wavelength_m, double tx_gain,
                              double rx_gain, double system_loss, double noise_mw);

}  // namespace vmimo
