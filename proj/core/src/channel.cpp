#include "vmimo/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vmimo/modulation.hpp"

namespace vmimo {

ChannelModel ChannelModel::exogenous(double gamma_linear) {
    ChannelModel m;
    m.mode = ChannelMode::Exogenous;
    m.gamma_fixed = gamma_linear;
    m.validate();
    return m;
}

ChannelModel ChannelModel::exogenous_db(double gamma_db) {
    return exogenous(db_to_linear(gamma_db));
}

ChannelModel ChannelModel::link_budget(double gain_per_mw) {
    ChannelModel m;
    m.mode = ChannelMode::LinkBudget;
    m.gain_per_mw = gain_per_mw;
    m.validate();
    return m;
}

ChannelModel ChannelModel::link_budget_from_reference(double p_ref_mw, double gamma_ref) {
    if (!std::isfinite(p_ref_mw) || p_ref_mw <= 0.0)
        throw std::domain_error("reference power must be finite and > 0");
    if (!std::isfinite(gamma_ref) || gamma_ref <= 0.0)
        throw std::domain_error("reference SNR must be finite and > 0");
    return link_budget(gamma_ref / p_ref_mw);
}

void ChannelModel::validate() const {
    switch (mode) {
        case ChannelMode::Exogenous:
            if (!std::isfinite(gamma_fixed) || gamma_fixed <= 0.0)
                throw std::domain_error("exogenous channel: gamma must be finite and > 0");
            return;
        case ChannelMode::LinkBudget:
            if (!std::isfinite(gain_per_mw) || gain_per_mw <= 0.0)
                throw std::domain_error("link-budget channel: gain_per_mw must be finite and > 0");
            return;
    }
    throw std::logic_error("unknown channel mode");
}

double received_snr(const ChannelModel& model, double p_node_mw) {
    model.validate();
    switch (model.mode) {
        case ChannelMode::Exogenous:
            if (!std::isfinite(p_node_mw) || p_node_mw < 0.0)
                throw std::domain_error("received_snr: power must be >= 0");
            return model.gamma_fixed;
        case ChannelMode::LinkBudget:
            if (!std::isfinite(p_node_mw) || p_node_mw <= 0.0)
                throw std::domain_error(
                    "received_snr: link-budget mode needs power > 0, got " +
                    std::to_string(p_node_mw));
            return model.gain_per_mw * p_node_mw;
    }
    throw std::logic_error("unknown channel mode");
}

double free_space_gain_per_mw(double distance_m, double wavelength_m, double tx_gain,
                              double rx_gain, double system_loss, double noise_mw) {
    if (!(distance_m > 0.0) || !(wavelength_m > 0.0) || !(tx_gain > 0.0) || !(rx_gain > 0.0) ||
        !(system_loss >= 1.0) || !(noise_mw > 0.0))
        throw std::domain_error("free_space_gain_per_mw: all parameters must be positive "
                                "(system_loss >= 1)");
    const double four_pi_d = 4.0 * std::numbers::pi * distance_m;
    return tx_gain * rx_gain * wavelength_m * wavelength_m /
           (four_pi_d * four_pi_d * system_loss * noise_mw);
}

}  // namespace vmimo
