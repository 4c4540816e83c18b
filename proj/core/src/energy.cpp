#include "vmimo/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vmimo {

void AmplifierParams::validate() const {
    if (!std::isfinite(drain_efficiency) || drain_efficiency <= 0.0 || drain_efficiency > 1.0)
        throw std::domain_error("drain_efficiency must lie in (0, 1]");
    if (!std::isfinite(peak_to_average) || peak_to_average < 1.0)
        throw std::domain_error("peak_to_average must be >= 1");
}

void CircuitPowerParams::validate() const {
    const double blocks[] = {dac_mw,        mixer_mw,     tx_filter_mw, synthesizer_mw,
                             lna_mw,        if_amplifier_mw, rx_filter_mw, adc_mw};
    for (double value : blocks) {
        if (!std::isfinite(value) || value < 0.0)
            throw std::domain_error("circuit block powers must be finite and >= 0");
    }
}

void AntennaConfig::validate() const {
    if (n_tx < 1 || n_rx < 1)
        throw std::domain_error("antenna counts must be positive integers, got (" +
                                std::to_string(n_tx) + ", " + std::to_string(n_rx) + ")");
}

double amplifier_power(double p_out_mw, const AmplifierParams& params) {
    params.validate();
    if (!std::isfinite(p_out_mw) || p_out_mw < 0.0)
        throw std::domain_error("amplifier_power: transmit power must be >= 0, got " +
                                std::to_string(p_out_mw));
    return (1.0 + params.alpha()) * p_out_mw;
}

double circuit_power(const CircuitPowerParams& params, const AntennaConfig& antennas) {
    params.validate();
    antennas.validate();
    const double tx_chain = params.dac_mw + params.mixer_mw + params.tx_filter_mw;
    const double rx_chain = params.lna_mw + params.mixer_mw + params.if_amplifier_mw +
                            params.rx_filter_mw + params.adc_mw;
    return antennas.n_tx * tx_chain + 2.0 * params.synthesizer_mw + antennas.n_rx * rx_chain;
}

double total_power(double p_pa_mw, double p_c_mw) {
    if (!std::isfinite(p_pa_mw) || p_pa_mw < 0.0 || !std::isfinite(p_c_mw) || p_c_mw < 0.0)
        throw std::domain_error("total_power: both components must be finite and >= 0");
    return p_pa_mw + p_c_mw;
}

double per_node_transmit_power(double p_total_mw, const AntennaConfig& antennas) {
    antennas.validate();
    if (!std::isfinite(p_total_mw) || p_total_mw < 0.0)
        throw std::domain_error("per_node_transmit_power: total power must be >= 0");
    return p_total_mw / antennas.min_antennas();
}

}  // namespace vmimo
