#pragma once

namespace vmimo {

/// RF power-amplifier overhead model: P_PA = (1 + alpha) * P_out with
/// alpha = xi/eta - 1, eta the drain efficiency and xi the peak-to-average
/// ratio of the modulation.
struct AmplifierParams {
    double drain_efficiency = 0.35;  // eta, in (0, 1]
    double peak_to_average = 1.0;    // xi, >= 1

    double alpha() const { return peak_to_average / drain_efficiency - 1.0; }
    void validate() const;
};

/// Per-block circuit consumption in milliwatts. The mixer figure is shared by
/// the transmit and receive chains.
struct CircuitPowerParams {
    double dac_mw = 0.0;
    double mixer_mw = 0.0;
    double tx_filter_mw = 0.0;
    double synthesizer_mw = 0.0;
    double lna_mw = 0.0;
    double if_amplifier_mw = 0.0;
    double rx_filter_mw = 0.0;
    double adc_mw = 0.0;

    void validate() const;
};

/// Cooperating transmitter/receiver counts; (1, 1) is the SISO baseline.
struct AntennaConfig {
    int n_tx = 1;
    int n_rx = 1;

    int min_antennas() const { return n_tx < n_rx ? n_tx : n_rx; }
    bool is_siso() const { return n_tx == 1 && n_rx == 1; }
    void validate() const;
};

/// P_PA = (1 + alpha) * p_out. p_out must be non-negative.
double amplifier_power(double p_out_mw, const AmplifierParams& params);

/// Total circuit draw:
///   N_T*(dac + mixer + tx_filter) + 2*synthesizer
///   + N_R*(lna + mixer + if_amplifier + rx_filter + adc)
double circuit_power(const CircuitPowerParams& params, const AntennaConfig& antennas);

/// P_total = P_PA + P_C.
double total_power(double p_pa_mw, double p_c_mw);

/// Transmit power carried by each sending node when a total budget is split
/// across the cooperating set: p_total / min(N_T, N_R).
double per_node_transmit_power(double p_total_mw, const AntennaConfig& antennas);

}  // namespace vmimo
