#pragma once

#include <string_view>

namespace vmimo {

/// Binary modulation schemes with closed-form AWGN bit-error approximations.
enum class ModulationScheme { Fsk, Dpsk, Bpsk };

std::string_view to_string(ModulationScheme scheme);
ModulationScheme modulation_from_string(std::string_view name);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Expected SNR at the receiver, carried in linear units with a dB view.
struct LinkQuality {
    double gamma = 1.0;     // linear, > 0
    double gamma_db = 0.0;  // 10*log10(gamma)

    static LinkQuality from_linear(double gamma);
    static LinkQuality from_db(double gamma_db);
};

/// Packet framing: b information bits inside an F-bit frame sent at rate r.
struct FrameFormat {
    int info_bits = 32;
    int frame_bits = 40;
    double rate_bps = 1e6;

    void validate() const;
};

/// Bit-error probability at linear SNR gamma:
///   FSK: 0.5*exp(-gamma/2)   DPSK: 0.5*exp(-gamma)   BPSK: 0.5*exp(-sqrt(gamma))
/// Strictly decreasing in gamma; gamma must be finite and positive.
double bit_error_probability(ModulationScheme scheme, double gamma);

/// f = (1 - 2*pe)^F, the smooth frame-quality proxy used inside the utility.
/// Requires pe in [0, 0.5].
double efficiency_function(double pe, int frame_bits);

/// Probability that all F bits of a frame survive: (1 - pe)^F.
/// Assumes iid bit corruption. Requires pe in [0, 1].
double frame_success_probability(double pe, int frame_bits);

/// Complement of frame_success_probability: 1 - (1 - pe)^F.
double frame_error_probability(double pe, int frame_bits);

}  // namespace vmimo
