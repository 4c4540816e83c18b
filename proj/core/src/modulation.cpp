#include "vmimo/modulation.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vmimo {

std::string_view to_string(ModulationScheme scheme) {
    switch (scheme) {
        case ModulationScheme::Fsk: return "fsk";
        case ModulationScheme::Dpsk: return "dpsk";
        case ModulationScheme::Bpsk: return "bpsk";
    }
    throw std::logic_error("unknown modulation scheme");
}

ModulationScheme modulation_from_string(std::string_view name) {
    std::string lower(name);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "fsk") return ModulationScheme::Fsk;
    if (lower == "dpsk") return ModulationScheme::Dpsk;
    if (lower == "bpsk") return ModulationScheme::Bpsk;
    throw std::domain_error("unknown modulation scheme '" + std::string(name) +
                            "' (expected fsk, dpsk or bpsk)");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
    if (!(linear > 0.0)) throw std::domain_error("linear SNR must be > 0 to convert to dB");
    return 10.0 * std::log10(linear);
}

LinkQuality LinkQuality::from_linear(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw std::domain_error("SNR must be finite and > 0, got " + std::to_string(gamma));
    return {gamma, linear_to_db(gamma)};
}

LinkQuality LinkQuality::from_db(double gamma_db) {
    if (!std::isfinite(gamma_db))
        throw std::domain_error("SNR in dB must be finite");
    return {db_to_linear(gamma_db), gamma_db};
}

void FrameFormat::validate() const {
    if (info_bits <= 0)
        throw std::domain_error("info_bits must be a positive integer");
    if (frame_bits <= 0)
        throw std::domain_error("frame_bits must be a positive integer");
    if (info_bits > frame_bits)
        throw std::domain_error("info_bits (" + std::to_string(info_bits) +
                                ") must not exceed frame_bits (" + std::to_string(frame_bits) + ")");
    if (!std::isfinite(rate_bps) || rate_bps <= 0.0)
        throw std::domain_error("rate_bps must be finite and > 0");
}

double bit_error_probability(ModulationScheme scheme, double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw std::domain_error("bit_error_probability: SNR must be finite and > 0, got " +
                                std::to_string(gamma));
    switch (scheme) {
        case ModulationScheme::Fsk: return 0.5 * std::exp(-gamma / 2.0);
        case ModulationScheme::Dpsk: return 0.5 * std::exp(-gamma);
        case ModulationScheme::Bpsk: return 0.5 * std::exp(-std::sqrt(gamma));
    }
    throw std::logic_error("unknown modulation scheme");
}

double efficiency_function(double pe, int frame_bits) {
    if (frame_bits < 1) throw std::domain_error("efficiency_function: frame_bits must be >= 1");
    if (!(pe >= 0.0 && pe <= 0.5))
        throw std::domain_error("efficiency_function: pe must lie in [0, 0.5], got " +
                                std::to_string(pe));
    return std::pow(1.0 - 2.0 * pe, frame_bits);
}

double frame_success_probability(double pe, int frame_bits) {
    if (frame_bits < 1)
        throw std::domain_error("frame_success_probability: frame_bits must be >= 1");
    if (!(pe >= 0.0 && pe <= 1.0))
        throw std::domain_error("frame_success_probability: pe must lie in [0, 1], got " +
                                std::to_string(pe));
    return std::pow(1.0 - pe, frame_bits);
}

double frame_error_probability(double pe, int frame_bits) {
    return 1.0 - frame_success_probability(pe, frame_bits);
}

}  // namespace vmimo
