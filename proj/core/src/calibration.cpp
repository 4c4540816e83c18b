#include "vmimo/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace vmimo {

namespace {

double efficiency_at(ModulationScheme scheme, int frame_bits, double gamma) {
    return efficiency_function(bit_error_probability(scheme, gamma), frame_bits);
}

// d(Pe)/d(gamma) for each closed form.
double bit_error_slope(ModulationScheme scheme, double gamma) {
    switch (scheme) {
        case ModulationScheme::Fsk: return -0.25 * std::exp(-gamma / 2.0);
        case ModulationScheme::Dpsk: return -0.5 * std::exp(-gamma);
        case ModulationScheme::Bpsk: {
            const double root = std::sqrt(gamma);
            return -std::exp(-root) / (4.0 * root);
        }
    }
    throw std::logic_error("unknown modulation scheme");
}

// gamma * f'(gamma) with f = (1 - 2*Pe)^F.
double log_slope(ModulationScheme scheme, int frame_bits, double gamma) {
    const double pe = bit_error_probability(scheme, gamma);
    const double body = std::pow(1.0 - 2.0 * pe, frame_bits - 1);
    return gamma * (-2.0 * frame_bits * body * bit_error_slope(scheme, gamma));
}

}  // namespace

double steepest_efficiency_snr(ModulationScheme scheme, int frame_bits) {
    if (frame_bits < 1) throw std::domain_error("frame_bits must be >= 1");
    // Coarse log-spaced scan, then golden-section refinement of the bracket.
    constexpr int kScanPoints = 4000;
    const double lo_exp = -4.0, hi_exp = 4.0;
    double best_gamma = 1.0, best_value = -1.0;
    for (int i = 0; i <= kScanPoints; ++i) {
        const double gamma = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / kScanPoints);
        const double value = log_slope(scheme, frame_bits, gamma);
        if (value > best_value) {
            best_value = value;
            best_gamma = gamma;
        }
    }
    const double step = std::pow(10.0, (hi_exp - lo_exp) / kScanPoints);
    double a = best_gamma / step, b = best_gamma * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    for (int iter = 0; iter < 200 && (b - a) > 1e-12 * b; ++iter) {
        if (log_slope(scheme, frame_bits, c) > log_slope(scheme, frame_bits, d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    return 0.5 * (a + b);
}

double vmimo_break_even_snr(ModulationScheme scheme, int frame_bits) {
    if (frame_bits < 1) throw std::domain_error("frame_bits must be >= 1");
    const auto gap = [&](double x) {
        return 2.0 * efficiency_at(scheme, frame_bits, x / 2.0) -
               efficiency_at(scheme, frame_bits, x);
    };
    // The gap is negative at low SNR (splitting wrecks the branch SNR) and
    // approaches +1 as both efficiencies saturate; bracket the last crossing.
    constexpr int kScanPoints = 4000;
    const double lo_exp = -3.0, hi_exp = 5.0;
    double lo = -1.0, hi = -1.0;
    double prev_x = std::pow(10.0, lo_exp);
    double prev_gap = gap(prev_x);
    for (int i = 1; i <= kScanPoints; ++i) {
        const double x = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / kScanPoints);
        const double g = gap(x);
        if (prev_gap < 0.0 && g >= 0.0) {
            lo = prev_x;
            hi = x;
        }
        prev_x = x;
        prev_gap = g;
    }
    if (lo < 0.0) throw std::domain_error("no 2x2 break-even crossing found");
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double calibrate_link_gain(ModulationScheme scheme, int frame_bits, double claim_floor_mw,
                           double margin) {
    if (!(claim_floor_mw > 0.0)) throw std::domain_error("claim_floor_mw must be > 0");
    if (!(margin >= 1.0)) throw std::domain_error("margin must be >= 1");
    return margin * vmimo_break_even_snr(scheme, frame_bits) / claim_floor_mw;
}

double calibrate_cost_k(const GameConfig& config, double target_threshold_mw) {
    if (!(target_threshold_mw > 0.0))
        throw std::domain_error("target_threshold_mw must be > 0");
    GameConfig costless = config;
    costless.cost_k = 0.0;
    costless.validate();
    if (target_threshold_mw < costless.grid.p_min_mw ||
        target_threshold_mw > costless.grid.p_max_mw)
        throw std::domain_error("target threshold must lie inside the strategy grid range");
    const double gross = utility_vmimo(target_threshold_mw, costless).gross_utility;
    return gross / target_threshold_mw;
}

}  // namespace vmimo
