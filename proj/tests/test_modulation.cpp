#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vmimo/modulation.hpp"

using namespace vmimo;

namespace {

// Test-side oracle: the same closed forms evaluated in extended precision.
long double pe_oracle(ModulationScheme scheme, long double gamma) {
    switch (scheme) {
        case ModulationScheme::Fsk: return 0.5L * std::exp(-gamma / 2.0L);
        case ModulationScheme::Dpsk: return 0.5L * std::exp(-gamma);
        case ModulationScheme::Bpsk: return 0.5L * std::exp(-std::sqrt(gamma));
    }
    return -1.0L;
}

double rel_err(double value, long double reference) {
    return static_cast<double>(std::fabs(value - reference) /
                               std::max<long double>(std::fabs(reference), 1e-300L));
}

constexpr ModulationScheme kSchemes[] = {ModulationScheme::Fsk, ModulationScheme::Dpsk,
                                         ModulationScheme::Bpsk};

}  // namespace

TEST_CASE("bit error closed forms match the high-precision oracle") {
    for (ModulationScheme scheme : kSchemes) {
        for (int i = 0; i <= 300; ++i) {
            const double db = -15.0 + 30.0 * i / 300.0;
            const double gamma = db_to_linear(db);
            CHECK(rel_err(bit_error_probability(scheme, gamma), pe_oracle(scheme, gamma)) <
                  1e-13);
        }
    }
    CHECK(rel_err(bit_error_probability(ModulationScheme::Dpsk, 1.0), 0.5L * std::exp(-1.0L)) <
          1e-15);
    CHECK(bit_error_probability(ModulationScheme::Dpsk, 1.0) ==
          doctest::Approx(0.183940).epsilon(1e-5));
}

TEST_CASE("DPSK and BPSK coincide at unit SNR") {
    CHECK(bit_error_probability(ModulationScheme::Dpsk, 1.0) ==
          bit_error_probability(ModulationScheme::Bpsk, 1.0));
}

TEST_CASE("FSK error probability vanishes at high SNR") {
    CHECK(bit_error_probability(ModulationScheme::Fsk, 60.0) < 1e-13);
}

TEST_CASE("bit error is strictly decreasing over the operating range") {
    for (ModulationScheme scheme : kSchemes) {
        double previous = 1.0;
        for (int i = 0; i < 1000; ++i) {
            const double gamma = std::pow(10.0, -1.5 + 3.0 * i / 999.0);
            const double pe = bit_error_probability(scheme, gamma);
            CHECK(pe < previous);
            CHECK(pe > 0.0);
            CHECK(pe < 0.5);
            previous = pe;
        }
    }
}

TEST_CASE("scheme ordering flips at unit SNR") {
    for (double gamma : {0.05, 0.2, 0.5, 0.9, 0.99}) {
        CHECK(bit_error_probability(ModulationScheme::Bpsk, gamma) <
              bit_error_probability(ModulationScheme::Dpsk, gamma));
        CHECK(bit_error_probability(ModulationScheme::Dpsk, gamma) <
              bit_error_probability(ModulationScheme::Fsk, gamma));
    }
    for (double gamma : {1.01, 1.5, 3.0, 10.0, 31.0}) {
        CHECK(bit_error_probability(ModulationScheme::Dpsk, gamma) <
              bit_error_probability(ModulationScheme::Bpsk, gamma));
    }
}

TEST_CASE("bit error rejects non-positive and non-finite SNR") {
    for (ModulationScheme scheme : kSchemes) {
        CHECK_THROWS_AS(bit_error_probability(scheme, 0.0), std::domain_error);
        CHECK_THROWS_AS(bit_error_probability(scheme, -1.0), std::domain_error);
        CHECK_THROWS_AS(bit_error_probability(scheme, std::nan("")), std::domain_error);
        CHECK_THROWS_AS(
            bit_error_probability(scheme, std::numeric_limits<double>::infinity()),
            std::domain_error);
    }
}

TEST_CASE("efficiency function endpoints and shape") {
    CHECK(efficiency_function(0.0, 40) == 1.0);
    CHECK(efficiency_function(0.5, 40) == 0.0);
    CHECK(rel_err(efficiency_function(0.01, 40), std::pow(0.98L, 40)) < 1e-14);
    CHECK(efficiency_function(0.01, 40) == doctest::Approx(0.446).epsilon(1e-3));

    double previous = 1.1;
    for (int i = 0; i <= 100; ++i) {
        const double pe = 0.5 * i / 100.0;
        const double f = efficiency_function(pe, 40);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        CHECK(f < previous);
        previous = f;
    }
    // longer frames hurt at any fixed pe inside (0, 0.5)
    CHECK(efficiency_function(0.01, 80) < efficiency_function(0.01, 40));
    CHECK(efficiency_function(1e-15, 40) < 1.0);

    CHECK_THROWS_AS(efficiency_function(-0.01, 40), std::domain_error);
    CHECK_THROWS_AS(efficiency_function(0.51, 40), std::domain_error);
    CHECK_THROWS_AS(efficiency_function(0.1, 0), std::domain_error);
}

TEST_CASE("frame success and error are exact complements") {
    CHECK(frame_success_probability(0.0, 40) == 1.0);
    CHECK(frame_error_probability(0.0, 40) == 0.0);
    CHECK(frame_success_probability(1.0, 40) == 0.0);
    CHECK(frame_error_probability(1.0, 40) == 1.0);

    const double pe = bit_error_probability(ModulationScheme::Dpsk, 1.0);
    const long double expected = std::pow(1.0L - static_cast<long double>(pe), 40);
    CHECK(rel_err(frame_success_probability(pe, 40), expected) < 1e-13);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double p = uniform(rng);
        const int frame_bits = 1 + static_cast<int>(uniform(rng) * 63);
        const double success = frame_success_probability(p, frame_bits);
        const double error = frame_error_probability(p, frame_bits);
        CHECK(error == 1.0 - success);
        CHECK(std::fabs(success + error - 1.0) <= 1e-15);
    }

    CHECK_THROWS_AS(frame_success_probability(-0.1, 40), std::domain_error);
    CHECK_THROWS_AS(frame_success_probability(1.1, 40), std::domain_error);
}

TEST_CASE("frame success is monotone decreasing in pe") {
    double previous = 2.0;
    for (int i = 0; i <= 50; ++i) {
        const double pe = i / 50.0;
        const double success = frame_success_probability(pe, 40);
        CHECK(success < previous);
        previous = success;
    }
}

TEST_CASE("frame success agrees with Monte Carlo simulation") {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    constexpr int kFrames = 200000;
    for (int trial = 0; trial < 5; ++trial) {
        const double pe = std::pow(10.0, -3.5 * uniform(rng));  // in [10^-3.5, 1] * 0.5
        const int frame_bits = 1 + static_cast<int>(uniform(rng) * 63);
        const double theory = frame_success_probability(pe, frame_bits);
        int successes = 0;
        for (int f = 0; f < kFrames; ++f) {
            bool clean = true;
            for (int b = 0; b < frame_bits; ++b) {
                if (uniform(rng) < pe) {
                    clean = false;
                    break;
                }
            }
            if (clean) ++successes;
        }
        const double simulated = static_cast<double>(successes) / kFrames;
        const double sigma = std::sqrt(theory * (1.0 - theory) / kFrames);
        CHECK(std::fabs(simulated - theory) <= 3.0 * sigma);
    }
}

TEST_CASE("link quality keeps the linear and dB views consistent") {
    const LinkQuality from_db = LinkQuality::from_db(5.0);
    CHECK(from_db.gamma == doctest::Approx(3.1622776601683795).epsilon(1e-12));
    const LinkQuality from_linear = LinkQuality::from_linear(from_db.gamma);
    CHECK(from_linear.gamma_db == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_THROWS_AS(LinkQuality::from_linear(0.0), std::domain_error);
    CHECK_THROWS_AS(LinkQuality::from_linear(-2.0), std::domain_error);
}

TEST_CASE("frame format validation") {
    CHECK_NOTHROW((FrameFormat{32, 40, 1e6}.validate()));
    CHECK_THROWS_AS((FrameFormat{0, 40, 1e6}.validate()), std::domain_error);
    CHECK_THROWS_AS((FrameFormat{41, 40, 1e6}.validate()), std::domain_error);
    CHECK_THROWS_AS((FrameFormat{32, 40, 0.0}.validate()), std::domain_error);
}

TEST_CASE("modulation names round-trip") {
    for (ModulationScheme scheme : kSchemes)
        CHECK(modulation_from_string(to_string(scheme)) == scheme);
    CHECK(modulation_from_string("BPSK") == ModulationScheme::Bpsk);
    CHECK_THROWS_AS(modulation_from_string("qam"), std::domain_error);
}
