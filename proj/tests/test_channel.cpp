#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vmimo/channel.hpp"
#include "vmimo/modulation.hpp"

using namespace vmimo;

TEST_CASE("exogenous mode ignores the transmit power") {
    const ChannelModel model = ChannelModel::exogenous_db(5.0);
    const double gamma = db_to_linear(5.0);
    CHECK(received_snr(model, 0.0) == gamma);
    CHECK(received_snr(model, 1.0) == gamma);
    CHECK(received_snr(model, 50.0) == gamma);
    CHECK(received_snr(model, 50.0) == doctest::Approx(3.1622776601683795).epsilon(1e-12));
}

TEST_CASE("link budget mode is linear in the transmit power") {
    const ChannelModel model = ChannelModel::link_budget(0.1);
    CHECK(received_snr(model, 10.0) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uniform(0.01, 100.0);
    for (int i = 0; i < 100; ++i) {
        const double p = uniform(rng);
        const double scale = uniform(rng);
        CHECK(received_snr(model, scale * p) ==
              doctest::Approx(scale * received_snr(model, p)).epsilon(1e-12));
    }
}

TEST_CASE("reference-point construction recovers the reference exactly") {
    const double gamma_ref = db_to_linear(-5.0);
    const ChannelModel model = ChannelModel::link_budget_from_reference(1.0, gamma_ref);
    CHECK(std::fabs(received_snr(model, 1.0) - gamma_ref) <= 1e-12 * gamma_ref);
    CHECK(received_snr(model, 35.0) == doctest::Approx(11.067971810589328).epsilon(1e-12));
    CHECK(received_snr(model, 35.0) == doctest::Approx(11.068).epsilon(1e-4));
}

TEST_CASE("link budget rejects non-positive power") {
    const ChannelModel model = ChannelModel::link_budget(0.5);
    CHECK_THROWS_AS(received_snr(model, 0.0), std::domain_error);
    CHECK_THROWS_AS(received_snr(model, -1.0), std::domain_error);
    CHECK_THROWS_AS(received_snr(ChannelModel::exogenous(1.0), -1.0), std::domain_error);
}

TEST_CASE("model construction validates its parameters") {
    CHECK_THROWS_AS(ChannelModel::exogenous(0.0), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::exogenous(-1.0), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::link_budget(0.0), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::link_budget_from_reference(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(ChannelModel::link_budget_from_reference(1.0, -1.0), std::domain_error);
}

TEST_CASE("free-space gain matches the direct formula") {
    const double distance = 75.0;
    const double wavelength = 0.345;  // ~868 MHz
    const double noise_mw = 1e-9;
    const double gain = free_space_gain_per_mw(distance, wavelength, 1.0, 1.0, 1.0, noise_mw);
    const double four_pi_d = 4.0 * std::numbers::pi * distance;
    CHECK(gain == doctest::Approx(wavelength * wavelength / (four_pi_d * four_pi_d * noise_mw))
                      .epsilon(1e-12));

    const ChannelModel model = ChannelModel::link_budget(gain);
    CHECK(received_snr(model, 10.0) == doctest::Approx(10.0 * gain).epsilon(1e-12));
    CHECK_THROWS_AS(free_space_gain_per_mw(0.0, 0.3, 1.0, 1.0, 1.0, 1e-9), std::domain_error);
    CHECK_THROWS_AS(free_space_gain_per_mw(10.0, 0.3, 1.0, 1.0, 0.5, 1e-9), std::domain_error);
}
