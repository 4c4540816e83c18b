#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vmimo/energy.hpp"

using namespace vmimo;

TEST_CASE("amplifier power reduces to the identity when alpha is zero") {
    const AmplifierParams ideal{1.0, 1.0};
    CHECK(ideal.alpha() == 0.0);
    CHECK(amplifier_power(10.0, ideal) == 10.0);
    CHECK(amplifier_power(0.0, ideal) == 0.0);
}

TEST_CASE("amplifier overhead at 35% drain efficiency") {
    const AmplifierParams params{0.35, 1.0};
    // (1 + alpha) = xi/eta = 1/0.35
    CHECK(amplifier_power(10.0, params) == doctest::Approx(28.571428571428573).epsilon(1e-12));
    CHECK(amplifier_power(10.0, params) == doctest::Approx(28.571).epsilon(1e-4));
}

TEST_CASE("amplifier power is linear in the transmit power") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uniform(0.0, 100.0);
    const AmplifierParams params{0.35, 1.2};
    for (int i = 0; i < 100; ++i) {
        const double scale = uniform(rng);
        const double p = uniform(rng);
        const double lhs = amplifier_power(scale * p, params);
        const double rhs = scale * amplifier_power(p, params);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("amplifier power rejects negative input and bad parameters") {
    CHECK_THROWS_AS(amplifier_power(-1.0, (AmplifierParams{0.35, 1.0})), std::domain_error);
    CHECK_THROWS_AS(amplifier_power(1.0, (AmplifierParams{0.0, 1.0})), std::domain_error);
    CHECK_THROWS_AS(amplifier_power(1.0, (AmplifierParams{1.5, 1.0})), std::domain_error);
    CHECK_THROWS_AS(amplifier_power(1.0, (AmplifierParams{0.35, 0.5})), std::domain_error);
}

namespace {

CircuitPowerParams all_ones() {
    return CircuitPowerParams{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
}

}  // namespace

TEST_CASE("circuit power block structure") {
    CHECK(circuit_power(CircuitPowerParams{}, AntennaConfig{1, 1}) == 0.0);
    CHECK(circuit_power(CircuitPowerParams{}, AntennaConfig{3, 2}) == 0.0);
    // 3 transmit blocks + 2 synthesizers + 5 receive blocks
    CHECK(circuit_power(all_ones(), AntennaConfig{1, 1}) == 10.0);
    CHECK(circuit_power(all_ones(), AntennaConfig{2, 2}) == 18.0);
}

TEST_CASE("circuit power never decreases with more antennas") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uniform(0.0, 50.0);
    for (int i = 0; i < 50; ++i) {
        const CircuitPowerParams params{uniform(rng), uniform(rng), uniform(rng), uniform(rng),
                                        uniform(rng), uniform(rng), uniform(rng), uniform(rng)};
        for (int n = 1; n <= 4; ++n) {
            CHECK(circuit_power(params, AntennaConfig{n + 1, n}) >=
                  circuit_power(params, AntennaConfig{n, n}));
            CHECK(circuit_power(params, AntennaConfig{n, n + 1}) >=
                  circuit_power(params, AntennaConfig{n, n}));
        }
    }
}

TEST_CASE("total power composes the amplifier and circuit terms") {
    CHECK(total_power(0.0, 0.0) == 0.0);
    CHECK(total_power(28.571, 18.0) == doctest::Approx(46.571).epsilon(1e-12));

    const AmplifierParams amp{0.35, 1.0};
    const double p_pa = amplifier_power(10.0, amp);
    const double p_c = circuit_power(all_ones(), AntennaConfig{2, 2});
    // independent recomputation of the chained pieces
    const double expected = (1.0 / 0.35) * 10.0 + (2.0 * 3.0 + 2.0 + 2.0 * 5.0);
    CHECK(total_power(p_pa, p_c) == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(total_power(-1.0, 0.0), std::domain_error);
}

TEST_CASE("per-node split uses the smaller antenna count") {
    CHECK(per_node_transmit_power(40.0, AntennaConfig{1, 1}) == 40.0);
    CHECK(per_node_transmit_power(40.0, AntennaConfig{2, 2}) == 20.0);
    CHECK(per_node_transmit_power(40.0, AntennaConfig{3, 2}) == 20.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uniform(0.0, 1000.0);
    for (int i = 0; i < 100; ++i) {
        const double p = uniform(rng);
        CHECK(per_node_transmit_power(p, AntennaConfig{1, 1}) == p);
    }
    CHECK_THROWS_AS(per_node_transmit_power(-5.0, (AntennaConfig{1, 1})), std::domain_error);
}

TEST_CASE("antenna and circuit validation") {
    CHECK_THROWS_AS((AntennaConfig{0, 1}.validate()), std::domain_error);
    CHECK_THROWS_AS((AntennaConfig{1, -2}.validate()), std::domain_error);
    CircuitPowerParams bad;
    bad.lna_mw = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
