#include <gtest/gtest.h>

#include "greenmo/power.hpp"
#include "greenmo/types.hpp"

using namespace greenmo;

TEST(Power, ReferenceTotals) {
    EXPECT_EQ(power(Architecture::greenmo, 8, 4, 10e6).total_mw, 762.0);
    EXPECT_EQ(power(Architecture::dbf, 4, 4, 10e6).total_mw, 2032.0);
    EXPECT_EQ(power(Architecture::dbf, 8, 8, 10e6).total_mw, 4064.0);
    EXPECT_EQ(power(Architecture::fdma, 1, 4, 10e6).total_mw, 754.0);
    const auto g = power(Architecture::greenmo, 8, 4, 10e6);
    EXPECT_EQ(g.rfe_mw, 354.0);
    EXPECT_EQ(g.switch_mw, 8.0);
    EXPECT_EQ(g.adc_mw, 400.0);
}

TEST(Power, GreenmoGrowsOnlyBySwitchesWithAntennas) {
    const double a = power(Architecture::greenmo, 8, 4, 10e6).total_mw;
    const double b = power(Architecture::greenmo, 64, 4, 10e6).total_mw;
    EXPECT_EQ(b - a, 56.0);
}

TEST(Power, EnergyEfficiency) {
    const auto r = with_energy_efficiency(power(Architecture::greenmo, 8, 4, 10e6), 48e6);
    EXPECT_NEAR(r.bits_per_joule, 48e6 / 0.762, 1e-3);
    EXPECT_EQ(with_energy_efficiency(PowerReport{}, 1.0).bits_per_joule, 0.0);
}

TEST(Power, AdcModelScalesLinearlyInRateAndExponentiallyInBits) {
    const double fom = calibrate_fom(0.1, 12, 10e6);
    EXPECT_NEAR(adc_power(fom, 12, 10e6), 0.1, 1e-15);
    EXPECT_EQ(adc_power(fom, 12, 40e6), 4.0 * adc_power(fom, 12, 10e6));
    EXPECT_EQ(adc_power(fom, 13, 10e6), 2.0 * adc_power(fom, 12, 10e6));
    EXPECT_THROW(adc_power(fom, 0, 1.0), Error);
}

TEST(Power, NamesRoundTripAndErrors) {
    for (auto a : {Architecture::greenmo, Architecture::dbf, Architecture::hbf, Architecture::fdma})
        EXPECT_EQ(parse_architecture(to_string(a)), a);
    EXPECT_THROW(parse_architecture("mimo"), Error);
    EXPECT_THROW(power(Architecture::dbf, 0, 1, 1.0), Error);
}
