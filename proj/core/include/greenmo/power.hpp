#pragma once

#include <string>
#include <string_view>

namespace greenmo {

enum class Architecture { greenmo, dbf, hbf, fdma };

Architecture parse_architecture(std::string_view name);
std::string_view to_string(Architecture arch);

struct PowerConstants {
    double rfe_single_mw = 354.0;     // one downconversion chain shared by the array
    double rfe_per_chain_mw = 408.0;  // per dedicated chain
    double switch_mw = 1.0;           // per RF switch
    double adc_mw_per_10mhz = 100.0;  // per 10 MHz of sampled spectrum
};

struct PowerReport {
    double rfe_mw = 0.0;
    double switch_mw = 0.0;
    double adc_mw = 0.0;
    double total_mw = 0.0;
    double bits_per_joule = 0.0;
};

/// Power of one receiver. `chains` is the virtual chain count for greenmo, the
/// physical chain count for dbf/hbf and the user count for fdma (each user gets
/// its own per_chain_bw slice of a single wideband chain).
PowerReport power(Architecture arch, int antennas, int chains, double per_chain_bw_hz,
                  const PowerConstants& k = {});

/// Energy efficiency for a given goodput.
PowerReport with_energy_efficiency(PowerReport report, double goodput_bps);

/// P_ADC = FoM * 2^q * F_s (watts, with FoM in joules per conversion step).
double adc_power(double fom, int q, double fs_hz);
/// FoM that makes a q-bit ADC draw `watts` at fs_hz.
double calibrate_fom(double watts, int q, double fs_hz);

}  // namespace greenmo
