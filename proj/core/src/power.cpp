#include "greenmo/power.hpp"

#include <cmath>

#include "greenmo/types.hpp"

namespace greenmo {

Architecture parse_architecture(std::string_view name) {
    if (name == "greenmo") return Architecture::greenmo;
    if (name == "dbf") return Architecture::dbf;
    if (name == "hbf") return Architecture::hbf;
    if (name == "fdma") return Architecture::fdma;
    throw Error("unknown architecture '" + std::string(name) + "'");
}

std::string_view to_string(Architecture arch) {
    switch (arch) {
        case Architecture::greenmo: return "greenmo";
        case Architecture::dbf: return "dbf";
        case Architecture::hbf: return "hbf";
        case Architecture::fdma: return "fdma";
    }
    return "?";
}

PowerReport power(Architecture arch, int antennas, int chains, double per_chain_bw_hz, const PowerConstants& k) {
    if (antennas < 1 || chains < 1 || !(per_chain_bw_hz > 0.0)) throw Error("power: parameters must be positive");
    PowerReport r;
    const double sampled_mhz = chains * per_chain_bw_hz / 1e6;
    r.adc_mw = k.adc_mw_per_10mhz * sampled_mhz / 10.0;
    switch (arch) {
        case Architecture::greenmo:
            r.rfe_mw = k.rfe_single_mw;
            r.switch_mw = k.switch_mw * antennas;
            break;
        case Architecture::fdma:
            r.rfe_mw = k.rfe_single_mw;
            break;
        case Architecture::dbf:
        case Architecture::hbf:
            r.rfe_mw = k.rfe_per_chain_mw * chains;
            break;
    }
    r.total_mw = r.rfe_mw + r.switch_mw + r.adc_mw;
    return r;
}

PowerReport with_energy_efficiency(PowerReport report, double goodput_bps) {
    report.bits_per_joule = report.total_mw > 0.0 ? goodput_bps / (report.total_mw * 1e-3) : 0.0;
    return report;
}

double adc_power(double fom, int q, double fs_hz) {
    if (!(fom > 0.0) || q < 1 || !(fs_hz > 0.0)) throw Error("adc_power: parameters must be positive");
    return fom * std::ldexp(1.0, q) * fs_hz;
}

double calibrate_fom(double watts, int q, double fs_hz) {
    if (!(watts > 0.0) || q < 1 || !(fs_hz > 0.0)) throw Error("calibrate_fom: parameters must be positive");
    return watts / (std::ldexp(1.0, q) * fs_hz);
}

}  // namespace greenmo
