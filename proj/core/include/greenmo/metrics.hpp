#pragma once

#include <span>

#include "greenmo/equalize.hpp"
#include "greenmo/waveform.hpp"

namespace greenmo {

inline constexpr double kSinrCapDb = 80.0;

struct TrialMetrics {
    std::vector<double> sinr_db;  // per user, true-channel
    double mean_sinr_db = 0.0;
    double evm_pct = 0.0;
    double evm_sinr_db = 0.0;
    double ber = 0.0;
    double goodput_bps = 0.0;
    double capacity_bps = 0.0;
    double se_bps_per_hz = 0.0;
    int users_ok = 0;
};

/// |P_ii|^2 / (sum_{j != i} |P_ij|^2 + noise), in dB, capped at +80 dB.
double sinr_from_row(std::span<const cplx> p_row, int user, double noise_power = 0.0);

/// Per-user SINR with P = V * Heff_true on every non-erased data bin. Signal,
/// interference and combined noise sum_c |V_ic|^2 sigma_c^2 are accumulated over
/// bins before the ratio is taken. chain_bin_noise holds per-bin noise variance per chain.
std::vector<double> sinr_db(const CombinerMatrix& v, const EffectiveChannel& heff_true,
                            std::span<const double> chain_bin_noise);

/// Sum over users of B * log2(1 + SINR).
double capacity_bps(std::span<const double> sinr_db, double bandwidth_hz);

struct GoodputBer {
    double goodput_bps = 0.0;
    double ber = 0.0;
    int users_ok = 0;
};

/// Packet-level accounting: a user contributes its full information rate only if
/// its decoded payload has no bit errors. BER pools all users' bits.
GoodputBer goodput_and_ber(const std::vector<Bits>& recovered, const std::vector<Bits>& sent, const OfdmConfig& cfg);

/// RMS error vector magnitude in percent over all users and symbols.
double evm_pct(const UserSymbols& equalized, const std::vector<std::vector<CVec>>& reference);

}  // namespace greenmo
