#pragma once

#include <span>

#include <Eigen/Dense>

#include "greenmo/types.hpp"

namespace greenmo {

/// One period of a 1/K duty-cycled on-off switching code. Code i is on in
/// slot i only. Indices are 0-based: code i here is c_{i+1} in 1-based notation.
struct SwitchCode {
    int num_slots = 1;
    int phase_index = 0;
    Bits bits;

    /// Value at sample n of the periodic repetition.
    std::uint8_t at(std::size_t n) const { return bits[n % bits.size()]; }
};

std::vector<SwitchCode> generate_codes(int num_slots);

/// DFT of the code repeated to num_samples. Nonzero only at multiples of
/// num_samples / K, each of magnitude num_samples / K and phase -2 pi i m / K.
CVec code_spectrum(const SwitchCode& code, std::size_t num_samples);

/// Harmonic phases of the code family: entries(i, j) = 2 pi i j / K for code i
/// at harmonic j (multiple j of the per-chain bandwidth).
struct PhaseMatrix {
    int order = 1;
    Eigen::MatrixXd entries;

    /// Elementwise exp(-j * entries).
    Eigen::MatrixXcd exponentiated() const;
};

PhaseMatrix phase_matrix(int num_slots);

/// Antenna drive sequence that is on in every slot of the listed codes.
Bits superpose(std::span<const SwitchCode> codes);

}  // namespace greenmo
