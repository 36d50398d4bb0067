#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "greenmo/rng.hpp"
#include "greenmo/signal.hpp"
#include "greenmo/switch_matrix.hpp"

namespace greenmo {

/// Where thermal noise enters the switched receive path.
///   combiner: one noise source after the switch combiner (the single LNA/ADC path).
///   antenna:  independent noise per antenna ahead of the switches, so a virtual
///             chain combining n antennas carries n noise contributions.
/// Hybrid phase-shifter front ends always see per-antenna noise through their weights.
enum class NoisePoint { antenna, combiner };

struct FrontendConfig {
    double insertion_loss_db = 0.5;
    /// Per-antenna, per-user SNR referenced to signal_power; nullopt = noiseless.
    std::optional<double> snr_db = 15.0;
    std::optional<int> quantizer_bits;
    int oversample_factor = 1;
    /// Mean per-sample power of one user's signal at one antenna.
    double signal_power = 1.0;
    NoisePoint noise_point = NoisePoint::combiner;

    /// Per-sample noise variance at one antenna (0 when noiseless).
    double noise_variance() const;
    double insertion_amplitude() const { return std::pow(10.0, -insertion_loss_db / 20.0); }
    void check() const;
};

enum class HybridMode { fully, partially };

/// Linear description of a front end: chains = combining^T * antennas + noise,
/// with independent noise of the given per-sample variance on each chain.
struct ChainModel {
    Eigen::MatrixXcd combining;  // antennas x chains
    std::vector<double> noise_var;
};

/// Single-chain switched capture at K*B. Each antenna is band-limited
/// interpolated to K*B, gated by its row of the switch matrix, attenuated by
/// the insertion loss and summed; noise is calibrated so that a despread chain
/// fed by one antenna sees the configured SNR. Optional uniform quantization.
SampleStream capture_switched(std::span<const SampleStream> antennas, const SwitchMatrix& s,
                              const FrontendConfig& cfg, Rng& rng);

/// One dedicated chain per antenna for the first num_chains antennas.
std::vector<SampleStream> capture_physical(std::span<const SampleStream> antennas, int num_chains,
                                           const FrontendConfig& cfg, Rng& rng);

/// Phase-shifter network: chain k = sum_m weights(m, k) * (antenna m + noise). Nonzero weights
/// must be unit modulus. In partially-connected mode weights outside chain k's
/// contiguous block of M/K antennas are forced to zero.
std::vector<SampleStream> capture_hybrid(std::span<const SampleStream> antennas, const Eigen::MatrixXcd& weights,
                                         HybridMode mode, const FrontendConfig& cfg, Rng& rng);

/// Phase-only weights steering chain k at user k (mod users): conj(h)/|h|.
Eigen::MatrixXcd hybrid_weights(const Eigen::MatrixXcd& h_ref, int chains, HybridMode mode);

ChainModel switched_model(const SwitchMatrix& s, const FrontendConfig& cfg);
ChainModel physical_model(int antennas, int num_chains, const FrontendConfig& cfg);
ChainModel hybrid_model(const Eigen::MatrixXcd& weights, HybridMode mode, const FrontendConfig& cfg);

/// Uniform mid-rise quantizer on I and Q with full scale set by the block's peak component.
CVec quantize(std::span<const cplx> x, int bits);

}  // namespace greenmo
