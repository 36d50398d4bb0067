#pragma once

#include <span>

#include <Eigen/Dense>

#include "greenmo/channel.hpp"
#include "greenmo/frontend.hpp"
#include "greenmo/waveform.hpp"

namespace greenmo {

/// Demodulated chains: [chain][OFDM symbol][64 natural-order bins].
using ChainGrids = std::vector<std::vector<CVec>>;

ChainGrids demodulate_chains(std::span<const SampleStream> chains, int cp_len);

/// Effective chains x users channel on each used subcarrier (H[f] * S in
/// antenna-to-chain terms). bins[i] is the natural-order bin of matrices[i].
struct EffectiveChannel {
    std::vector<int> bins;
    std::vector<Eigen::MatrixXcd> matrices;

    int chains() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
    int users() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().cols()); }
    /// Position of a natural-order bin in `bins`; throws if absent.
    std::size_t position(int bin) const;
    void check() const;
};

/// Least-squares estimate from each user's LTS slots, averaged over repetitions.
EffectiveChannel estimate_channel(const ChainGrids& grids, const OfdmFrame& frame);
EffectiveChannel estimate_channel(std::span<const SampleStream> chains, const OfdmFrame& frame);

/// Ground truth: combining^T * H[f]^T on every used bin.
EffectiveChannel true_effective_channel(const ChannelSet& chan, const ChainModel& model);

enum class CombinerMethod { zf, nullspace };

/// Per-bin users x chains combining matrices; erased bins carry zeros.
struct CombinerMatrix {
    CombinerMethod method = CombinerMethod::zf;
    std::vector<int> bins;
    std::vector<Eigen::MatrixXcd> v;
    std::vector<bool> erased;
};

inline constexpr double kDefaultRankTolerance = 1e-9;

/// Pseudo-inverse per bin. Bins without full column rank are erased.
CombinerMatrix zf_combiner(const EffectiveChannel& heff, double rank_tolerance = kDefaultRankTolerance);
/// Per user, the projection onto the left null space of the other users' columns,
/// scaled for unit gain on the own column. Bins where that space is empty are erased.
CombinerMatrix nullspace_combiner(const EffectiveChannel& heff, double rank_tolerance = kDefaultRankTolerance);

/// Equalized payload data symbols: [user][payload symbol][48].
using UserSymbols = std::vector<std::vector<CVec>>;

UserSymbols apply_combiner(const ChainGrids& grids, const CombinerMatrix& v, const OfdmFrame& frame);
UserSymbols zf_combine(const ChainGrids& grids, const EffectiveChannel& heff, const OfdmFrame& frame);
UserSymbols nullspace_combine(const ChainGrids& grids, const EffectiveChannel& heff, const OfdmFrame& frame);

/// Per-bin noise variance after OFDM demodulation for a chain with per-sample variance `sample_var`.
double bin_noise_variance(double sample_var);

}  // namespace greenmo
