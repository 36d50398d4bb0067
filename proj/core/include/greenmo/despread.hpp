#pragma once

#include <Eigen/Dense>

#include "greenmo/signal.hpp"

namespace greenmo {

/// K virtual chains at rate B extracted from one K*B stream.
struct VirtualChainSet {
    std::vector<SampleStream> chains;
    std::vector<int> slot_of_chain;
};

/// Chain k = samples K*n + k, without delay compensation.
std::vector<CVec> time_slice(const SampleStream& y, int k);
/// Inverse of time_slice.
CVec interleave_chains(const std::vector<CVec>& chains);

/// Canonical path: slice by slot, then delay chain k by k/K of a B-rate sample so
/// that every chain refers to the sampling instants of chain 0.
VirtualChainSet time_despread(const SampleStream& y, int k);

/// Harmonic zones of the K*B spectrum: row z holds the Ns bins centred on
/// harmonic z*B, indexed by the chain-rate bin q (natural order). Natural bin m
/// of the wide DFT lands in row (m - s(q)) / Ns mod K, column q = m mod Ns,
/// with s(q) the signed chain bin.
Eigen::MatrixXcd spectrum_zones(const SampleStream& y, int k);

/// Validation path: zones mixed by conj(exp(-jP)) / K, then an inverse DFT per row.
VirtualChainSet freq_despread(const SampleStream& y, int k);

namespace detail {
/// freq_despread with the phase-matrix exponent sign exposed; sign = -1 is the
/// correct inversion, +1 is a deliberately corrupted matrix used by validation.
VirtualChainSet freq_despread_signed(const SampleStream& y, int k, int sign);
}  // namespace detail

}  // namespace greenmo
