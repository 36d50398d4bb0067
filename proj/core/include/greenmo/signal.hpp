#pragma once

#include <span>

#include "greenmo/rng.hpp"
#include "greenmo/types.hpp"

namespace greenmo {

/// Complex baseband samples at a fixed rate.
struct SampleStream {
    CVec samples;
    double rate_hz = 1.0;

    SampleStream() = default;
    SampleStream(CVec s, double rate);

    std::size_t size() const { return samples.size(); }
    /// Throws if empty, rate not positive or any sample non-finite.
    void check() const;
};

// DFT conventions: forward unnormalized, inverse scaled by 1/N. Bin k maps to
// frequency k * rate / N; bins at or above N/2 are negative frequencies.
CVec dft(std::span<const cplx> x);
CVec idft(std::span<const cplx> x);

/// Signed frequency index of natural-order bin k in an n-point DFT, in [-n/2, n/2).
int signed_bin(std::size_t k, std::size_t n);
/// Natural-order index of the bin displayed at position i after an fftshift.
std::size_t fftshift_index(std::size_t i, std::size_t n);
CVec fftshift(std::span<const cplx> x);

/// Circular fractional delay: multiplies bin k by exp(-j 2 pi f_k d), with
/// f_k the signed frequency in cycles/sample. Positive delay shifts later.
SampleStream fractional_delay(const SampleStream& x, double delay_samples);
CVec fractional_delay(std::span<const cplx> x, double delay_samples);

/// Periodic band-limited interpolation by an integer factor (zero insertion in
/// the frequency domain). Output sample factor*n equals input sample n.
CVec upsample_bandlimited(std::span<const cplx> x, int factor);

SampleStream add_awgn(const SampleStream& x, double noise_power, Rng& rng);

double mean_power(std::span<const cplx> x);

}  // namespace greenmo
