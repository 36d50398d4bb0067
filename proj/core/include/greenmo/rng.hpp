#pragma once

#include <cstdint>

#include "greenmo/types.hpp"

namespace greenmo {

/// Counter-based random stream.
///
/// Draw i of stream (master_seed, stream_id) is
///   splitmix64(key + (i + 1) * 0x9E3779B97F4A7C15)
/// with key = splitmix64(master_seed) ^ splitmix64(stream_id ^ 0xD1B54A32D192ED03).
/// Uniform doubles take the top 53 bits; normals use Box-Muller on two
/// uniforms. Nothing here depends on the standard library's distributions,
/// so sequences are identical on every platform.
class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    double normal();
    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_normal(double variance = 1.0);

    /// Independent child stream derived from this stream's identity (not its position).
    Rng split(std::uint64_t sub_id) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace greenmo
