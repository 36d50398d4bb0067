#pragma once

#include <Eigen/Dense>

#include "greenmo/rng.hpp"
#include "greenmo/switch_matrix.hpp"

namespace greenmo {

struct BabfConfig {
    double phi = kPi / 3.0;        // in-phase window half-width
    double rank_tolerance = 1e-9;  // relative singular-value cutoff
    int max_fallbacks = 64;
    void check() const;
};

struct BabfResult {
    SwitchMatrix s;
    Eigen::MatrixXi scores;  // users x antennas: in-phase group size with antenna m as pivot
    int fallback_level = 0;  // 0 = first choice was full rank
};

/// Raised when no full-rank selection is found within max_fallbacks.
class BabfFailure : public Error {
public:
    using Error::Error;
};

/// Binarized analog beamforming. For user i and pivot antenna m the group is every
/// antenna whose channel phase lies within +-phi of antenna m's; column i of S is the
/// largest group for user i. If H*S is rank deficient, joint selections are walked in
/// decreasing total score until one is full rank.
///
/// h_ref is users x antennas (one subcarrier). Ties prefer the lower pivot index;
/// identical groups from different pivots count once.
BabfResult babf_select(const Eigen::MatrixXcd& h_ref, const BabfConfig& cfg);

/// Uniform random binary matrix, redrawn until every column is nonempty and it has full column rank.
SwitchMatrix random_switch_matrix(int antennas, int slots, Rng& rng);

}  // namespace greenmo
