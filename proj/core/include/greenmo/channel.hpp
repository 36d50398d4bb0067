#pragma once

#include <span>

#include <Eigen/Dense>

#include "greenmo/rng.hpp"
#include "greenmo/signal.hpp"
#include "greenmo/types.hpp"

namespace greenmo {

/// Per-user, per-antenna, per-subcarrier complex gains, frozen for one packet.
/// Subcarriers are in natural DFT order (bin f has signed index signed_bin(f, F)).
class ChannelSet {
public:
    ChannelSet() = default;
    ChannelSet(int users, int antennas, int bins, double carrier_hz, double subcarrier_spacing_hz);

    int users() const { return users_; }
    int antennas() const { return antennas_; }
    int bins() const { return bins_; }
    double carrier_hz() const { return carrier_hz_; }
    double subcarrier_spacing_hz() const { return spacing_hz_; }

    cplx& at(int user, int antenna, int bin) { return gains_[index(user, antenna, bin)]; }
    const cplx& at(int user, int antenna, int bin) const { return gains_[index(user, antenna, bin)]; }

    /// users x antennas matrix at one subcarrier.
    Eigen::MatrixXcd matrix(int bin) const;
    void check() const;

private:
    std::size_t index(int u, int m, int f) const {
        return (static_cast<std::size_t>(u) * static_cast<std::size_t>(antennas_) + static_cast<std::size_t>(m)) *
                   static_cast<std::size_t>(bins_) +
               static_cast<std::size_t>(f);
    }

    int users_ = 0;
    int antennas_ = 0;
    int bins_ = 0;
    double carrier_hz_ = 0.0;
    double spacing_hz_ = 0.0;
    CVec gains_;
};

inline constexpr double kDefaultCarrierHz = 2.4e9;
inline constexpr double kDefaultSubcarrierSpacingHz = 10e6 / 64.0;

/// I.i.d. unit-variance Rayleigh gains. With taps > 1 each link is an
/// equal-power tapped delay line (integer sample delays 0..taps-1).
ChannelSet rayleigh(int users, int antennas, int bins, Rng& rng, int taps = 1,
                    double carrier_hz = kDefaultCarrierHz,
                    double subcarrier_spacing_hz = kDefaultSubcarrierSpacingHz);

/// Builds gains from impulse responses; taps[u * antennas + m][l] is the gain at delay l samples.
ChannelSet from_taps(int users, int antennas, int bins, std::span<const CVec> taps,
                     double carrier_hz = kDefaultCarrierHz,
                     double subcarrier_spacing_hz = kDefaultSubcarrierSpacingHz);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Wall {
    Vec2 a;
    Vec2 b;
    double gamma = 0.6;
};

struct RoomScene {
    double room_x_m = 12.0;
    double room_y_m = 5.0;
    std::vector<Wall> walls;
    Vec2 ap;
    std::vector<Vec2> users;
    std::vector<Vec2> antenna_offsets;

    /// Four boundary walls of a room_x by room_y rectangle with the given reflection coefficient.
    static RoomScene rectangular(double room_x_m, double room_y_m, double gamma);
    void check() const;
};

/// Offsets of a uniform linear array along x, centred on the AP.
std::vector<Vec2> ula_offsets(int antennas, double spacing_m);

struct PropagationPath {
    double length_m = 0.0;
    int bounces = 0;
    double gamma_product = 1.0;
};

/// Image-source paths from src to dst with up to max_reflections specular bounces.
std::vector<PropagationPath> trace_paths(const RoomScene& scene, Vec2 src, Vec2 dst, int max_reflections);

/// Gain of each path: gamma^bounces / d * exp(-j 2 pi (f_c + f_sc) d / c), summed.
ChannelSet ray_trace(const RoomScene& scene, int bins, int max_reflections,
                     double carrier_hz = kDefaultCarrierHz,
                     double subcarrier_spacing_hz = kDefaultSubcarrierSpacingHz);

/// Scales each user's gains to unit mean power over antennas and subcarriers (uplink power control).
void normalize_per_user(ChannelSet& chan);

/// Applies a per-user timing offset (in samples) as a linear phase across subcarriers.
void apply_timing_offsets(ChannelSet& chan, std::span<const double> offsets_samples);

/// Per-antenna received streams. Streams are processed in OFDM symbol blocks
/// (cp_len + bins samples); each block's body is circularly filtered by the
/// per-subcarrier gains and the cyclic prefix is regenerated.
std::vector<SampleStream> apply(const ChannelSet& chan, std::span<const SampleStream> tx, int cp_len);

}  // namespace greenmo
