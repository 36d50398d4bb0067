#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "greenmo/babf.hpp"
#include "greenmo/channel.hpp"
#include "greenmo/equalize.hpp"
#include "greenmo/frontend.hpp"
#include "greenmo/waveform.hpp"

namespace greenmo {

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Receiver variants a trial can run side by side on the same channel draw.
enum class Receiver { greenmo, greenmo_random, greenmo_identity, dbf, hbf_full, hbf_partial, fdma };

Receiver parse_receiver(std::string_view name);
std::string_view to_string(Receiver r);

enum class Scenario { rayleigh, raytrace };
enum class SyncMode { aligned, offset };

struct SceneConfig {
    double room_x_m = 12.0;
    double room_y_m = 5.0;
    double ap_x_m = 6.0;
    double ap_y_m = 0.5;
    double gamma = 0.6;
    int max_reflections = 1;
    double carrier_hz = kDefaultCarrierHz;
    double antenna_spacing_m = 0.0;  // 0 = half wavelength
    double user_margin_m = 0.5;
    double min_user_distance_m = 1.0;
    std::vector<Vec2> users;  // fixed positions; empty = drawn per trial
};

struct ExperimentConfig {
    std::vector<Receiver> receivers{Receiver::greenmo};
    int users = 4;
    int antennas = 8;
    int vrf = 4;     // virtual chains (greenmo) and RF chains (hbf)
    int chains = 4;  // dbf chains
    double snr_db = 15.0;
    int trials = 10;
    std::uint64_t seed = 1;
    Scenario scenario = Scenario::rayleigh;
    SyncMode sync_mode = SyncMode::aligned;
    double max_offset_samples = 2.0;
    CombinerMethod combiner = CombinerMethod::zf;
    int workers = 1;
    std::string output = "results.csv";
    int channel_taps = 1;

    BabfConfig babf;
    double insertion_loss_db = 0.5;
    int quantizer_bits = 0;  // 0 = off
    NoisePoint noise_point = NoisePoint::combiner;
    OfdmConfig ofdm;
    SceneConfig scene;

    std::vector<int> sweep_antennas;     // empty = {antennas}
    std::vector<double> sweep_snr_db;    // empty = {snr_db}

    /// Throws ConfigError on inconsistent settings.
    void check() const;
};

/// Parses `key = value` lines. Keys are dotted (`babf.phi`, `scene.user0_x_m`);
/// `#` starts a comment. Unknown keys and malformed values are errors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Canonical `key = value` rendering of every setting, used for hashing and manifests.
std::string canonical_text(const ExperimentConfig& cfg);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace greenmo
