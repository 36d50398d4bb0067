#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "greenmo/config.hpp"
#include "greenmo/power.hpp"

namespace greenmo {

/// One (antenna count, SNR) point of a sweep.
struct GridPoint {
    int antennas = 0;
    double snr_db = 0.0;
};

std::vector<GridPoint> grid_points(const ExperimentConfig& cfg);

/// One receiver's outcome in one trial; one CSV row.
struct TrialRow {
    std::uint64_t trial_id = 0;
    Receiver receiver = Receiver::greenmo;
    int antennas = 0;
    int chains = 0;  // virtual chains, physical chains or FDMA channels
    int users = 0;
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> sinr_db;
    double mean_sinr_db = 0.0;
    double min_sinr_db = 0.0;
    double evm_pct = 0.0;
    double ber = 0.0;
    double goodput_bps = 0.0;
    double capacity_bps = 0.0;
    double se_bps_per_hz = 0.0;
    double total_mw = 0.0;
    double bits_per_joule = 0.0;
    std::string status = "ok";
};

/// Draws the channel, payloads and noise of one trial and runs every configured
/// receiver on the same draw. Randomness depends only on (seed, trial_index), so
/// grid points sharing a trial index see the same users and payloads.
std::vector<TrialRow> run_trial(const ExperimentConfig& cfg, const GridPoint& point, int trial_index,
                                std::uint64_t trial_id);

/// Per-trial user positions for the ray-traced scenario (fixed ones if configured).
std::vector<Vec2> draw_user_positions(const ExperimentConfig& cfg, Rng& rng);

std::string csv_header(int users);
std::string csv_row(const TrialRow& row);

struct SweepOptions {
    bool resume = false;
    bool write_manifest = true;
    /// Called after each trial's rows are committed, with (done, total) trial counts.
    std::function<void(std::size_t, std::size_t)> progress;
};

struct SweepResult {
    std::vector<TrialRow> rows;  // rows computed in this run, in trial_id order
    std::size_t skipped_trials = 0;
    std::uint64_t config_hash = 0;
};

/// Runs every grid point x trial, writing rows to cfg.output in trial_id order.
/// With resume, trial ids already present in the output are kept and skipped.
SweepResult run_sweep(const ExperimentConfig& cfg, const SweepOptions& opts = {});

/// Runs the sweep in memory without touching the file system.
std::vector<TrialRow> run_trials(const ExperimentConfig& cfg);

double median(std::vector<double> v);
double percentile(std::vector<double> v, double p);

/// Median of a column over the rows of one receiver (optionally one antenna count / SNR).
struct RowFilter {
    Receiver receiver = Receiver::greenmo;
    int antennas = -1;
    double snr_db = std::numeric_limits<double>::quiet_NaN();
};
std::vector<TrialRow> select_rows(const std::vector<TrialRow>& rows, const RowFilter& f);

/// Per (receiver, antennas, SNR) summary table as text.
void print_summary(std::ostream& out, const std::vector<TrialRow>& rows);

const char* version_string();

}  // namespace greenmo
