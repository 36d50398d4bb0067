#include "greenmo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "greenmo/babf.hpp"
#include "greenmo/channel.hpp"
#include "greenmo/despread.hpp"
#include "greenmo/equalize.hpp"
#include "greenmo/frontend.hpp"
#include "greenmo/metrics.hpp"
#include "greenmo/waveform.hpp"

#ifndef GREENMO_VERSION
#define GREENMO_VERSION "0.0.0"
#endif

namespace greenmo {

namespace {

// Sub-stream ids under Rng(seed, trial_index).
constexpr std::uint64_t kStreamChannel = 1;
constexpr std::uint64_t kStreamPayload = 2;
constexpr std::uint64_t kStreamOffsets = 3;
constexpr std::uint64_t kStreamRandomS = 4;
constexpr std::uint64_t kStreamNoise = 100;

struct TrialDraw {
    ChannelSet chan;
    OfdmFrame frame;
    std::vector<Bits> payloads;
    std::vector<SampleStream> rx;  // per antenna, all users superposed
    Eigen::MatrixXcd h_ref;        // users x antennas at the reference subcarrier
};

// Reference subcarrier for analog weight selection: first positive data bin.
constexpr int kReferenceBin = 1;

ChannelSet draw_channel(const ExperimentConfig& cfg, int antennas, Rng rng) {
    const double spacing = cfg.ofdm.user_bandwidth_hz / OfdmConfig::kFftSize;
    if (cfg.scenario == Scenario::rayleigh)
        return rayleigh(cfg.users, antennas, OfdmConfig::kFftSize, rng, cfg.channel_taps, cfg.scene.carrier_hz, spacing);

    const auto& sc = cfg.scene;
    RoomScene scene = RoomScene::rectangular(sc.room_x_m, sc.room_y_m, sc.gamma);
    scene.ap = {sc.ap_x_m, sc.ap_y_m};
    const double d = sc.antenna_spacing_m > 0.0 ? sc.antenna_spacing_m : kSpeedOfLight / sc.carrier_hz / 2.0;
    scene.antenna_offsets = ula_offsets(antennas, d);
    scene.users = draw_user_positions(cfg, rng);
    ChannelSet chan = ray_trace(scene, OfdmConfig::kFftSize, sc.max_reflections, sc.carrier_hz, spacing);
    normalize_per_user(chan);
    return chan;
}

TrialDraw draw_trial(const ExperimentConfig& cfg, int antennas, int trial_index) {
    const Rng root(cfg.seed, static_cast<std::uint64_t>(trial_index));
    TrialDraw d;
    d.chan = draw_channel(cfg, antennas, root.split(kStreamChannel));

    Rng payload_rng = root.split(kStreamPayload);
    const std::size_t nbits = payload_capacity_bits(cfg.ofdm.payload_symbols);
    for (int u = 0; u < cfg.users; ++u) {
        Bits b(nbits);
        for (auto& bit : b) bit = static_cast<std::uint8_t>(payload_rng.next_u64() >> 63);
        d.payloads.push_back(std::move(b));
    }
    d.frame = build_frame(cfg.ofdm, d.payloads);

    if (cfg.sync_mode == SyncMode::offset) {
        Rng off_rng = root.split(kStreamOffsets);
        std::vector<double> offsets;
        for (int u = 0; u < cfg.users; ++u) offsets.push_back(off_rng.uniform(0.0, cfg.max_offset_samples));
        apply_timing_offsets(d.chan, offsets);
    }
    d.rx = apply(d.chan, d.frame.tx_streams, cfg.ofdm.cp_len);
    d.h_ref = d.chan.matrix(kReferenceBin);
    return d;
}

FrontendConfig frontend_config(const ExperimentConfig& cfg, double snr_db, int oversample) {
    FrontendConfig fe;
    fe.insertion_loss_db = cfg.insertion_loss_db;
    fe.snr_db = snr_db;
    if (cfg.quantizer_bits > 0) fe.quantizer_bits = cfg.quantizer_bits;
    fe.oversample_factor = oversample;
    fe.noise_point = cfg.noise_point;
    return fe;
}

// Digital back end shared by all chain-based receivers: estimate, combine, decode, score.
void finish_row(const ExperimentConfig& cfg, const TrialDraw& d, const std::vector<SampleStream>& chains,
                const ChainModel& model, TrialRow& row) {
    const ChainGrids grids = demodulate_chains(chains, cfg.ofdm.cp_len);
    const EffectiveChannel heff = estimate_channel(grids, d.frame);
    const CombinerMatrix v = cfg.combiner == CombinerMethod::zf ? zf_combiner(heff, cfg.babf.rank_tolerance)
                                                                : nullspace_combiner(heff, cfg.babf.rank_tolerance);
    const UserSymbols eq = apply_combiner(grids, v, d.frame);

    std::vector<Bits> recovered;
    for (int u = 0; u < cfg.users; ++u)
        recovered.push_back(recover_bits(eq[static_cast<std::size_t>(u)], d.frame.payload_len[static_cast<std::size_t>(u)]));
    const GoodputBer gb = goodput_and_ber(recovered, d.payloads, cfg.ofdm);

    const EffectiveChannel truth = true_effective_channel(d.chan, model);
    std::vector<double> noise;
    for (double s2 : model.noise_var) noise.push_back(bin_noise_variance(s2));
    row.sinr_db = sinr_db(v, truth, noise);
    row.evm_pct = evm_pct(eq, d.frame.data_symbols);
    row.ber = gb.ber;
    row.goodput_bps = gb.goodput_bps;
    if (std::any_of(v.erased.begin(), v.erased.end(), [](bool e) { return e; }) && row.status == "ok")
        row.status = "erased_bins";
}

SwitchMatrix greenmo_switches(const ExperimentConfig& cfg, const TrialDraw& d, Receiver r, int antennas,
                              int trial_index, TrialRow& row) {
    if (r == Receiver::greenmo_identity) return SwitchMatrix::identity(antennas, cfg.vrf);
    if (r == Receiver::greenmo_random) {
        Rng rng = Rng(cfg.seed, static_cast<std::uint64_t>(trial_index)).split(kStreamRandomS);
        return random_switch_matrix(antennas, cfg.vrf, rng);
    }
    SwitchMatrix per_user;
    try {
        const BabfResult res = babf_select(d.h_ref, cfg.babf);
        per_user = res.s;
        if (res.fallback_level > 0) row.status = "babf_fallback";
    } catch (const BabfFailure&) {
        row.status = "babf_failed";
        return SwitchMatrix::identity(antennas, cfg.vrf);
    }
    if (cfg.vrf == cfg.users) return per_user;
    // Spare virtual chains each listen to a single antenna.
    SwitchMatrix s(antennas, cfg.vrf);
    for (int k = 0; k < cfg.vrf; ++k)
        for (int m = 0; m < antennas; ++m)
            s.set(m, k, k < cfg.users ? per_user.at(m, k) : m == k % antennas);
    return s;
}

void run_fdma(const ExperimentConfig& cfg, const TrialDraw& d, const FrontendConfig& fe, Rng& noise_rng,
              TrialRow& row) {
    // Each user occupies its own B-wide channel and is received on antenna 0 alone.
    std::vector<Bits> recovered;
    double err_energy = 0.0, ref_energy = 0.0;
    const double spacing = d.chan.subcarrier_spacing_hz();
    for (int u = 0; u < cfg.users; ++u) {
        ChannelSet cu(1, 1, d.chan.bins(), d.chan.carrier_hz(), spacing);
        for (int f = 0; f < d.chan.bins(); ++f) cu.at(0, 0, f) = d.chan.at(u, 0, f);
        const OfdmFrame frame = build_frame(cfg.ofdm, {d.payloads[static_cast<std::size_t>(u)]});
        const auto rx = apply(cu, frame.tx_streams, cfg.ofdm.cp_len);
        Rng rng = noise_rng.split(static_cast<std::uint64_t>(u));
        const auto chains = capture_physical(rx, 1, fe, rng);
        const ChainGrids grids = demodulate_chains(chains, cfg.ofdm.cp_len);
        const EffectiveChannel heff = estimate_channel(grids, frame);
        const CombinerMatrix v = zf_combiner(heff, cfg.babf.rank_tolerance);
        const UserSymbols eq = apply_combiner(grids, v, frame);
        recovered.push_back(recover_bits(eq[0], frame.payload_len[0]));

        const ChainModel model = physical_model(1, 1, fe);
        const EffectiveChannel truth = true_effective_channel(cu, model);
        const double noise = bin_noise_variance(model.noise_var[0]);
        row.sinr_db.push_back(sinr_db(v, truth, std::span<const double>(&noise, 1))[0]);
        const double e = evm_pct(eq, frame.data_symbols) / 100.0;
        double ref = 0.0;
        for (const auto& sym : frame.data_symbols[0])
            for (const auto& x : sym) ref += std::norm(x);
        err_energy += e * e * ref;
        ref_energy += ref;
        if (std::any_of(v.erased.begin(), v.erased.end(), [](bool x) { return x; })) row.status = "erased_bins";
    }
    const GoodputBer gb = goodput_and_ber(recovered, d.payloads, cfg.ofdm);
    row.ber = gb.ber;
    row.goodput_bps = gb.goodput_bps;
    row.evm_pct = ref_energy > 0.0 ? 100.0 * std::sqrt(err_energy / ref_energy) : 0.0;
}

std::string fmt(double v, int prec) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

void write_manifest(const ExperimentConfig& cfg, std::uint64_t hash, std::size_t rows, std::size_t skipped) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    nlohmann::json j;
    j["tool"] = "greenmo";
    j["version"] = version_string();
    j["config_hash"] = hex;
    j["seed"] = cfg.seed;
    j["trials_per_point"] = cfg.trials;
    j["grid_points"] = grid_points(cfg).size();
    j["rows_written"] = rows;
    j["trials_resumed"] = skipped;
    j["config"] = canonical_text(cfg);
    std::ofstream out(cfg.output + ".manifest.json");
    if (!out) throw Error("cannot write manifest for '" + cfg.output + "'");
    out << j.dump(2) << '\n';
}

// Trial ids whose rows are complete in an existing output file.
std::set<std::uint64_t> completed_trials(const std::string& path, std::size_t receivers, const std::string& header) {
    std::set<std::uint64_t> done;
    std::ifstream in(path);
    if (!in) return done;
    std::string line;
    if (!std::getline(in, line)) return done;
    if (line != header) throw Error("resume: '" + path + "' has a different header");
    std::map<std::uint64_t, std::size_t> counts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        counts[std::stoull(line.substr(0, line.find(',')))]++;
    }
    for (const auto& [id, n] : counts)
        if (n == receivers) done.insert(id);
    return done;
}

}  // namespace

const char* version_string() { return GREENMO_VERSION; }

std::vector<GridPoint> grid_points(const ExperimentConfig& cfg) {
    const std::vector<int> ms = cfg.sweep_antennas.empty() ? std::vector<int>{cfg.antennas} : cfg.sweep_antennas;
    const std::vector<double> snrs = cfg.sweep_snr_db.empty() ? std::vector<double>{cfg.snr_db} : cfg.sweep_snr_db;
    std::vector<GridPoint> out;
    for (int m : ms)
        for (double s : snrs) out.push_back({m, s});
    return out;
}

std::vector<Vec2> draw_user_positions(const ExperimentConfig& cfg, Rng& rng) {
    const auto& sc = cfg.scene;
    if (!sc.users.empty()) return sc.users;
    const double lo_x = sc.user_margin_m, hi_x = sc.room_x_m - sc.user_margin_m;
    const double lo_y = sc.user_margin_m, hi_y = sc.room_y_m - sc.user_margin_m;
    if (!(hi_x > lo_x && hi_y > lo_y)) throw ConfigError("scene: user margin leaves no room for users");
    std::vector<Vec2> users;
    constexpr int kMaxDraws = 10000;
    for (int u = 0; u < cfg.users; ++u) {
        int tries = 0;
        while (true) {
            if (++tries > kMaxDraws) throw ConfigError("scene: cannot place users away from the AP");
            const Vec2 p{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
            if (std::hypot(p.x - sc.ap_x_m, p.y - sc.ap_y_m) >= sc.min_user_distance_m) {
                users.push_back(p);
                break;
            }
        }
    }
    return users;
}

std::vector<TrialRow> run_trial(const ExperimentConfig& cfg, const GridPoint& point, int trial_index,
                                std::uint64_t trial_id) {
    const TrialDraw d = draw_trial(cfg, point.antennas, trial_index);
    const Rng root(cfg.seed, static_cast<std::uint64_t>(trial_index));
    const double bw = cfg.ofdm.user_bandwidth_hz;

    std::vector<TrialRow> rows;
    for (Receiver r : cfg.receivers) {
        TrialRow row;
        row.trial_id = trial_id;
        row.receiver = r;
        row.antennas = point.antennas;
        row.users = cfg.users;
        row.snr_db = point.snr_db;
        row.seed = cfg.seed;
        Rng noise_rng = root.split(kStreamNoise + static_cast<std::uint64_t>(r));
        PowerReport pw;

        switch (r) {
            case Receiver::greenmo:
            case Receiver::greenmo_random:
            case Receiver::greenmo_identity: {
                row.chains = cfg.vrf;
                const SwitchMatrix s = greenmo_switches(cfg, d, r, point.antennas, trial_index, row);
                const FrontendConfig fe = frontend_config(cfg, point.snr_db, cfg.vrf);
                const SampleStream y = capture_switched(d.rx, s, fe, noise_rng);
                const VirtualChainSet vcs = time_despread(y, cfg.vrf);
                finish_row(cfg, d, vcs.chains, switched_model(s, fe), row);
                pw = power(Architecture::greenmo, point.antennas, cfg.vrf, bw);
                break;
            }
            case Receiver::dbf: {
                row.chains = cfg.chains;
                const FrontendConfig fe = frontend_config(cfg, point.snr_db, 1);
                const auto chains = capture_physical(d.rx, cfg.chains, fe, noise_rng);
                finish_row(cfg, d, chains, physical_model(point.antennas, cfg.chains, fe), row);
                pw = power(Architecture::dbf, point.antennas, cfg.chains, bw);
                break;
            }
            case Receiver::hbf_full:
            case Receiver::hbf_partial: {
                row.chains = cfg.vrf;
                const HybridMode mode = r == Receiver::hbf_full ? HybridMode::fully : HybridMode::partially;
                const Eigen::MatrixXcd w = hybrid_weights(d.h_ref, cfg.vrf, mode);
                const FrontendConfig fe = frontend_config(cfg, point.snr_db, 1);
                const auto chains = capture_hybrid(d.rx, w, mode, fe, noise_rng);
                finish_row(cfg, d, chains, hybrid_model(w, mode, fe), row);
                pw = power(Architecture::hbf, point.antennas, cfg.vrf, bw);
                break;
            }
            case Receiver::fdma: {
                row.chains = cfg.users;
                const FrontendConfig fe = frontend_config(cfg, point.snr_db, 1);
                run_fdma(cfg, d, fe, noise_rng, row);
                pw = power(Architecture::fdma, 1, cfg.users, bw);
                break;
            }
        }

        row.mean_sinr_db = 0.0;
        for (double s : row.sinr_db) row.mean_sinr_db += s;
        row.mean_sinr_db /= static_cast<double>(row.sinr_db.size());
        row.min_sinr_db = *std::min_element(row.sinr_db.begin(), row.sinr_db.end());
        row.capacity_bps = capacity_bps(row.sinr_db, bw);
        row.se_bps_per_hz = row.capacity_bps / bw;
        pw = with_energy_efficiency(pw, row.goodput_bps);
        row.total_mw = pw.total_mw;
        row.bits_per_joule = pw.bits_per_joule;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string csv_header(int users) {
    std::string h = "trial_id,arch,M,K,users,snr_db,seed";
    for (int u = 0; u < users; ++u) h += ",sinr_db_u" + std::to_string(u);
    h += ",mean_sinr_db,ber,goodput_bps,capacity_bps,se,total_mw,bits_per_joule,status";
    return h;
}

std::string csv_row(const TrialRow& r) {
    std::string s = std::to_string(r.trial_id) + ',' + std::string(to_string(r.receiver)) + ',' +
                    std::to_string(r.antennas) + ',' + std::to_string(r.chains) + ',' + std::to_string(r.users) + ',' +
                    fmt(r.snr_db, 2) + ',' + std::to_string(r.seed);
    for (double v : r.sinr_db) s += ',' + fmt(v, 4);
    s += ',' + fmt(r.mean_sinr_db, 4) + ',' + fmt(r.ber, 6) + ',' + fmt(r.goodput_bps, 1) + ',' +
         fmt(r.capacity_bps, 1) + ',' + fmt(r.se_bps_per_hz, 4) + ',' + fmt(r.total_mw, 2) + ',' +
         fmt(r.bits_per_joule, 1) + ',' + r.status;
    return s;
}

namespace {

struct Task {
    GridPoint point;
    int trial_index;
    std::uint64_t trial_id;
};

std::vector<Task> all_tasks(const ExperimentConfig& cfg) {
    std::vector<Task> tasks;
    const auto points = grid_points(cfg);
    for (std::size_t p = 0; p < points.size(); ++p)
        for (int t = 0; t < cfg.trials; ++t)
            tasks.push_back({points[p], t, static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(cfg.trials) +
                                               static_cast<std::uint64_t>(t)});
    return tasks;
}

// Runs tasks on cfg.workers threads; `commit` sees results strictly in task order.
void run_ordered(const ExperimentConfig& cfg, const std::vector<Task>& tasks,
                 const std::function<void(std::size_t, std::vector<TrialRow>&)>& commit) {
    std::vector<std::vector<TrialRow>> results(tasks.size());
    std::vector<char> ready(tasks.size(), 0);
    std::vector<std::exception_ptr> errors(tasks.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};

    auto worker = [&] {
        while (!abort) {
            const std::size_t i = next++;
            if (i >= tasks.size()) break;
            std::vector<TrialRow> rows;
            std::exception_ptr err;
            try {
                rows = run_trial(cfg, tasks[i].point, tasks[i].trial_index, tasks[i].trial_id);
            } catch (...) {
                err = std::current_exception();
            }
            {
                std::lock_guard lock(mu);
                results[i] = std::move(rows);
                errors[i] = err;
                ready[i] = 1;
            }
            cv.notify_all();
        }
    };

    const int n_workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);

    std::exception_ptr failure;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return ready[i] != 0; });
        if (errors[i]) {
            failure = errors[i];
            abort = true;
            break;
        }
        std::vector<TrialRow> rows = std::move(results[i]);
        lock.unlock();
        try {
            commit(i, rows);
        } catch (...) {
            failure = std::current_exception();
            abort = true;
            break;
        }
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<TrialRow> run_trials(const ExperimentConfig& cfg) {
    cfg.check();
    std::vector<TrialRow> out;
    run_ordered(cfg, all_tasks(cfg), [&](std::size_t, std::vector<TrialRow>& rows) {
        for (auto& r : rows) out.push_back(std::move(r));
    });
    return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const SweepOptions& opts) {
    cfg.check();
    SweepResult result;
    result.config_hash = fnv1a64(canonical_text(cfg));
    const std::string header = csv_header(cfg.users);

    std::set<std::uint64_t> done;
    if (opts.resume) done = completed_trials(cfg.output, cfg.receivers.size(), header);

    std::vector<Task> pending;
    for (const auto& t : all_tasks(cfg)) {
        if (done.count(t.trial_id)) ++result.skipped_trials;
        else pending.push_back(t);
    }

    // On resume, keep only complete trials from the old file; rewrite it in id order at the end.
    std::map<std::uint64_t, std::vector<std::string>> kept;
    if (!done.empty()) {
        std::ifstream in(cfg.output);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto id = std::stoull(line.substr(0, line.find(',')));
            if (done.count(id)) kept[id].push_back(line);
        }
    }

    const std::string tmp = cfg.output + ".partial";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp + "'");
        out << header << '\n';
        auto flush_kept_below = [&](std::uint64_t id) {
            while (!kept.empty() && kept.begin()->first < id) {
                for (const auto& l : kept.begin()->second) out << l << '\n';
                kept.erase(kept.begin());
            }
        };
        const std::size_t total = pending.size() + result.skipped_trials;
        run_ordered(cfg, pending, [&](std::size_t i, std::vector<TrialRow>& rows) {
            flush_kept_below(pending[i].trial_id);
            for (auto& r : rows) {
                out << csv_row(r) << '\n';
                result.rows.push_back(std::move(r));
            }
            out.flush();
            if (opts.progress) opts.progress(result.skipped_trials + i + 1, total);
        });
        flush_kept_below(std::numeric_limits<std::uint64_t>::max());
        if (!out) throw Error("write error on '" + tmp + "'");
    }
    std::filesystem::rename(tmp, cfg.output);
    if (opts.write_manifest) write_manifest(cfg, result.config_hash, result.rows.size(), result.skipped_trials);
    return result;
}

double median(std::vector<double> v) { return percentile(std::move(v), 50.0); }

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const double pos = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<TrialRow> select_rows(const std::vector<TrialRow>& rows, const RowFilter& f) {
    std::vector<TrialRow> out;
    for (const auto& r : rows) {
        if (r.receiver != f.receiver) continue;
        if (f.antennas >= 0 && r.antennas != f.antennas) continue;
        if (!std::isnan(f.snr_db) && r.snr_db != f.snr_db) continue;
        out.push_back(r);
    }
    return out;
}

void print_summary(std::ostream& out, const std::vector<TrialRow>& rows) {
    std::map<std::tuple<int, int, double>, std::vector<const TrialRow*>> groups;
    for (const auto& r : rows) groups[{static_cast<int>(r.receiver), r.antennas, r.snr_db}].push_back(&r);
    out << std::left << std::setw(18) << "arch" << std::right << std::setw(5) << "M" << std::setw(8) << "snr"
        << std::setw(8) << "trials" << std::setw(12) << "med_sinr" << std::setw(12) << "med_min" << std::setw(12)
        << "goodput" << std::setw(10) << "ber" << std::setw(10) << "mW" << '\n';
    for (const auto& [key, g] : groups) {
        std::vector<double> sinr, min_sinr, good, ber;
        for (const auto* r : g) {
            sinr.push_back(r->mean_sinr_db);
            min_sinr.push_back(r->min_sinr_db);
            good.push_back(r->goodput_bps);
            ber.push_back(r->ber);
        }
        double mean_good = 0.0, mean_ber = 0.0;
        for (double x : good) mean_good += x / static_cast<double>(good.size());
        for (double x : ber) mean_ber += x / static_cast<double>(ber.size());
        out << std::left << std::setw(18) << to_string(g.front()->receiver) << std::right << std::setw(5)
            << std::get<1>(key) << std::setw(8) << fmt(std::get<2>(key), 1) << std::setw(8) << g.size()
            << std::setw(12) << fmt(median(sinr), 2) << std::setw(12) << fmt(median(min_sinr), 2) << std::setw(12)
            << fmt(mean_good / 1e6, 2) << std::setw(10) << fmt(mean_ber, 5) << std::setw(10)
            << fmt(g.front()->total_mw, 0) << '\n';
    }
}

}  // namespace greenmo
