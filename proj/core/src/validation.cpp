#include "greenmo/validation.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "greenmo/babf.hpp"
#include "greenmo/codes.hpp"
#include "greenmo/despread.hpp"
#include "greenmo/experiment.hpp"
#include "greenmo/linalg.hpp"
#include "greenmo/metrics.hpp"
#include "greenmo/power.hpp"

namespace greenmo {

namespace {

std::string num(double v, int prec = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

std::vector<double> column(const std::vector<TrialRow>& rows, Receiver r, int antennas = -1) {
    std::vector<double> out;
    for (const auto& row : select_rows(rows, {r, antennas}))
        out.push_back(row.mean_sinr_db);
    return out;
}

// The fixed 8x4 office scene used for the S-selection comparison.
std::vector<Vec2> fixed_office_users() { return {{2.5, 3.5}, {5.0, 4.2}, {7.5, 2.5}, {10.0, 4.0}}; }

struct NoiselessOutcome {
    double leakage_db = -std::numeric_limits<double>::infinity();
    std::size_t bit_errors = 0;
    std::size_t bits = 0;
};

// Noiseless switched pipeline on one channel draw; leakage from the true effective channel.
NoiselessOutcome noiseless_switched(const ChannelSet& chan, const SwitchMatrix& s, const std::vector<Bits>& payloads) {
    OfdmConfig ofdm;
    ofdm.payload_symbols = 2;
    const OfdmFrame frame = build_frame(ofdm, payloads);
    const auto rx = apply(chan, frame.tx_streams, ofdm.cp_len);
    FrontendConfig fe;
    fe.snr_db.reset();
    fe.oversample_factor = s.slots();
    Rng unused(0, 0);
    const SampleStream y = capture_switched(rx, s, fe, unused);
    const auto chains = time_despread(y, s.slots()).chains;
    const ChainGrids grids = demodulate_chains(chains, ofdm.cp_len);
    const EffectiveChannel est = estimate_channel(grids, frame);
    const CombinerMatrix v = zf_combiner(est);
    const UserSymbols eq = apply_combiner(grids, v, frame);
    const EffectiveChannel truth = true_effective_channel(chan, switched_model(s, fe));

    NoiselessOutcome out;
    for (std::size_t b = 0; b < truth.bins.size(); ++b) {
        if (v.erased[b]) continue;
        const Eigen::MatrixXcd p = v.v[b] * truth.matrices[b];
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            double interf = 0.0;
            for (Eigen::Index j = 0; j < p.cols(); ++j)
                if (j != i) interf += std::norm(p(i, j));
            const double ratio = interf > 0.0 ? linear_to_db(interf / std::norm(p(i, i))) : -400.0;
            out.leakage_db = std::max(out.leakage_db, ratio);
        }
    }
    for (std::size_t u = 0; u < payloads.size(); ++u) {
        const Bits got = recover_bits(eq[u], frame.payload_len[u]);
        for (std::size_t i = 0; i < got.size(); ++i) out.bit_errors += got[i] != payloads[u][i];
        out.bits += got.size();
    }
    return out;
}

}  // namespace

ValidationScale ValidationScale::quick() {
    ValidationScale s;
    s.despread_inputs_per_k = 10;
    s.virtual_physical_trials_per_snr = 20;
    s.interference_scenarios = 30;
    s.babf_trials = 30;
    s.hardening_trials = 20;
    s.large_array_trials = 6;
    s.sync_trials = 20;
    s.determinism_trials = 2;
    return s;
}

std::string format_check(const CheckResult& r) {
    std::string id = r.id;
    if (id.size() < 3) id.insert(0, 3 - id.size(), ' ');
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + id + "  " + r.name + ": " + r.measured;
}

CheckResult check_code_math() {
    CheckResult r{"1", "code math exactness", true, ""};
    double worst_mag = 0.0, worst_phase = 0.0, worst_leak = 0.0, worst_unitary = 0.0;
    for (int k : {1, 2, 4, 8}) {
        const auto codes = generate_codes(k);
        for (int n = 0; n < k; ++n) {
            int sum = 0;
            for (const auto& c : codes) sum += c.at(static_cast<std::size_t>(n));
            if (sum != 1) r.passed = false;
        }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                int dot = 0;
                for (int n = 0; n < k; ++n)
                    dot += codes[static_cast<std::size_t>(i)].at(static_cast<std::size_t>(n)) *
                           codes[static_cast<std::size_t>(j)].at(static_cast<std::size_t>(n));
                if (dot != (i == j ? 1 : 0)) r.passed = false;
            }
        constexpr std::size_t n_samples = 64;
        const std::size_t step = n_samples / static_cast<std::size_t>(k);
        for (const auto& c : codes) {
            const CVec spec = code_spectrum(c, n_samples);
            for (std::size_t b = 0; b < n_samples; ++b) {
                if (b % step == 0) {
                    const double m = static_cast<double>(b / step);
                    worst_mag = std::max(worst_mag, std::abs(std::abs(spec[b]) - static_cast<double>(step)));
                    const double want = -2.0 * kPi * c.phase_index * m / k;
                    worst_phase = std::max(worst_phase, std::abs(wrap_angle(std::arg(spec[b]) - want)));
                } else {
                    worst_leak = std::max(worst_leak, std::abs(spec[b]));
                }
            }
        }
        const Eigen::MatrixXcd e = phase_matrix(k).exponentiated();
        const Eigen::MatrixXcd gram = e * e.adjoint() / static_cast<double>(k);
        worst_unitary = std::max(worst_unitary, (gram - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff());
    }
    // K = 4, code index 1: {0, -90, -180, -270} degrees at harmonics {0, B, 2B, 3B}.
    const CVec c1 = code_spectrum(generate_codes(4)[1], 64);
    double worst_example = 0.0;
    for (int h = 0; h < 4; ++h)
        worst_example = std::max(worst_example,
                                 std::abs(wrap_angle(std::arg(c1[static_cast<std::size_t>(16 * h)]) + h * kPi / 2.0)));
    r.passed = r.passed && worst_mag < 1e-9 && worst_phase < 1e-9 && worst_leak < 1e-9 && worst_unitary < 1e-12 &&
               worst_example < 1e-9;
    r.measured = "max |mag err| " + sci(worst_mag) + ", max phase err " + sci(worst_phase) + " rad, off-harmonic " +
                 sci(worst_leak) + ", K=4 code 1 phase err " + sci(worst_example) + " rad";
    return r;
}

CheckResult check_despread_equivalence(const ValidationScale& s) {
    CheckResult r{"2", "time/frequency despread equivalence", true, ""};
    double worst = 0.0;
    for (int k : {1, 2, 4, 8}) {
        Rng rng(2002, static_cast<std::uint64_t>(k));
        for (int t = 0; t < s.despread_inputs_per_k; ++t) {
            CVec y(static_cast<std::size_t>(k) * 160);
            for (auto& v : y) v = rng.complex_normal();
            const SampleStream ys(std::move(y), 10e6 * k);
            const auto a = time_despread(ys, k);
            const auto b = freq_despread(ys, k);
            for (int c = 0; c < k; ++c)
                for (std::size_t n = 0; n < a.chains[static_cast<std::size_t>(c)].size(); ++n)
                    worst = std::max(worst, std::abs(a.chains[static_cast<std::size_t>(c)].samples[n] -
                                                     b.chains[static_cast<std::size_t>(c)].samples[n]));
        }
    }
    r.passed = worst < 1e-9;
    r.measured = "max abs error " + sci(worst) + " over " + std::to_string(4 * s.despread_inputs_per_k) + " inputs";
    return r;
}

CheckResult check_virtual_vs_physical(const ValidationScale& s) {
    CheckResult r{"3", "virtual vs physical chains (S=I, M=K=4)", false, ""};
    ExperimentConfig cfg;
    cfg.receivers = {Receiver::greenmo_identity, Receiver::dbf};
    cfg.users = 4;
    cfg.antennas = 4;
    cfg.vrf = 4;
    cfg.chains = 4;
    cfg.scenario = Scenario::rayleigh;
    cfg.sweep_snr_db = {17.0, 18.0, 19.0, 20.0};
    cfg.trials = s.virtual_physical_trials_per_snr;
    cfg.seed = 3;
    cfg.workers = s.workers;
    const auto rows = run_trials(cfg);
    const auto v = column(rows, Receiver::greenmo_identity);
    const auto p = column(rows, Receiver::dbf);
    std::vector<double> paired;
    for (std::size_t i = 0; i < v.size(); ++i) paired.push_back(v[i] - p[i]);
    const double diff = median(v) - median(p);
    r.passed = std::abs(diff) <= 0.5;
    r.measured = "median virtual " + num(median(v), 2) + " dB, physical " + num(median(p), 2) + " dB, difference " +
                 num(diff, 3) + " dB (median paired " + num(median(paired), 3) + " dB, " + std::to_string(v.size()) +
                 " trials)";
    return r;
}

CheckResult check_interference_floor(const ValidationScale& s) {
    CheckResult r{"4", "noiseless interference floor", false, ""};
    Rng rng(4004, 0);
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t errors = 0, bits = 0;
    int run = 0, skipped = 0;
    for (int t = 0; t < s.interference_scenarios; ++t) {
        const int m = 1 + static_cast<int>(rng.below(8));
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        const int taps = 1 + static_cast<int>(rng.below(4));
        Rng chan_rng = rng.split(static_cast<std::uint64_t>(t));
        const ChannelSet chan = rayleigh(k, m, OfdmConfig::kFftSize, chan_rng, taps);
        SwitchMatrix sw;
        switch (t % 3) {
            case 0:
                try {
                    sw = babf_select(chan.matrix(1), {}).s;
                } catch (const BabfFailure&) {
                    ++skipped;
                    continue;
                }
                break;
            case 1: {
                Rng srng = chan_rng.split(1);
                sw = random_switch_matrix(m, k, srng);
                break;
            }
            default:
                sw = SwitchMatrix::identity(m, k);
        }
        bool full_rank = true;
        for (int f : used_bins())
            full_rank = full_rank && has_full_column_rank(chan.matrix(f) * sw.as_matrix().cast<cplx>(), 1e-6);
        if (!full_rank) {
            ++skipped;
            continue;
        }
        std::vector<Bits> payloads;
        Rng prng = chan_rng.split(2);
        for (int u = 0; u < k; ++u) {
            Bits b(payload_capacity_bits(2));
            for (auto& bit : b) bit = static_cast<std::uint8_t>(prng.next_u64() >> 63);
            payloads.push_back(std::move(b));
        }
        const auto o = noiseless_switched(chan, sw, payloads);
        worst = std::max(worst, o.leakage_db);
        errors += o.bit_errors;
        bits += o.bits;
        ++run;
    }
    r.passed = run > 0 && worst < -60.0 && errors == 0;
    r.measured = "worst leakage " + num(worst, 1) + " dBc, bit errors " + std::to_string(errors) + "/" +
                 std::to_string(bits) + " over " + std::to_string(run) + " scenarios (" + std::to_string(skipped) +
                 " rank-deficient skipped)";
    return r;
}

CheckResult check_babf_vs_random(const ValidationScale& s) {
    CheckResult r{"5", "BABF vs random S (fixed 8x4 office scene)", false, ""};
    ExperimentConfig cfg;
    cfg.receivers = {Receiver::greenmo, Receiver::greenmo_random};
    cfg.users = 4;
    cfg.antennas = 8;
    cfg.vrf = 4;
    cfg.scenario = Scenario::raytrace;
    cfg.scene.users = fixed_office_users();
    cfg.trials = s.babf_trials;
    cfg.seed = 5;
    cfg.workers = s.workers;
    const auto rows = run_trials(cfg);
    const double b = median(column(rows, Receiver::greenmo));
    const double rnd = median(column(rows, Receiver::greenmo_random));
    r.passed = b - rnd >= 3.0;
    r.measured = "median BABF " + num(b, 2) + " dB, random " + num(rnd, 2) + " dB, gap " + num(b - rnd, 2) +
                 " dB (need >= 3)";
    return r;
}

CheckResult check_antenna_hardening(const ValidationScale& s) {
    CheckResult r{"6", "antenna hardening M=4,6,8 (K=4, ray-traced)", false, ""};
    ExperimentConfig cfg;
    cfg.receivers = {Receiver::greenmo};
    cfg.users = 4;
    cfg.vrf = 4;
    cfg.scenario = Scenario::raytrace;
    cfg.sweep_antennas = {4, 6, 8};
    cfg.trials = s.hardening_trials;
    cfg.seed = 6;
    cfg.workers = s.workers;
    const auto rows = run_trials(cfg);
    std::vector<double> med;
    for (int m : cfg.sweep_antennas) med.push_back(median(column(rows, Receiver::greenmo, m)));
    const bool increasing = med[0] < med[1] && med[1] < med[2];
    int above = 0, total = 0;
    for (const auto& row : select_rows(rows, {Receiver::greenmo, 8})) {
        ++total;
        above += row.min_sinr_db > 10.0;
    }
    const double frac = total > 0 ? static_cast<double>(above) / total : 0.0;
    r.passed = increasing && frac >= 0.9;
    r.measured = "medians " + num(med[0], 2) + " / " + num(med[1], 2) + " / " + num(med[2], 2) + " dB (" +
                 (increasing ? "increasing" : "not increasing") + "), M=8 trials with all users > 10 dB: " +
                 num(100.0 * frac, 1) + "% (need >= 90%)";
    return r;
}

CheckResult check_large_array_ordering(const ValidationScale& s) {
    CheckResult r{"7", "64-antenna / 8-user ordering", false, ""};
    ExperimentConfig cfg;
    cfg.receivers = {Receiver::greenmo, Receiver::dbf, Receiver::hbf_full, Receiver::hbf_partial};
    cfg.users = 8;
    cfg.antennas = 64;
    cfg.vrf = 8;
    cfg.chains = 64;
    cfg.scenario = Scenario::raytrace;
    cfg.trials = s.large_array_trials;
    cfg.seed = 7;
    cfg.workers = s.workers;
    const auto rows = run_trials(cfg);
    const double g = median(column(rows, Receiver::greenmo));
    const double d = median(column(rows, Receiver::dbf));
    const double full = median(column(rows, Receiver::hbf_full));
    const double part = median(column(rows, Receiver::hbf_partial));
    const double gap = d - g;
    const bool order = part < g && g <= full;
    const bool full_close = std::abs(full - d) <= 3.0;
    const bool gap_ok = gap >= 3.0 && gap <= 7.0;
    r.passed = order && full_close && gap_ok;
    r.measured = "median partial " + num(part, 2) + ", greenmo " + num(g, 2) + ", full " + num(full, 2) + ", dbf " +
                 num(d, 2) + " dB; ordering " + (order ? "ok" : "violated") + ", |full-dbf| " +
                 num(std::abs(full - d), 2) + " dB (<= 3), dbf-greenmo gap " + num(gap, 2) + " dB (need 3..7)";
    return r;
}

CheckResult check_power_arithmetic() {
    CheckResult r{"8", "power arithmetic", false, ""};
    const double g = power(Architecture::greenmo, 8, 4, 10e6).total_mw;
    const double d4 = power(Architecture::dbf, 4, 4, 10e6).total_mw;
    const double f = power(Architecture::fdma, 1, 4, 10e6).total_mw;
    const double d8 = power(Architecture::dbf, 8, 8, 10e6).total_mw;
    const double fom = calibrate_fom(0.1, 12, 10e6);
    const bool linear = adc_power(fom, 12, 40e6) == 4.0 * adc_power(fom, 12, 10e6) &&
                        adc_power(fom, 13, 10e6) == 2.0 * adc_power(fom, 12, 10e6);
    r.passed = g == 762.0 && d4 == 2032.0 && f == 754.0 && d8 == 4064.0 && linear;
    r.measured = "greenmo " + num(g, 1) + ", dbf4 " + num(d4, 1) + ", fdma " + num(f, 1) + ", dbf8 " + num(d8, 1) +
                 " mW; ADC linearity " + (linear ? "exact" : "broken");
    return r;
}

CheckResult check_rate_capacity() {
    CheckResult r{"9", "rate and capacity anchors", false, ""};
    OfdmConfig ofdm;
    std::vector<Bits> sent(4, Bits(payload_capacity_bits(ofdm.payload_symbols), 1));
    const double goodput = goodput_and_ber(sent, sent, ofdm).goodput_bps;
    const std::vector<double> snr(4, 15.0);
    const double cap = capacity_bps(snr, 10e6);
    r.passed = std::abs(goodput - 48e6) < 1e-6 && cap >= 195e6 && cap <= 205e6;
    r.measured = "error-free goodput " + num(goodput / 1e6, 3) + " Mb/s, capacity at 15 dB over 4x10 MHz " +
                 num(cap / 1e6, 2) + " Mb/s";
    return r;
}

CheckResult check_sync_insensitivity(const ValidationScale& s) {
    CheckResult r{"10", "sync insensitivity (aligned vs offset)", false, ""};
    ExperimentConfig cfg;
    cfg.receivers = {Receiver::greenmo};
    cfg.scenario = Scenario::rayleigh;
    cfg.trials = s.sync_trials;
    cfg.seed = 10;
    cfg.workers = s.workers;
    const double aligned = median(column(run_trials(cfg), Receiver::greenmo));
    cfg.sync_mode = SyncMode::offset;
    const double offset = median(column(run_trials(cfg), Receiver::greenmo));
    r.passed = std::abs(aligned - offset) < 1.0;
    r.measured = "median aligned " + num(aligned, 2) + " dB, offset " + num(offset, 2) + " dB, difference " +
                 num(aligned - offset, 3) + " dB";
    return r;
}

CheckResult check_determinism(const ValidationScale& s) {
    CheckResult r{"11", "sweep determinism", false, ""};
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() /
                         ("greenmo-determinism-" + std::to_string(fnv1a64(std::to_string(reinterpret_cast<std::uintptr_t>(&r)))));
    fs::create_directories(dir);
    ExperimentConfig cfg;
    cfg.receivers = {Receiver::greenmo, Receiver::greenmo_random, Receiver::dbf};
    cfg.sweep_antennas = {4, 8};
    cfg.trials = s.determinism_trials;
    cfg.seed = 11;
    auto run = [&](const std::string& name, int workers) {
        cfg.output = (dir / name).string();
        cfg.workers = workers;
        SweepOptions opts;
        opts.write_manifest = false;
        run_sweep(cfg, opts);
        std::ifstream in(cfg.output, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = run("a.csv", 1);
    const std::string b = run("b.csv", 1);
    const std::string c = run("c.csv", 2);
    std::error_code ec;
    fs::remove_all(dir, ec);
    r.passed = !a.empty() && a == b && a == c;
    r.measured = std::to_string(a.size()) + " bytes; repeat " + (a == b ? "identical" : "differs") + ", 2 workers " +
                 (a == c ? "identical" : "differs");
    return r;
}

std::vector<CheckResult> run_acceptance(const ValidationScale& s) {
    return {check_code_math(),
            check_despread_equivalence(s),
            check_virtual_vs_physical(s),
            check_interference_floor(s),
            check_babf_vs_random(s),
            check_antenna_hardening(s),
            check_large_array_ordering(s),
            check_power_arithmetic(),
            check_rate_capacity(),
            check_sync_insensitivity(s),
            check_determinism(s)};
}

std::vector<CheckResult> run_invariants(const ValidationScale&) {
    std::vector<CheckResult> out;

    {  // Corrupting the phase-matrix sign must break despread equivalence.
        CheckResult r{"inv.mutation", "corrupted phase matrix is detected", false, ""};
        Rng rng(9001, 0);
        CVec y(4 * 160);
        for (auto& v : y) v = rng.complex_normal();
        const SampleStream ys(std::move(y), 40e6);
        const auto a = time_despread(ys, 4);
        const auto b = detail::freq_despread_signed(ys, 4, +1);
        double worst = 0.0;
        for (int c = 0; c < 4; ++c)
            for (std::size_t n = 0; n < a.chains[static_cast<std::size_t>(c)].size(); ++n)
                worst = std::max(worst, std::abs(a.chains[static_cast<std::size_t>(c)].samples[n] -
                                                 b.chains[static_cast<std::size_t>(c)].samples[n]));
        r.passed = worst > 1e-3;
        r.measured = "max abs error with flipped sign " + sci(worst);
        out.push_back(r);
    }
    {  // Despread chain noise matches the configured SNR.
        CheckResult r{"inv.noise", "despread chain noise calibration", false, ""};
        constexpr int k = 4;
        constexpr std::size_t n = 1 << 17;
        std::vector<SampleStream> silent(2, SampleStream(CVec(n, cplx{}), 10e6));
        SwitchMatrix s = SwitchMatrix::identity(2, k);
        FrontendConfig fe;
        fe.snr_db = 15.0;
        fe.oversample_factor = k;
        Rng rng(9002, 0);
        const auto chains = time_despread(capture_switched(silent, s, fe, rng), k).chains;
        const double measured = mean_power(chains[0].samples) * db_to_linear(-20.0 * std::log10(fe.insertion_amplitude()));
        const double err = linear_to_db(measured / fe.noise_variance());
        r.passed = std::abs(err) <= 0.3;
        r.measured = "chain noise vs configured " + num(err, 3) + " dB over " + std::to_string(n) + " samples";
        out.push_back(r);
    }
    {  // S = I switched capture reproduces physical chains after delay compensation.
        CheckResult r{"inv.equivalence", "S=I switched chains equal physical chains", false, ""};
        Rng rng(9003, 0);
        std::vector<SampleStream> ant;
        for (int m = 0; m < 4; ++m) {
            CVec x(4 * 64);
            for (auto& v : x) v = rng.complex_normal();
            ant.emplace_back(std::move(x), 10e6);
        }
        FrontendConfig fe;
        fe.snr_db.reset();
        fe.insertion_loss_db = 0.0;
        fe.oversample_factor = 4;
        const auto v = time_despread(capture_switched(ant, SwitchMatrix::identity(4, 4), fe, rng), 4).chains;
        const auto p = capture_physical(ant, 4, fe, rng);
        double worst = 0.0;
        for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < v[c].size(); ++i) worst = std::max(worst, std::abs(v[c].samples[i] - p[c].samples[i]));
        r.passed = worst < 1e-6;
        r.measured = "max abs error " + sci(worst);
        out.push_back(r);
    }
    {  // Noiseless identity pipeline decodes perfectly with capped SINR.
        CheckResult r{"inv.ideal", "noiseless S=I pipeline is error free", false, ""};
        Rng rng(9004, 0);
        const ChannelSet chan = rayleigh(4, 4, OfdmConfig::kFftSize, rng);
        std::vector<Bits> payloads;
        for (int u = 0; u < 4; ++u) {
            Bits b(payload_capacity_bits(2));
            for (auto& bit : b) bit = static_cast<std::uint8_t>(rng.next_u64() >> 63);
            payloads.push_back(std::move(b));
        }
        const auto o = noiseless_switched(chan, SwitchMatrix::identity(4, 4), payloads);
        r.passed = o.bit_errors == 0 && o.leakage_db < -60.0;
        r.measured = "bit errors " + std::to_string(o.bit_errors) + ", leakage " + num(o.leakage_db, 1) + " dBc";
        out.push_back(r);
    }
    {  // Control word round trip.
        CheckResult r{"inv.hex", "switch matrix hex round trip", true, ""};
        Rng rng(9005, 0);
        int cases = 0;
        for (int k : {1, 3, 4, 5, 8}) {
            for (int t = 0; t < 20; ++t) {
                const SwitchMatrix s = random_switch_matrix(8, k, rng);
                r.passed = r.passed && SwitchMatrix::from_hex(s.to_hex(), 8, k) == s;
                ++cases;
            }
        }
        r.measured = std::to_string(cases) + " random matrices";
        out.push_back(r);
    }
    {  // BABF is a pure function of the channel.
        CheckResult r{"inv.babf", "BABF deterministic and full rank", true, ""};
        Rng rng(9006, 0);
        int full = 0, total = 0;
        for (int t = 0; t < 50; ++t) {
            const ChannelSet chan = rayleigh(4, 8, 1, rng);
            const Eigen::MatrixXcd h = chan.matrix(0);
            try {
                const auto a = babf_select(h, {});
                const auto b = babf_select(h, {});
                r.passed = r.passed && a.s == b.s;
                full += has_full_column_rank(h * a.s.as_matrix().cast<cplx>(), 1e-9);
                ++total;
            } catch (const BabfFailure&) {
            }
        }
        r.passed = r.passed && full == total && total > 0;
        r.measured = std::to_string(full) + "/" + std::to_string(total) + " selections full rank";
        out.push_back(r);
    }
    return out;
}

}  // namespace greenmo
