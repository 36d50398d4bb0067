#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "greenmo/codes.hpp"
#include "greenmo/experiment.hpp"
#include "greenmo/power.hpp"
#include "greenmo/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;

struct RunFlags {
    std::string config;
    std::string out;
    int workers = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool resume = false;
    bool quiet = false;
};

greenmo::ExperimentConfig load(const RunFlags& f) {
    greenmo::ExperimentConfig cfg = f.config.empty() ? greenmo::ExperimentConfig{} : greenmo::load_config(f.config);
    if (!f.out.empty()) cfg.output = f.out;
    if (f.workers > 0) cfg.workers = f.workers;
    if (f.seed_set) cfg.seed = f.seed;
    cfg.check();
    return cfg;
}

int run(greenmo::ExperimentConfig cfg, const RunFlags& f) {
    greenmo::SweepOptions opts;
    opts.resume = f.resume;
    if (!f.quiet) {
        opts.progress = [](std::size_t done, std::size_t total) {
            std::fprintf(stderr, "\r%zu/%zu trials", done, total);
            if (done == total) std::fputc('\n', stderr);
        };
    }
    const auto result = greenmo::run_sweep(cfg, opts);
    if (result.skipped_trials > 0) std::cerr << "resumed: skipped " << result.skipped_trials << " completed trials\n";
    greenmo::print_summary(std::cout, result.rows);
    std::cout << "wrote " << cfg.output << '\n';
    return kExitOk;
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("-c,--config", f.config, "experiment config file (key = value)");
    cmd->add_option("-o,--out", f.out, "output CSV path (overrides config)");
    cmd->add_option("-w,--workers", f.workers, "parallel trial workers")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "master seed (overrides config)")->each([&f](const std::string&) { f.seed_set = true; });
    cmd->add_flag("--resume", f.resume, "keep completed trials already in the output file");
    cmd->add_flag("-q,--quiet", f.quiet, "no progress output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Switched-antenna virtual RF chain link-level simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", greenmo::version_string());

    RunFlags sim_flags, sweep_flags;
    auto* simulate = app.add_subcommand("simulate", "run one configuration (ignores sweep.* lists)");
    add_run_flags(simulate, sim_flags);
    auto* sweep = app.add_subcommand("sweep", "run the architecture x antenna x SNR x trial grid");
    add_run_flags(sweep, sweep_flags);

    int code_k = 4;
    std::size_t code_samples = 64;
    auto* codes = app.add_subcommand("codes", "print switching codes and their spectra as CSV");
    codes->add_option("-k,--slots", code_k, "number of slots / virtual chains")->check(CLI::Range(1, 64));
    codes->add_option("-n,--samples", code_samples, "DFT length (multiple of k)");

    std::string arch;
    int antennas = 8, chains = 4;
    double bw = 10e6;
    double goodput = 0.0;
    auto* pw = app.add_subcommand("power", "power model table");
    pw->add_option("-a,--arch", arch, "greenmo | dbf | hbf | fdma (default: reference table)");
    pw->add_option("-m,--antennas", antennas, "antenna count");
    pw->add_option("-k,--chains", chains, "virtual/physical chains or FDMA users");
    pw->add_option("-b,--bandwidth", bw, "per-chain bandwidth in Hz");
    pw->add_option("-g,--goodput", goodput, "goodput in bit/s for energy efficiency");

    bool quick = false, invariants = false;
    int val_workers = 1;
    auto* validate = app.add_subcommand("validate", "run the acceptance checks and module invariants");
    validate->add_flag("--quick", quick, "reduced trial counts");
    validate->add_flag("--invariants", invariants, "also run cross-module invariants");
    validate->add_option("-w,--workers", val_workers, "parallel trial workers")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*simulate) {
            auto cfg = load(sim_flags);
            cfg.sweep_antennas.clear();
            cfg.sweep_snr_db.clear();
            return run(cfg, sim_flags);
        }
        if (*sweep) return run(load(sweep_flags), sweep_flags);
        if (*codes) {
            if (code_samples == 0 || code_samples % static_cast<std::size_t>(code_k) != 0)
                throw greenmo::ConfigError("--samples must be a positive multiple of --slots");
            std::cout << "code_index,bits,bin,magnitude,phase_rad\n";
            for (const auto& c : greenmo::generate_codes(code_k)) {
                std::string bits;
                for (auto b : c.bits) bits += static_cast<char>('0' + b);
                const auto spec = greenmo::code_spectrum(c, code_samples);
                for (std::size_t b = 0; b < spec.size(); ++b) {
                    if (std::abs(spec[b]) < 1e-9) continue;
                    std::printf("%d,%s,%zu,%.6f,%.6f\n", c.phase_index, bits.c_str(), b, std::abs(spec[b]),
                                std::arg(spec[b]));
                }
            }
            return kExitOk;
        }
        if (*pw) {
            struct Row {
                greenmo::Architecture a;
                int m, k;
            };
            std::vector<Row> rows;
            if (arch.empty()) {
                rows = {{greenmo::Architecture::greenmo, 8, 4},
                        {greenmo::Architecture::dbf, 4, 4},
                        {greenmo::Architecture::dbf, 8, 8},
                        {greenmo::Architecture::hbf, 8, 4},
                        {greenmo::Architecture::fdma, 1, 4}};
            } else {
                rows = {{greenmo::parse_architecture(arch), antennas, chains}};
            }
            std::cout << "arch,antennas,chains,rfe_mw,switch_mw,adc_mw,total_mw,bits_per_joule\n";
            for (const auto& r : rows) {
                const auto rep = greenmo::with_energy_efficiency(greenmo::power(r.a, r.m, r.k, bw), goodput);
                std::printf("%s,%d,%d,%.1f,%.1f,%.1f,%.1f,%.1f\n", std::string(greenmo::to_string(r.a)).c_str(), r.m,
                            r.k, rep.rfe_mw, rep.switch_mw, rep.adc_mw, rep.total_mw, rep.bits_per_joule);
            }
            return kExitOk;
        }
        if (*validate) {
            auto scale = quick ? greenmo::ValidationScale::quick() : greenmo::ValidationScale::full();
            scale.workers = val_workers;
            auto results = greenmo::run_acceptance(scale);
            if (invariants) {
                auto inv = greenmo::run_invariants(scale);
                results.insert(results.end(), inv.begin(), inv.end());
            }
            bool ok = true;
            for (const auto& r : results) {
                std::cout << greenmo::format_check(r) << '\n';
                ok = ok && r.passed;
            }
            return ok ? kExitOk : kExitValidation;
        }
    } catch (const greenmo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
