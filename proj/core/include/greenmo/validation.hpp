#pragma once

#include <string>
#include <vector>

namespace greenmo {

struct CheckResult {
    std::string id;    // "1".."11" for acceptance criteria, "inv.*" for module invariants
    std::string name;
    bool passed = false;
    std::string measured;
};

/// Trial counts used by the statistical checks. `full()` holds the counts the
/// criteria are stated at; `quick()` is a smoke-scale run for the CLI.
struct ValidationScale {
    int despread_inputs_per_k = 100;
    int virtual_physical_trials_per_snr = 75;  // x 4 SNR points = 300
    int interference_scenarios = 200;
    int babf_trials = 100;
    int hardening_trials = 100;
    int large_array_trials = 50;
    int sync_trials = 100;
    int determinism_trials = 4;
    int workers = 1;

    static ValidationScale full() { return {}; }
    static ValidationScale quick();
};

CheckResult check_code_math();
CheckResult check_despread_equivalence(const ValidationScale& s);
CheckResult check_virtual_vs_physical(const ValidationScale& s);
CheckResult check_interference_floor(const ValidationScale& s);
CheckResult check_babf_vs_random(const ValidationScale& s);
CheckResult check_antenna_hardening(const ValidationScale& s);
CheckResult check_large_array_ordering(const ValidationScale& s);
CheckResult check_power_arithmetic();
CheckResult check_rate_capacity();
CheckResult check_sync_insensitivity(const ValidationScale& s);
CheckResult check_determinism(const ValidationScale& s);

/// Criteria 1-11 in order.
std::vector<CheckResult> run_acceptance(const ValidationScale& s);

/// Cross-module invariants (noise calibration, mutation sanity, round trips, ...).
std::vector<CheckResult> run_invariants(const ValidationScale& s);

/// "[PASS] 3  name: measured" style line.
std::string format_check(const CheckResult& r);

}  // namespace greenmo
