#include <benchmark/benchmark.h>

#include "greenmo/babf.hpp"
#include "greenmo/channel.hpp"
#include "greenmo/despread.hpp"
#include "greenmo/experiment.hpp"
#include "greenmo/signal.hpp"
#include "greenmo/waveform.hpp"

namespace {

using namespace greenmo;

CVec random_vec(std::size_t n, std::uint64_t seed) {
    Rng rng(seed, 0);
    CVec v(n);
    for (auto& x : v) x = rng.complex_normal();
    return v;
}

void BM_Dft(benchmark::State& state) {
    const CVec x = random_vec(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(dft(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Dft)->Arg(64)->Arg(256)->Arg(4096);

void BM_TimeDespread(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const SampleStream y(random_vec(static_cast<std::size_t>(k) * 80 * 20, 2), 10e6 * k);
    for (auto _ : state) benchmark::DoNotOptimize(time_despread(y, k));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(y.size()));
}
BENCHMARK(BM_TimeDespread)->Arg(2)->Arg(4)->Arg(8);

void BM_FreqDespread(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const SampleStream y(random_vec(static_cast<std::size_t>(k) * 80 * 20, 3), 10e6 * k);
    for (auto _ : state) benchmark::DoNotOptimize(freq_despread(y, k));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(y.size()));
}
BENCHMARK(BM_FreqDespread)->Arg(2)->Arg(4)->Arg(8);

void BM_Babf(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int users = static_cast<int>(state.range(1));
    Rng rng(4, 0);
    const Eigen::MatrixXcd h = rayleigh(users, m, 1, rng).matrix(0);
    for (auto _ : state) benchmark::DoNotOptimize(babf_select(h, {}));
}
BENCHMARK(BM_Babf)->Args({8, 4})->Args({64, 8});

void BM_Viterbi(benchmark::State& state) {
    Rng rng(5, 0);
    Bits bits(static_cast<std::size_t>(state.range(0)));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() >> 63);
    const Bits coded = conv_encode(bits);
    for (auto _ : state) benchmark::DoNotOptimize(viterbi_decode(coded));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Viterbi)->Arg(1530);

void BM_Trial(benchmark::State& state) {
    ExperimentConfig cfg;
    cfg.receivers = {Receiver::greenmo};
    cfg.antennas = static_cast<int>(state.range(0));
    cfg.users = static_cast<int>(state.range(1));
    cfg.vrf = cfg.users;
    cfg.scenario = Scenario::raytrace;
    int t = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, {cfg.antennas, cfg.snr_db}, t++, 0));
}
BENCHMARK(BM_Trial)->Args({8, 4})->Args({64, 8})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
