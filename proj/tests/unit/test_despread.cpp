#include <gtest/gtest.h>

#include "greenmo/despread.hpp"
#include "greenmo/frontend.hpp"
#include "greenmo/waveform.hpp"

using namespace greenmo;

namespace {

SampleStream noise_stream(std::size_t n, double rate, std::uint64_t seed) {
    Rng rng(seed, 0);
    CVec v(n);
    for (auto& x : v) x = rng.complex_normal();
    return SampleStream(std::move(v), rate);
}

SampleStream ofdm_stream(int symbols, std::uint64_t seed) {
    Rng rng(seed, 0);
    CVec out;
    for (int s = 0; s < symbols; ++s) {
        CVec bins(64, cplx{});
        for (int b : used_bins()) bins[static_cast<std::size_t>(b)] = rng.complex_normal();
        const CVec sym = ofdm_modulate(bins, 16);
        out.insert(out.end(), sym.begin(), sym.end());
    }
    return SampleStream(std::move(out), 10e6);
}

double max_diff(const CVec& a, const CVec& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

}  // namespace

TEST(TimeSlice, ToyTwoSlotExample) {
    const SampleStream y(CVec{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 2.0);
    const auto chains = time_slice(y, 2);
    ASSERT_EQ(chains.size(), 2u);
    EXPECT_EQ(chains[0], (CVec{1.0, 3.0, 5.0}));
    EXPECT_EQ(chains[1], (CVec{2.0, 4.0, 6.0}));
    EXPECT_EQ(interleave_chains(chains), y.samples);
}

TEST(TimeSlice, RejectsIndivisibleLength) {
    const SampleStream y(CVec(7, 1.0), 1.0);
    EXPECT_THROW(time_slice(y, 2), Error);
    EXPECT_THROW(time_despread(y, 2), Error);
}

TEST(Despread, TimeAndFrequencyPathsAgree) {
    for (int k : {1, 2, 3, 4, 8}) {
        const SampleStream y = noise_stream(static_cast<std::size_t>(k) * 160, 10e6 * k, 100 + static_cast<std::uint64_t>(k));
        const auto t = time_despread(y, k);
        const auto f = freq_despread(y, k);
        ASSERT_EQ(t.chains.size(), static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c) {
            EXPECT_NEAR(t.chains[static_cast<std::size_t>(c)].rate_hz, 10e6, 1e-6);
            EXPECT_LT(max_diff(t.chains[static_cast<std::size_t>(c)].samples, f.chains[static_cast<std::size_t>(c)].samples),
                      1e-9)
                << "K=" << k << " chain " << c;
        }
    }
}

TEST(Despread, CorruptedPhaseMatrixIsDetected) {
    const SampleStream y = noise_stream(4 * 160, 40e6, 7);
    const auto t = time_despread(y, 4);
    const auto bad = detail::freq_despread_signed(y, 4, +1);
    double worst = 0.0;
    for (int c = 0; c < 4; ++c)
        worst = std::max(worst, max_diff(t.chains[static_cast<std::size_t>(c)].samples,
                                         bad.chains[static_cast<std::size_t>(c)].samples));
    EXPECT_GT(worst, 1e-3);
}

TEST(Despread, ZonesHoldShiftedCopiesOfEachChain) {
    // A stream that is nonzero only in slot 0 puts identical spectra in every zone.
    const int k = 4;
    const SampleStream base = noise_stream(64, 10e6, 8);
    CVec y(64 * k, cplx{});
    for (std::size_t n = 0; n < 64; ++n) y[n * k] = base.samples[n];
    const Eigen::MatrixXcd z = spectrum_zones(SampleStream(y, 40e6), k);
    ASSERT_EQ(z.rows(), k);
    ASSERT_EQ(z.cols(), 64);
    const CVec ref = dft(base.samples);
    for (int r = 0; r < k; ++r)
        for (int q = 0; q < 64; ++q) EXPECT_NEAR(std::abs(z(r, q) - ref[static_cast<std::size_t>(q)]), 0.0, 1e-9);
}

TEST(Despread, SwitchedCaptureRecoversEachAntenna) {
    // One antenna per chain, no noise, no insertion loss: chain k must reproduce antenna k.
    const int k = 4;
    std::vector<SampleStream> antennas;
    for (int m = 0; m < k; ++m) antennas.push_back(ofdm_stream(3, 20 + static_cast<std::uint64_t>(m)));
    FrontendConfig cfg;
    cfg.snr_db.reset();
    cfg.insertion_loss_db = 0.0;
    cfg.oversample_factor = k;
    Rng rng(1, 0);
    const SampleStream y = capture_switched(antennas, SwitchMatrix::identity(k, k), cfg, rng);
    const auto chains = time_despread(y, k);
    for (int c = 0; c < k; ++c)
        EXPECT_LT(max_diff(chains.chains[static_cast<std::size_t>(c)].samples, antennas[static_cast<std::size_t>(c)].samples),
                  1e-9);
}

TEST(Despread, SwitchedCaptureSumsCombinedAntennas) {
    const int k = 2;
    std::vector<SampleStream> antennas;
    for (int m = 0; m < 3; ++m) antennas.push_back(ofdm_stream(2, 30 + static_cast<std::uint64_t>(m)));
    SwitchMatrix s(3, k);
    s.set(0, 0, true);
    s.set(1, 0, true);
    s.set(2, 1, true);
    s.set(0, 1, true);
    FrontendConfig cfg;
    cfg.snr_db.reset();
    cfg.insertion_loss_db = 0.0;
    cfg.oversample_factor = k;
    Rng rng(2, 0);
    const auto chains = time_despread(capture_switched(antennas, s, cfg, rng), k);
    CVec want0(antennas[0].size()), want1(antennas[0].size());
    for (std::size_t n = 0; n < want0.size(); ++n) {
        want0[n] = antennas[0].samples[n] + antennas[1].samples[n];
        want1[n] = antennas[0].samples[n] + antennas[2].samples[n];
    }
    EXPECT_LT(max_diff(chains.chains[0].samples, want0), 1e-9);
    EXPECT_LT(max_diff(chains.chains[1].samples, want1), 1e-9);
}
