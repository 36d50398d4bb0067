#include <gtest/gtest.h>

#include "greenmo/despread.hpp"
#include "greenmo/frontend.hpp"

using namespace greenmo;

namespace {

std::vector<SampleStream> silent(int antennas, std::size_t n) {
    return std::vector<SampleStream>(static_cast<std::size_t>(antennas), SampleStream(CVec(n, cplx{}), 10e6));
}

}  // namespace

TEST(FrontendConfig, NoiseVarianceAndValidation) {
    FrontendConfig cfg;
    cfg.snr_db = 10.0;
    EXPECT_NEAR(cfg.noise_variance(), 0.1, 1e-15);
    cfg.snr_db.reset();
    EXPECT_EQ(cfg.noise_variance(), 0.0);
    EXPECT_NEAR(cfg.insertion_amplitude(), std::pow(10.0, -0.025), 1e-15);
    cfg.insertion_loss_db = -1.0;
    EXPECT_THROW(cfg.check(), Error);
    cfg.insertion_loss_db = 0.5;
    cfg.quantizer_bits = 0;
    EXPECT_THROW(cfg.check(), Error);
}

TEST(SwitchedCapture, NoiseCalibrationPerChain) {
    const int k = 4;
    FrontendConfig cfg;
    cfg.snr_db = 10.0;
    cfg.oversample_factor = k;
    Rng rng(1, 0);
    const auto chains = time_despread(capture_switched(silent(k, 100000), SwitchMatrix::identity(k, k), cfg, rng), k);
    const double want = 0.1 * cfg.insertion_amplitude() * cfg.insertion_amplitude();
    for (const auto& c : chains.chains) EXPECT_NEAR(10.0 * std::log10(mean_power(c.samples) / want), 0.0, 0.3);
}

TEST(SwitchedCapture, NoisePointControlsCombinedNoise) {
    FrontendConfig cfg;
    cfg.snr_db = 0.0;
    cfg.insertion_loss_db = 0.0;
    cfg.oversample_factor = 2;
    cfg.noise_point = NoisePoint::antenna;
    SwitchMatrix s(4, 2);
    s.set(0, 0, true);
    s.set(1, 1, true);
    s.set(2, 1, true);
    s.set(3, 1, true);
    Rng rng(2, 0);
    const auto chains = time_despread(capture_switched(silent(4, 100000), s, cfg, rng), 2);
    EXPECT_NEAR(mean_power(chains.chains[0].samples), 1.0, 0.03);
    EXPECT_NEAR(mean_power(chains.chains[1].samples), 3.0, 0.09);
    const ChainModel model = switched_model(s, cfg);
    EXPECT_DOUBLE_EQ(model.noise_var[0], 1.0);
    EXPECT_DOUBLE_EQ(model.noise_var[1], 3.0);
    cfg.noise_point = NoisePoint::combiner;
    Rng rng2(3, 0);
    const auto comb = time_despread(capture_switched(silent(4, 100000), s, cfg, rng2), 2);
    EXPECT_NEAR(mean_power(comb.chains[1].samples), 1.0, 0.03);
    EXPECT_DOUBLE_EQ(switched_model(s, cfg).noise_var[1], 1.0);
}

TEST(SwitchedCapture, RejectsMismatchedShapes) {
    FrontendConfig cfg;
    cfg.oversample_factor = 2;
    Rng rng(4, 0);
    EXPECT_THROW(capture_switched(silent(3, 16), SwitchMatrix::identity(4, 2), cfg, rng), Error);
    EXPECT_THROW(capture_switched(silent(4, 16), SwitchMatrix::identity(4, 4), cfg, rng), Error);
}

TEST(PhysicalCapture, OneChainPerAntennaWithCalibratedNoise) {
    FrontendConfig cfg;
    cfg.snr_db = 20.0;
    Rng rng(5, 0);
    EXPECT_EQ(cfg.noise_point, NoisePoint::combiner);
    const auto out = capture_physical(silent(8, 100000), 4, cfg, rng);
    ASSERT_EQ(out.size(), 4u);
    for (const auto& c : out) EXPECT_NEAR(10.0 * std::log10(mean_power(c.samples) / 0.01), 0.0, 0.3);
    EXPECT_THROW(capture_physical(silent(2, 8), 3, cfg, rng), Error);
}

TEST(HybridCapture, CoherentGainIsTenLogM) {
    const int m = 8;
    Rng rng(6, 0);
    Eigen::MatrixXcd h(1, m);
    for (int a = 0; a < m; ++a) h(0, a) = rng.complex_normal();
    const Eigen::MatrixXcd w = hybrid_weights(h, 1, HybridMode::fully);
    FrontendConfig cfg;
    cfg.snr_db = 10.0;
    const ChainModel model = hybrid_model(w, HybridMode::fully, cfg);
    const double signal = std::norm((h * w)(0, 0));
    const double per_antenna = h.row(0).squaredNorm() / m;
    const double gain_db = 10.0 * std::log10((signal / model.noise_var[0]) / (per_antenna / cfg.noise_variance()));
    // Equal-gain combining of unit-modulus channels gives exactly 10 log10 M.
    Eigen::MatrixXcd flat(1, m);
    for (int a = 0; a < m; ++a) flat(0, a) = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    const Eigen::MatrixXcd wf = hybrid_weights(flat, 1, HybridMode::fully);
    const double flat_gain = std::norm((flat * wf)(0, 0)) / hybrid_model(wf, HybridMode::fully, cfg).noise_var[0] /
                             (1.0 / cfg.noise_variance());
    EXPECT_NEAR(10.0 * std::log10(flat_gain), 10.0 * std::log10(m), 1e-9);
    EXPECT_GT(gain_db, 0.0);
    EXPECT_LE(gain_db, 10.0 * std::log10(m) + 1e-9);
}

TEST(HybridCapture, CaptureMatchesModelNoiseAndSignal) {
    const int m = 4;
    Rng rng(7, 0);
    Eigen::MatrixXcd h(2, m);
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < m; ++a) h(i, a) = rng.complex_normal();
    const Eigen::MatrixXcd w = hybrid_weights(h, 2, HybridMode::fully);
    FrontendConfig cfg;
    cfg.snr_db = 0.0;
    const auto noisy = capture_hybrid(silent(m, 100000), w, HybridMode::fully, cfg, rng);
    const ChainModel model = hybrid_model(w, HybridMode::fully, cfg);
    for (int c = 0; c < 2; ++c) EXPECT_NEAR(mean_power(noisy[static_cast<std::size_t>(c)].samples) / model.noise_var[static_cast<std::size_t>(c)], 1.0, 0.03);
    cfg.snr_db.reset();
    std::vector<SampleStream> ant;
    for (int a = 0; a < m; ++a) ant.emplace_back(CVec(8, cplx(a + 1.0, 0.0)), 10e6);
    const auto out = capture_hybrid(ant, w, HybridMode::fully, cfg, rng);
    cplx want{};
    for (int a = 0; a < m; ++a) want += w(a, 1) * (a + 1.0);
    EXPECT_NEAR(std::abs(out[1].samples[3] - want), 0.0, 1e-12);
    Eigen::MatrixXcd bad = w;
    bad(0, 0) *= 2.0;
    EXPECT_THROW(capture_hybrid(ant, bad, HybridMode::fully, cfg, rng), Error);
}

TEST(HybridCapture, PartialConnectionUsesContiguousBlocks) {
    const int m = 16, k = 2;
    Rng rng(8, 0);
    Eigen::MatrixXcd h(2, m);
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < m; ++a) h(i, a) = rng.complex_normal();
    const Eigen::MatrixXcd w = hybrid_weights(h, k, HybridMode::partially);
    for (int c = 0; c < k; ++c) {
        int nonzero = 0;
        for (int a = 0; a < m; ++a) {
            const bool in_block = a / 8 == c;
            EXPECT_EQ(std::abs(w(a, c)) > 0.0, in_block);
            nonzero += std::abs(w(a, c)) > 0.0;
        }
        EXPECT_EQ(nonzero, 8);
    }
    FrontendConfig cfg;
    cfg.snr_db = 10.0;
    EXPECT_DOUBLE_EQ(hybrid_model(w, HybridMode::partially, cfg).noise_var[0], 8 * 0.1);
    EXPECT_THROW(hybrid_weights(Eigen::MatrixXcd::Ones(1, 6), 4, HybridMode::partially), Error);
}

TEST(Quantize, ErrorBoundedByHalfStep) {
    Rng rng(9, 0);
    CVec x(1000);
    for (auto& v : x) v = rng.complex_normal();
    double peak = 0.0;
    for (const auto& v : x) peak = std::max({peak, std::abs(v.real()), std::abs(v.imag())});
    for (int bits : {4, 8, 12}) {
        const CVec q = quantize(x, bits);
        const double step = 2.0 * peak / std::ldexp(1.0, bits);
        for (std::size_t i = 0; i < x.size(); ++i) {
            EXPECT_LE(std::abs(q[i].real() - x[i].real()), step / 2.0 + 1e-12);
            EXPECT_LE(std::abs(q[i].imag() - x[i].imag()), step / 2.0 + 1e-12);
        }
    }
    EXPECT_THROW(quantize(x, 0), Error);
}
