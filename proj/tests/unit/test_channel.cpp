#include <gtest/gtest.h>

#include "greenmo/channel.hpp"
#include "greenmo/waveform.hpp"

using namespace greenmo;

namespace {

SampleStream random_ofdm(int symbols, int cp_len, std::uint64_t seed) {
    Rng rng(seed, 0);
    CVec out;
    for (int s = 0; s < symbols; ++s) {
        CVec bins(64);
        for (auto& b : bins) b = rng.complex_normal();
        const CVec sym = ofdm_modulate(bins, cp_len);
        out.insert(out.end(), sym.begin(), sym.end());
    }
    return SampleStream(out, 10e6);
}

RoomScene open_room(double size) {
    RoomScene s = RoomScene::rectangular(size, size, 0.0);
    return s;
}

}  // namespace

TEST(Rayleigh, FlatGainsHaveUnitPower) {
    Rng rng(1, 0);
    const ChannelSet c = rayleigh(10, 100, 100, rng);
    double p = 0.0;
    for (int u = 0; u < 10; ++u)
        for (int m = 0; m < 100; ++m) {
            p += std::norm(c.at(u, m, 0));
            // Flat fading: every bin of a link is the same gain.
            EXPECT_EQ(c.at(u, m, 0), c.at(u, m, 57));
        }
    EXPECT_NEAR(p / 1000.0, 1.0, 0.1);
    double p_all = 0.0;
    Rng big(2, 0);
    const ChannelSet d = rayleigh(100, 1000, 1, big);
    for (int u = 0; u < 100; ++u)
        for (int m = 0; m < 1000; ++m) p_all += std::norm(d.at(u, m, 0));
    EXPECT_GE(p_all / 1e5, 0.98);
    EXPECT_LE(p_all / 1e5, 1.02);
}

TEST(Rayleigh, TappedLinksAreFrequencySelectiveWithUnitPower) {
    Rng rng(3, 0);
    const ChannelSet c = rayleigh(20, 50, 64, rng, 4);
    double p = 0.0;
    for (int u = 0; u < 20; ++u)
        for (int m = 0; m < 50; ++m)
            for (int f = 0; f < 64; ++f) p += std::norm(c.at(u, m, f));
    EXPECT_NEAR(p / (20.0 * 50 * 64), 1.0, 0.05);
    EXPECT_GT(std::abs(c.at(0, 0, 0) - c.at(0, 0, 20)), 1e-6);
    EXPECT_THROW(rayleigh(1, 1, 8, rng, 0), Error);
}

TEST(FromTaps, GainIsDftOfImpulseResponse) {
    const std::vector<CVec> ir{{cplx{1.0, 0.0}, cplx{0.0, 0.5}, cplx{-0.25, 0.0}}};
    const ChannelSet c = from_taps(1, 1, 16, ir);
    for (int f = 0; f < 16; ++f) {
        cplx want{};
        for (int l = 0; l < 3; ++l) want += ir[0][static_cast<std::size_t>(l)] * std::polar(1.0, -2.0 * kPi * f * l / 16.0);
        EXPECT_NEAR(std::abs(c.at(0, 0, f) - want), 0.0, 1e-12);
    }
    EXPECT_THROW(from_taps(2, 1, 16, ir), Error);
}

TEST(RayTrace, LineOfSightMagnitudeAndPhase) {
    RoomScene s = open_room(100.0);
    s.ap = {50.0, 50.0};
    s.antenna_offsets = {{0.0, 0.0}};
    s.users = {{53.0, 54.0}};
    const ChannelSet c = ray_trace(s, 64, 0);
    const double d = 5.0;
    for (int f : {0, 1, 33, 63}) {
        const double freq = kDefaultCarrierHz + signed_bin(static_cast<std::size_t>(f), 64) * kDefaultSubcarrierSpacingHz;
        const cplx want = std::polar(1.0 / d, -2.0 * kPi * freq * d / kSpeedOfLight);
        EXPECT_NEAR(std::abs(c.at(0, 0, f)), 1.0 / d, 1e-12);
        EXPECT_NEAR(std::abs(c.at(0, 0, f) - want), 0.0, 1e-9);
    }
}

TEST(RayTrace, SingleWallGivesTwoPathsWithImageLength) {
    RoomScene s;
    s.room_x_m = 20.0;
    s.room_y_m = 20.0;
    s.walls = {{{0.0, 0.0}, {20.0, 0.0}, 0.5}};
    const Vec2 src{5.0, 2.0}, dst{9.0, 3.0};
    const auto paths = trace_paths(s, src, dst, 1);
    ASSERT_EQ(paths.size(), 2u);
    EXPECT_NEAR(paths[0].length_m, std::hypot(4.0, 1.0), 1e-12);
    EXPECT_EQ(paths[1].bounces, 1);
    EXPECT_DOUBLE_EQ(paths[1].gamma_product, 0.5);
    // Image of src in y = 0 is (5, -2).
    EXPECT_NEAR(paths[1].length_m, std::hypot(4.0, 5.0), 1e-12);
    const double spread = (paths[1].length_m - paths[0].length_m) / kSpeedOfLight;
    EXPECT_NEAR(spread, (std::hypot(4.0, 5.0) - std::hypot(4.0, 1.0)) / kSpeedOfLight, 1e-18);
}

TEST(RayTrace, RectangularRoomPathCounts) {
    const RoomScene s = RoomScene::rectangular(12.0, 5.0, 0.6);
    const auto p1 = trace_paths(s, {3.0, 2.0}, {8.0, 3.5}, 1);
    EXPECT_EQ(p1.size(), 5u);
    const auto p2 = trace_paths(s, {3.0, 2.0}, {8.0, 3.5}, 2);
    EXPECT_GT(p2.size(), p1.size());
    for (const auto& p : p2) {
        EXPECT_GE(p.length_m, p2[0].length_m);
        EXPECT_NEAR(p.gamma_product, std::pow(0.6, p.bounces), 1e-12);
    }
}

TEST(RayTrace, PathsAreReciprocal) {
    const RoomScene s = RoomScene::rectangular(12.0, 5.0, 0.6);
    auto a = trace_paths(s, {1.5, 1.0}, {9.0, 4.0}, 2);
    auto b = trace_paths(s, {9.0, 4.0}, {1.5, 1.0}, 2);
    ASSERT_EQ(a.size(), b.size());
    auto by_len = [](const PropagationPath& x, const PropagationPath& y) { return x.length_m < y.length_m; };
    std::sort(a.begin(), a.end(), by_len);
    std::sort(b.begin(), b.end(), by_len);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].length_m, b[i].length_m, 1e-9);
}

TEST(RayTrace, HalfWavelengthArrayBroadsideUserIsInPhase) {
    RoomScene s = open_room(2000.0);
    s.ap = {1000.0, 10.0};
    const double lambda = kSpeedOfLight / kDefaultCarrierHz;
    s.antenna_offsets = ula_offsets(8, lambda / 2.0);
    s.users = {{1000.0, 1500.0}};
    const ChannelSet c = ray_trace(s, 1, 0);
    for (int m = 1; m < 8; ++m) {
        const double dphi = std::abs(std::arg(c.at(0, m, 0) / c.at(0, 0, 0)));
        EXPECT_LT(dphi * 180.0 / kPi, 1.0);
    }
    // Endfire: adjacent elements differ by half a cycle.
    s.users = {{1900.0, 10.0}};
    const ChannelSet e = ray_trace(s, 1, 0);
    const double step = std::arg(e.at(0, 1, 0) / e.at(0, 0, 0));
    EXPECT_NEAR(std::abs(step), kPi, 1e-3);
}

TEST(RayTrace, ErrorsOnBadGeometry) {
    RoomScene s = RoomScene::rectangular(12.0, 5.0, 0.6);
    s.antenna_offsets = {{0.0, 0.0}};
    s.users = {{13.0, 1.0}};
    EXPECT_THROW(ray_trace(s, 8, 1), Error);
    s.users = {{3.0, 1.0}};
    s.walls[0].gamma = 1.5;
    EXPECT_THROW(ray_trace(s, 8, 1), Error);
    EXPECT_THROW(trace_paths(s, {1.0, 1.0}, {2.0, 2.0}, 3), Error);
    EXPECT_THROW(trace_paths(s, {1.0, 1.0}, {1.0, 1.0}, 1), Error);
}

TEST(NormalizePerUser, UnitMeanPower) {
    Rng rng(4, 0);
    ChannelSet c = rayleigh(3, 4, 8, rng, 2);
    for (int m = 0; m < 4; ++m)
        for (int f = 0; f < 8; ++f) c.at(1, m, f) *= 7.0;
    normalize_per_user(c);
    for (int u = 0; u < 3; ++u) {
        double p = 0.0;
        for (int m = 0; m < 4; ++m)
            for (int f = 0; f < 8; ++f) p += std::norm(c.at(u, m, f));
        EXPECT_NEAR(p / 32.0, 1.0, 1e-12);
    }
}

TEST(TimingOffsets, IntegerOffsetMatchesDelayedTap) {
    const std::vector<CVec> one{{cplx{1.0, 0.0}}};
    ChannelSet c = from_taps(1, 1, 64, one);
    const double off[] = {2.0};
    apply_timing_offsets(c, off);
    const std::vector<CVec> delayed{{0.0, 0.0, 1.0}};
    const ChannelSet want = from_taps(1, 1, 64, delayed);
    for (int f = 0; f < 64; ++f)
        if (f != 32) EXPECT_NEAR(std::abs(c.at(0, 0, f) - want.at(0, 0, f)), 0.0, 1e-12);
    const double bad[] = {1.0, 2.0};
    EXPECT_THROW(apply_timing_offsets(c, bad), Error);
}

TEST(Apply, IdentityAndScalarChannels) {
    const SampleStream x = random_ofdm(3, 16, 5);
    const std::vector<CVec> unit{{cplx{1.0, 0.0}}};
    const auto y = apply(from_taps(1, 1, 64, unit), std::span<const SampleStream>(&x, 1), 16);
    ASSERT_EQ(y.size(), 1u);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(std::abs(y[0].samples[i] - x.samples[i]), 0.0, 1e-12);
    const cplx g{0.3, -0.8};
    const std::vector<CVec> scalar{{g}};
    const auto z = apply(from_taps(1, 1, 64, scalar), std::span<const SampleStream>(&x, 1), 16);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(std::abs(z[0].samples[i] - g * x.samples[i]), 0.0, 1e-12);
}

TEST(Apply, TwoTapChannelIsCircularConvolutionPerSymbol) {
    const SampleStream x = random_ofdm(2, 16, 6);
    const std::vector<CVec> ir{{cplx{1.0, 0.0}, cplx{0.5, 0.0}}};
    const auto y = apply(from_taps(1, 1, 64, ir), std::span<const SampleStream>(&x, 1), 16);
    for (std::size_t s = 0; s < 2; ++s) {
        const std::size_t body = s * 80 + 16;
        for (std::size_t n = 0; n < 64; ++n) {
            const cplx want = x.samples[body + n] + 0.5 * x.samples[body + (n + 63) % 64];
            EXPECT_NEAR(std::abs(y[0].samples[body + n] - want), 0.0, 1e-9);
        }
        for (std::size_t n = 0; n < 16; ++n)
            EXPECT_NEAR(std::abs(y[0].samples[s * 80 + n] - y[0].samples[body + 48 + n]), 0.0, 1e-12);
    }
}

TEST(Apply, LinearInUserStreams) {
    Rng rng(7, 0);
    const ChannelSet c = rayleigh(2, 3, 64, rng, 3);
    const std::vector<SampleStream> tx{random_ofdm(2, 16, 8), random_ofdm(2, 16, 9)};
    const auto y = apply(c, tx, 16);
    const SampleStream zero(CVec(tx[0].size(), cplx{}), 10e6);
    const std::vector<SampleStream> only0{tx[0], zero}, only1{zero, tx[1]};
    const auto y0 = apply(c, only0, 16), y1 = apply(c, only1, 16);
    for (int m = 0; m < 3; ++m)
        for (std::size_t i = 0; i < y[0].size(); ++i)
            EXPECT_NEAR(std::abs(y[static_cast<std::size_t>(m)].samples[i] - y0[static_cast<std::size_t>(m)].samples[i] -
                                 y1[static_cast<std::size_t>(m)].samples[i]),
                        0.0, 1e-12);
}

TEST(Apply, RejectsMismatchedStreams) {
    Rng rng(10, 0);
    const ChannelSet c = rayleigh(2, 1, 64, rng);
    const std::vector<SampleStream> one{random_ofdm(1, 16, 1)};
    EXPECT_THROW(apply(c, one, 16), Error);
    const std::vector<SampleStream> uneven{random_ofdm(1, 16, 1), random_ofdm(2, 16, 2)};
    EXPECT_THROW(apply(c, uneven, 16), Error);
    const std::vector<SampleStream> partial{SampleStream(CVec(70, 1.0), 10e6), SampleStream(CVec(70, 1.0), 10e6)};
    EXPECT_THROW(apply(c, partial, 16), Error);
}
