#include <gtest/gtest.h>

#include "greenmo/metrics.hpp"

using namespace greenmo;

TEST(Metrics, SinrFromRowExamples) {
    const CVec p{1.0, 0.1};
    EXPECT_NEAR(sinr_from_row(p, 0), 20.0, 1e-12);
    EXPECT_NEAR(sinr_from_row(p, 1), -20.0, 1e-12);
    const CVec clean{1.0, 0.0};
    EXPECT_EQ(sinr_from_row(clean, 0), 80.0);
    EXPECT_NEAR(sinr_from_row(clean, 0, 0.01), 20.0, 1e-12);
    EXPECT_THROW(sinr_from_row(clean, 2), Error);
}

TEST(Metrics, CapacityAnchor) {
    const std::vector<double> s(4, 15.0);
    const double cap = capacity_bps(s, 10e6);
    EXPECT_NEAR(cap / 1e6, 201.1, 0.05);
    const std::vector<double> zero_db{0.0};
    EXPECT_NEAR(capacity_bps(zero_db, 1.0), 1.0, 1e-12);
}

TEST(Metrics, GoodputCountsOnlyErrorFreeUsers) {
    OfdmConfig cfg;
    const std::vector<Bits> sent(4, Bits(1000, 1));
    auto got = goodput_and_ber(sent, sent, cfg);
    EXPECT_NEAR(got.goodput_bps, 48e6, 1e-6);
    EXPECT_EQ(got.ber, 0.0);
    EXPECT_EQ(got.users_ok, 4);
    std::vector<Bits> rx = sent;
    rx[2][10] = 0;
    rx[2][11] = 0;
    got = goodput_and_ber(rx, sent, cfg);
    EXPECT_NEAR(got.goodput_bps, 36e6, 1e-6);
    EXPECT_DOUBLE_EQ(got.ber, 2.0 / 4000.0);
    EXPECT_THROW(goodput_and_ber(std::vector<Bits>(3), sent, cfg), Error);
}

TEST(Metrics, EvmOfKnownError) {
    const UserSymbols ref{{CVec{1.0, cplx(0.0, 1.0)}}};
    const UserSymbols eq{{CVec{1.1, cplx(0.0, 0.9)}}};
    EXPECT_NEAR(evm_pct(eq, ref), 10.0, 1e-9);
    EXPECT_EQ(evm_pct(ref, ref), 0.0);
}

TEST(Metrics, SinrAccumulatesOverBinsAndSkipsErased) {
    EffectiveChannel h;
    CombinerMatrix v;
    for (int b : used_bins()) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = 2.0;
        h.bins.push_back(b);
        h.matrices.push_back(m);
        v.bins.push_back(b);
        v.v.push_back(Eigen::MatrixXcd::Constant(1, 1, 0.5));
        v.erased.push_back(false);
    }
    const std::vector<double> noise{0.04};
    EXPECT_NEAR(sinr_db(v, h, noise)[0], 10.0 * std::log10(1.0 / (0.25 * 0.04)), 1e-9);
    for (std::size_t i = 0; i < v.erased.size(); i += 2) {
        v.erased[i] = true;
        v.v[i].setZero();
    }
    EXPECT_NEAR(sinr_db(v, h, noise)[0], 20.0, 1e-9);
    const std::vector<double> wrong{0.1, 0.1};
    EXPECT_THROW(sinr_db(v, h, wrong), Error);
}
