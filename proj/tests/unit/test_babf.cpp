#include <gtest/gtest.h>

#include "greenmo/babf.hpp"
#include "greenmo/linalg.hpp"

using namespace greenmo;

namespace {

cplx deg(double d, double mag = 1.0) { return std::polar(mag, d * kPi / 180.0); }

Eigen::MatrixXcd example_channel() {
    Eigen::MatrixXcd h(2, 4);
    h << deg(0), deg(100), deg(10), deg(190), deg(0), deg(5), deg(120), deg(10);
    return h;
}

Eigen::MatrixXcd rayleigh_matrix(int u, int m, Rng& rng) {
    Eigen::MatrixXcd h(u, m);
    for (int i = 0; i < u; ++i)
        for (int a = 0; a < m; ++a) h(i, a) = rng.complex_normal();
    return h;
}

}  // namespace

TEST(Babf, HandTracedExample) {
    const BabfResult r = babf_select(example_channel(), BabfConfig{});
    EXPECT_EQ(r.fallback_level, 0);
    // User 0: pivots 0 and 2 both gather {0, 2}; pivots 1 and 3 stand alone.
    EXPECT_EQ(r.scores(0, 0), 2);
    EXPECT_EQ(r.scores(0, 1), 1);
    EXPECT_EQ(r.scores(0, 2), 2);
    EXPECT_EQ(r.scores(0, 3), 1);
    // User 1: antennas 0, 1 and 3 sit within 10 degrees; antenna 2 is 110+ degrees away.
    EXPECT_EQ(r.scores(1, 0), 3);
    EXPECT_EQ(r.scores(1, 2), 1);
    const int col0[] = {1, 0, 1, 0}, col1[] = {1, 1, 0, 1};
    for (int m = 0; m < 4; ++m) {
        EXPECT_EQ(r.s.at(m, 0), col0[m]) << m;
        EXPECT_EQ(r.s.at(m, 1), col1[m]) << m;
    }
    EXPECT_EQ(r.s.to_hex(), "3212");
}

TEST(Babf, InvariantToCommonPhaseAndScalePerUser) {
    const Eigen::MatrixXcd h = example_channel();
    Eigen::MatrixXcd g = h;
    g.row(0) *= deg(77.0, 3.5);
    g.row(1) *= deg(-140.0, 0.2);
    EXPECT_EQ(babf_select(h, BabfConfig{}).s, babf_select(g, BabfConfig{}).s);
    Rng rng(1, 0);
    for (int t = 0; t < 50; ++t) {
        const Eigen::MatrixXcd a = rayleigh_matrix(4, 8, rng);
        Eigen::MatrixXcd b = a;
        for (int i = 0; i < 4; ++i) b.row(i) *= rng.complex_normal();
        EXPECT_EQ(babf_select(a, BabfConfig{}).s, babf_select(b, BabfConfig{}).s);
    }
}

TEST(Babf, GroupsAddCoherentlyAndResultIsFullRank) {
    Rng rng(2, 0);
    const BabfConfig cfg;
    double diag = 0.0, off = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const Eigen::MatrixXcd h = rayleigh_matrix(4, 8, rng);
        BabfResult r;
        try {
            r = babf_select(h, cfg);
        } catch (const BabfFailure&) {
            continue;
        }
        const Eigen::MatrixXcd hs = h * r.s.as_matrix().cast<cplx>();
        EXPECT_EQ(numerical_rank(hs, cfg.rank_tolerance), 4);
        for (int i = 0; i < 4; ++i) {
            if (r.fallback_level == 0) {
                // Every member is within phi of the pivot, so each adds at least |h| cos(phi) coherently.
                double bound = 0.0;
                for (int m = 0; m < 8; ++m)
                    if (r.s.at(m, i)) bound += std::abs(h(i, m)) * std::cos(cfg.phi);
                EXPECT_GE(std::abs(hs(i, i)) + 1e-12, bound);
            }
            for (int j = 0; j < 4; ++j) (i == j ? diag : off) += std::norm(hs(i, j));
        }
    }
    EXPECT_GT(diag / 4.0, 1.5 * off / 12.0);
}

TEST(Babf, FallsBackWhenFirstChoiceIsSingular) {
    // Both users see identical phases, so their best groups coincide and H*S is singular.
    Eigen::MatrixXcd h(2, 3);
    h << deg(0), deg(10), deg(150), deg(0, 2.0), deg(10, 2.0), deg(150, 2.0);
    h(1, 2) = deg(150, 0.5);
    const BabfResult r = babf_select(h, BabfConfig{});
    EXPECT_GT(r.fallback_level, 0);
    EXPECT_EQ(numerical_rank(h * r.s.as_matrix().cast<cplx>(), 1e-9), 2);
    BabfConfig none;
    none.max_fallbacks = 0;
    EXPECT_THROW(babf_select(h, none), BabfFailure);
}

TEST(Babf, RejectsBadInput) {
    EXPECT_THROW(babf_select(Eigen::MatrixXcd::Ones(3, 2), BabfConfig{}), Error);
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Ones(2, 3);
    z.row(1).setZero();
    EXPECT_THROW(babf_select(z, BabfConfig{}), Error);
    BabfConfig bad;
    bad.phi = 2.0;
    EXPECT_THROW(babf_select(example_channel(), bad), Error);
}

TEST(Babf, DeterministicForSameInput) {
    Rng rng(3, 0);
    const Eigen::MatrixXcd h = rayleigh_matrix(4, 16, rng);
    EXPECT_EQ(babf_select(h, BabfConfig{}).s, babf_select(h, BabfConfig{}).s);
}

TEST(RandomSwitchMatrix, NonEmptyFullRankAndSeeded) {
    Rng rng(4, 0);
    for (int t = 0; t < 200; ++t) {
        const SwitchMatrix s = random_switch_matrix(8, 4, rng);
        EXPECT_NO_THROW(s.check());
        EXPECT_EQ(numerical_rank(s.as_matrix().cast<cplx>(), 1e-9), 4);
    }
    Rng a(5, 1), b(5, 1);
    EXPECT_EQ(random_switch_matrix(6, 3, a), random_switch_matrix(6, 3, b));
    EXPECT_THROW(random_switch_matrix(2, 3, a), Error);
}
