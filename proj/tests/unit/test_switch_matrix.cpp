#include <gtest/gtest.h>

#include "greenmo/rng.hpp"
#include "greenmo/switch_matrix.hpp"

using namespace greenmo;

TEST(SwitchMatrix, IdentityPlacesDiagonalAndWrapsSpareChains) {
    const SwitchMatrix s = SwitchMatrix::identity(8, 4);
    for (int m = 0; m < 8; ++m)
        for (int k = 0; k < 4; ++k) EXPECT_EQ(s.at(m, k), m == k ? 1 : 0);
    const SwitchMatrix w = SwitchMatrix::identity(2, 4);
    EXPECT_EQ(w.at(0, 2), 1);
    EXPECT_EQ(w.at(1, 3), 1);
    w.check();
}

TEST(SwitchMatrix, HexExample) {
    // Antenna 0 on chain 0, antenna 1 on chains 0 and 2, antenna 2 off, antenna 3 on chains 1 and 3.
    SwitchMatrix s(4, 4);
    s.set(0, 0, true);
    s.set(1, 0, true);
    s.set(1, 2, true);
    s.set(3, 1, true);
    s.set(3, 3, true);
    EXPECT_EQ(s.to_hex(), "150A");
    EXPECT_EQ(SwitchMatrix::from_hex("150a", 4, 4), s);
    EXPECT_EQ(SwitchMatrix::from_hex("150A", 4, 4), s);
}

TEST(SwitchMatrix, HexRoundTripForAllSlotCounts) {
    Rng rng(1, 0);
    for (int k : {1, 3, 4, 5, 8, 9}) {
        SwitchMatrix s(6, k);
        for (int m = 0; m < 6; ++m)
            for (int c = 0; c < k; ++c) s.set(m, c, rng.below(2) == 1);
        const std::string hex = s.to_hex();
        EXPECT_EQ(hex.size(), static_cast<std::size_t>(6 * ((k + 3) / 4)));
        EXPECT_EQ(SwitchMatrix::from_hex(hex, 6, k), s) << k;
    }
}

TEST(SwitchMatrix, HexRejectsMalformedWords) {
    EXPECT_THROW(SwitchMatrix::from_hex("15", 4, 4), Error);
    EXPECT_THROW(SwitchMatrix::from_hex("1g0a", 4, 4), Error);
    EXPECT_THROW(SwitchMatrix::from_hex("8000", 4, 3), Error);
}

TEST(SwitchMatrix, EmptyColumnFailsCheck) {
    SwitchMatrix s(3, 2);
    s.set(0, 0, true);
    EXPECT_THROW(s.check(), Error);
    s.set(2, 1, true);
    EXPECT_NO_THROW(s.check());
    EXPECT_EQ(s.column_weight(0), 1);
}

TEST(SwitchMatrix, ConstructionErrorsAndMatrixView) {
    EXPECT_THROW(SwitchMatrix(0, 2), Error);
    EXPECT_THROW(SwitchMatrix(2, 2, Bits{1, 0, 1}), Error);
    EXPECT_THROW(SwitchMatrix(2, 2, Bits{1, 0, 2, 0}), Error);
    const SwitchMatrix s(2, 2, Bits{1, 0, 1, 1});
    const Eigen::MatrixXd m = s.as_matrix();
    EXPECT_EQ(m(0, 0), 1.0);
    EXPECT_EQ(m(0, 1), 0.0);
    EXPECT_EQ(m(1, 1), 1.0);
    EXPECT_EQ(s.column_weight(0), 2);
}
