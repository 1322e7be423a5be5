#include <gtest/gtest.h>

#include <random>

#include "frechet/discrete.hpp"
#include "frechet/generators.hpp"
#include "frechet/wordram.hpp"
#include "support.hpp"

using namespace frechet;

TEST(ZRowTest, NoCrossings) {
    const ZRow r = build_z_row({{0, 10}, {1, 10}}, Curve{{0, 0}, {1, 0}, {2, 0}}, 1.0);
    EXPECT_EQ(r.k(), 0);
    EXPECT_EQ(r.size(), 3);
    EXPECT_EQ(r.e1(), 2);
}

TEST(ZRowTest, OneCircleCrossedTwice) {
    // Edge from (-2,0) to (2,0) against the unit circle at the origin: z near 0.25, 0.75.
    const ZRow r = build_z_row({{-2, 0}, {2, 0}}, Curve{{9, 9}, {0, 0}}, 1.0);
    ASSERT_EQ(r.k(), 2);
    EXPECT_EQ(r.size(), 7);
    const Interval door = free_interval({0, 0}, {{-2, 0}, {2, 0}}, 1.0);
    EXPECT_EQ(r.door_pos(door.lo()), 2);
    EXPECT_EQ(r.door_pos(door.hi()), 4);
    EXPECT_EQ(r.door_pos(0.0), 0);
    EXPECT_EQ(r.door_pos(1.0), 6);
    EXPECT_EQ(r.reach_pos(0.5), 3);  // gap between z_1 and z_2
    EXPECT_EQ(r.reach_pos(0.1), 1);
    EXPECT_EQ(r.reach_pos(door.hi()), 4);
    EXPECT_EQ(r.value(2), door.lo());
    EXPECT_THROW(r.value(3), std::invalid_argument);
    EXPECT_THROW(r.door_pos(0.5), std::invalid_argument);
}

TEST(ZRowTest, FirstVertexIgnored) {
    const ZRow r = build_z_row({{-2, 0}, {2, 0}}, Curve{{0, 0}, {9, 9}}, 1.0);
    EXPECT_EQ(r.k(), 0);
}

TEST(ZRowTest, FieldWidthFitsAllPositions) {
    for (int tau = 1; tau <= kMaxPackedTau; ++tau) {
        const int max_pos = 2 * (2 * tau * tau) + 2;
        EXPECT_LE(max_pos, int(PackedWord::mask(zrow_field_width(tau))));
        // A reach word holds two positions per row of a box.
        EXPECT_LE(2 * tau * zrow_field_width(tau), 64);
    }
}

TEST(DecideWordRam, Examples) {
    EXPECT_TRUE(decide_wordram(Curve{{0, 0}, {1, 0}}, Curve{{0, 0.5}, {1, 0.5}}, 1.0));
    EXPECT_FALSE(decide_wordram(Curve{{0, 0}, {1, 0}}, Curve{{0, 2}, {1, 2}}, 1.0));
    EXPECT_TRUE(decide_wordram(Curve{{0, 0}}, Curve{{3, 4}}, 5.0));
    const CurvePair z = zigzag_pair(20, 1.0);
    EXPECT_FALSE(decide_wordram(z.first, z.second, 0.5, BoxParams(2)));
    EXPECT_FALSE(decide_wordram(z.first, z.second, 0.5, BoxParams(3)));
}

TEST(DecideWordRam, AgreesWithBaseline) {
    std::mt19937_64 rng(55);
    for (int it = 0; it < 150; ++it) {
        const std::size_t n = 2 + rng() % 40, m = 2 + rng() % 40;
        const Curve P = frechet::testing::walk_curve(rng, n), Q = frechet::testing::walk_curve(rng, m);
        const double d = discrete_compute(P.vertices(), Q.vertices());
        for (double f : {0.5, 0.8, 1.0})
            for (int tau : {1, 2, 3}) {
                WordRamStats st;
                ASSERT_EQ(decide_wordram(P, Q, f * d, BoxParams(tau), &st), decide_baseline(P, Q, f * d))
                    << it << " tau " << tau << " f " << f;
                EXPECT_FALSE(st.fell_back);
            }
    }
}

TEST(DecideWordRam, IdenticalCurves) {
    std::mt19937_64 rng(6);
    const Curve P = frechet::testing::walk_curve(rng, 40);
    WordRamStats st;
    EXPECT_TRUE(decide_wordram(P, P, 1e-6, BoxParams(2), &st));
    EXPECT_GT(st.boxes, 0u);
    EXPECT_GT(st.clusters, 0u);
}

TEST(DecideWordRam, LargeTauFallsBack) {
    std::mt19937_64 rng(7);
    const Curve P = frechet::testing::walk_curve(rng, 12), Q = frechet::testing::walk_curve(rng, 12);
    WordRamStats st;
    const bool got = decide_wordram(P, Q, 2.0, BoxParams(4), &st);
    EXPECT_TRUE(st.fell_back);
    EXPECT_EQ(got, decide_baseline(P, Q, 2.0));
}
