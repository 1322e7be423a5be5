#include <gtest/gtest.h>

#include <random>

#include "frechet/strip.hpp"
#include "support.hpp"

using namespace frechet;

namespace {

Segment random_segment(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {{u(rng), u(rng)}, {u(rng), u(rng)}};
}

}  // namespace

TEST(StripQuery, MatchesDirectOrder) {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 300; ++it) {
        const std::size_t tau = 1 + it % 4;
        const Curve sub = frechet::testing::random_curve(rng, tau + 1, 4.0);
        const double delta = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
        const StripStructure s = strip_build(sub, delta);
        for (int q = 0; q < 20; ++q) {
            const Segment seg = random_segment(rng, -1.0, 5.0);
            EXPECT_EQ(strip_query(s, seg), row_door_order_direct(sub, seg, delta)) << it << " " << q;
        }
    }
}

// Integer coordinates: tangencies, shared endpoints and collinear queries.
TEST(StripQuery, MatchesDirectOnGrid) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(0, 4);
    for (int it = 0; it < 300; ++it) {
        const std::size_t tau = 2 + it % 2;
        std::vector<Point> v;
        for (std::size_t k = 0; k <= tau; ++k) v.push_back({double(c(rng)), double(c(rng))});
        const Curve sub(v);
        const double delta = 1.0 + c(rng) % 2;
        const StripStructure s(sub, delta);
        for (int q = 0; q < 20; ++q) {
            const Segment seg{{double(c(rng)), double(c(rng))}, {double(c(rng)), double(c(rng))}};
            EXPECT_EQ(s.query(seg), row_door_order_direct(sub, seg, delta)) << it << " " << q;
        }
    }
}

TEST(StripQuery, VerticalAndDegenerateSegments) {
    const Curve sub{{0, 0}, {1, 1}, {2, 0}};
    const StripStructure s(sub, 1.0);
    const Segment vertical{{1, -2}, {1, 3}};
    const Segment point{{1, 0.5}, {1, 0.5}};
    EXPECT_EQ(s.query(vertical), row_door_order_direct(sub, vertical, 1.0));
    EXPECT_EQ(s.query(point), row_door_order_direct(sub, point, 1.0));
    EXPECT_GE(s.fallback_queries(), 1u);
}

TEST(StripBuild, SingleEdgeArrangement) {
    const StripStructure s(Curve{{0, 0}, {1, 0}}, 1.0);
    EXPECT_LE(s.arrangement_vertices().size(), 2u);
    const StripStructure apart(Curve{{0, 0}, {5, 0}}, 1.0);
    EXPECT_TRUE(apart.arrangement_vertices().empty());
}

TEST(StripBuild, ArrangementSizeBound) {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 100; ++it) {
        const std::size_t tau = 1 + it % 4;
        const StripStructure s(frechet::testing::random_curve(rng, tau + 1, 3.0), 1.5);
        EXPECT_LE(s.arrangement_vertices().size(), tau * (tau + 1));
        for (const Point& p : s.arrangement_vertices()) {
            // Each vertex lies on at least two of the circles.
            int on = 0;
            for (const Point& c : s.subcurve().vertices()) on += std::abs(distance(p, c) - (1.5 + kEps)) < 1e-12;
            EXPECT_GE(on, 2);
        }
    }
}

TEST(StripQuery, FarSegmentAllClosed) {
    const Curve sub{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    const StripStructure s(sub, 1.0);
    EXPECT_EQ(s.query({{0, 50}, {3, 51}}).str(), "t1 t2 t3 s1 s2 s3");
}

TEST(StripQuery, NearSegmentAllOpenNested) {
    const Curve sub{{0, 0}, {1, 0}, {2, 0}};
    const StripStructure s(sub, 0.4);
    EXPECT_EQ(s.query({{-1, 0}, {3, 0}}).str(), "s1 t1 s2 t2");
}
