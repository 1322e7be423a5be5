#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "frechet/optimizer.hpp"
#include "support.hpp"

using namespace frechet;

namespace {

// Independent value of a slot, straight from the definitions.
std::optional<double> slot_value(const Curve& P, const Curve& Q, const CriticalValue& c) {
    const Curve& V = c.vertices_on_p ? P : Q;
    const Curve& E = c.vertices_on_p ? Q : P;
    switch (c.kind) {
        case CriticalKind::VertexVertex: return distance(P.vertex(c.i), Q.vertex(c.j));
        case CriticalKind::VertexEdge: return point_segment_distance(V.vertex(c.i), E.edge(c.e));
        case CriticalKind::VertexVertexEdge: return bisector_edge_critical(V.vertex(c.i), V.vertex(c.j), E.edge(c.e));
    }
    return std::nullopt;
}

std::vector<double> filter_oracle(const Segment& edge, const std::vector<Point>& centers, double a, double b) {
    std::vector<double> out;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (auto v = bisector_edge_critical(centers[i], centers[j], edge); v && *v >= a && *v <= b)
                out.push_back(*v);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(IndexSpace, Sizes) {
    const Curve P{{0, 0}, {1, 0}, {2, 0}}, Q{{0, 1}, {1, 1}, {2, 1}};
    EXPECT_EQ(CriticalIndexSpace(P, Q).size(), 33u);
    const Curve a{{0, 0}}, b{{3, 4}};
    EXPECT_EQ(CriticalIndexSpace(a, b).size(), 1u);
    EXPECT_EQ(critical_values_all(a, b), std::vector<double>{5.0});
    EXPECT_THROW(critical_value_at(a, b, 1), std::out_of_range);
}

TEST(IndexSpace, EverySlotRoundTrips) {
    std::mt19937_64 rng(10);
    for (int it = 0; it < 50; ++it) {
        const Curve P = frechet::testing::random_curve(rng, 1 + rng() % 6), Q = frechet::testing::random_curve(rng, 1 + rng() % 6);
        const CriticalIndexSpace s(P, Q);
        for (std::uint64_t k = 0; k < s.size(); ++k) {
            const CriticalValue c = critical_value_at(P, Q, k);
            ASSERT_EQ(frechet::testing::index_of(P, Q, c), k);
            EXPECT_EQ(c.value, slot_value(P, Q, c));
        }
    }
}

TEST(Sampling, ChiSquareUniform) {
    const Curve P{{0, 0}, {1, 0}, {2, 0}}, Q{{0, 1}, {1, 1}, {2, 1}};
    std::mt19937_64 rng(123);
    std::vector<double> counts(33, 0.0);
    const int draws = 66000;
    for (int k = 0; k < draws; ++k) counts[frechet::testing::index_of(P, Q, sample_critical(P, Q, rng))] += 1;
    const double expected = draws / 33.0;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    EXPECT_LT(chi2, 62.49);  // 0.999 quantile, 32 degrees of freedom
}

TEST(ArcSweep, SymmetricPairAboveEdge) {
    const auto v = arc_sweep({{0, 1}, {2, 1}}, {{0, 0}, {2, 0}}, 0.0, 10.0);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NEAR(v[0], std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(arc_sweep({{0, 1}, {2, 1}}, {{0, 0}, {2, 0}}, 0.0, 1.4).empty());
    EXPECT_EQ(arc_sweep({{0, 1}, {2, 1}}, {{0, 0}, {2, 0}}, std::sqrt(2.0), std::sqrt(2.0)).size(), 1u);
}

TEST(ArcSweep, FarEdgeHasNoValues) {
    EXPECT_TRUE(arc_sweep({{5, 0}, {6, 0}}, {{0, 0}, {0, 2}, {1, 1}}, 0.0, 3.0).empty());
}

TEST(ArcSweep, MatchesPairFilter) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0, 10);
    for (int it = 0; it < 500; ++it) {
        const Segment edge{{u(rng), u(rng)}, {u(rng), u(rng)}};
        std::vector<Point> centers;
        for (std::size_t k = 0, n = 2 + rng() % 12; k < n; ++k) centers.push_back({u(rng), u(rng)});
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        auto got = arc_sweep(edge, centers, a, b);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, filter_oracle(edge, centers, a, b)) << it;
    }
}

TEST(ArcSweep, MatchesPairFilterOnGrid) {
    std::mt19937_64 rng(72);
    std::uniform_int_distribution<int> c(0, 4);
    for (int it = 0; it < 500; ++it) {
        const Segment edge{{double(c(rng)), double(c(rng))}, {double(c(rng)), double(c(rng))}};
        std::vector<Point> centers;
        for (std::size_t k = 0, n = 2 + rng() % 10; k < n; ++k) centers.push_back({double(c(rng)), double(c(rng))});
        auto got = arc_sweep(edge, centers, 0.0, 100.0);
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, filter_oracle(edge, centers, 0.0, 100.0)) << it;
    }
}

TEST(MedianSearch, BracketsThreshold) {
    std::vector<double> v{5, 1, 4, 2, 3, 3, 9};
    std::size_t calls = 0;
    const AtomicInterval iv = median_search(v, [](double d) { return d >= 3.5; }, &calls);
    EXPECT_EQ(iv.a, 3.0);
    EXPECT_EQ(iv.b, 4.0);
    EXPECT_LE(calls, 4u);
    const AtomicInterval all = median_search({1, 2}, [](double) { return true; });
    EXPECT_EQ(all.a, 0.0);
    EXPECT_EQ(all.b, 1.0);
}

TEST(AtomicIntervalTest, AlwaysFalseDeciderThrows) {
    std::mt19937_64 rng(1);
    const Curve P{{0, 0}, {1, 0}}, Q{{0, 1}, {1, 1}};
    EXPECT_THROW(atomic_interval(P, Q, 8, [](double) { return false; }, rng), std::logic_error);
}

TEST(ComputeFrechet, Examples) {
    std::mt19937_64 rng(2);
    EXPECT_EQ(compute_frechet(Curve{{0, 0}, {1, 0}}, Curve{{0, 1}, {1, 1}}, rng).value, 1.0);
    const Curve P{{0, 0}, {1, 3}, {4, 2}, {5, 5}};
    EXPECT_EQ(compute_frechet(P, P, rng).value, 0.0);
    EXPECT_EQ(compute_frechet(Curve{{0, 0}}, Curve{{3, 4}}, rng).value, 5.0);
    EXPECT_NEAR(compute_frechet(Curve{{0, 0}, {2, 0}}, Curve{{0, 0}, {1, 1}, {2, 0}}, rng).value, 1.0, 1e-12);
}

TEST(ComputeFrechet, EqualsBruteForce) {
    std::mt19937_64 rng(909);
    for (int it = 0; it < 100; ++it) {
        const Curve P = frechet::testing::walk_curve(rng, 2 + rng() % 10);
        const Curve Q = frechet::testing::walk_curve(rng, 2 + rng() % 10);
        const FrechetResult r = compute_frechet(P, Q, rng);
        EXPECT_EQ(r.value, compute_bruteforce(P, Q)) << it;
        EXPECT_TRUE(decide_baseline(P, Q, r.value));
        EXPECT_LE(r.interval.a, r.value);
        EXPECT_LE(r.value, r.interval.b);
    }
}

TEST(CollectInInterval, FullRangeEqualsAllValues) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        const Curve P = frechet::testing::random_curve(rng, 1 + rng() % 7), Q = frechet::testing::random_curve(rng, 1 + rng() % 7);
        auto got = collect_in_interval(P, Q, 0.0, std::numeric_limits<double>::infinity());
        std::sort(got.begin(), got.end());
        EXPECT_EQ(got, critical_values_all(P, Q)) << it;
    }
}
