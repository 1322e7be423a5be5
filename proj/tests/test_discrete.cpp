#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "frechet/discrete.hpp"
#include "frechet/freespace.hpp"

using namespace frechet;

namespace {

// Exhaustive search over monotone couplings, pruned by the best bottleneck found so far.
double coupling_oracle(const PointSequence& P, const PointSequence& Q) {
    double best = 1e300;
    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double cur) {
        cur = std::max(cur, distance(P[i], Q[j]));
        if (cur >= best) return;
        if (i + 1 == P.size() && j + 1 == Q.size()) {
            best = cur;
            return;
        }
        if (i + 1 < P.size() && j + 1 < Q.size()) walk(i + 1, j + 1, cur);
        if (i + 1 < P.size()) walk(i + 1, j, cur);
        if (j + 1 < Q.size()) walk(i, j + 1, cur);
    };
    walk(0, 0, 0.0);
    return best;
}

PointSequence random_sequence(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0, 10);
    PointSequence s;
    for (std::size_t i = 0; i < n; ++i) s.push_back({u(rng), u(rng)});
    return s;
}

}  // namespace

TEST(DiscreteDecide, Examples) {
    const PointSequence P{{0, 0}, {1, 0}, {2, 0}}, Q{{0, 1}, {1, 1}, {2, 1}};
    EXPECT_TRUE(discrete_decide(P, Q, 1.0));
    EXPECT_FALSE(discrete_decide(P, Q, 0.5));
    EXPECT_TRUE(discrete_decide({{0, 0}}, {{3, 4}}, 5.0));
}

TEST(DiscreteCompute, Examples) {
    EXPECT_DOUBLE_EQ(discrete_compute({{0, 0}, {2, 0}}, {{0, 0}, {1, 1}, {2, 0}}), std::sqrt(2.0));
    const PointSequence P{{1, 2}, {3, 1}, {0, 5}};
    EXPECT_EQ(discrete_compute(P, P), 0.0);
}

TEST(DiscreteCompute, MatchesCouplingEnumeration) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> len(1, 12);
    for (int it = 0; it < 300; ++it) {
        const PointSequence P = random_sequence(rng, len(rng)), Q = random_sequence(rng, len(rng));
        const double want = coupling_oracle(P, Q);
        EXPECT_EQ(discrete_compute(P, Q), want) << it;
        EXPECT_EQ(discrete_compute_recurrence(P, Q), want) << it;
    }
}

TEST(DiscreteCompute, BoundsContinuousDistance) {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 100; ++it) {
        const PointSequence P = random_sequence(rng, 2 + it % 6), Q = random_sequence(rng, 2 + it % 4);
        const double d = discrete_compute(P, Q);
        EXPECT_TRUE(decide_baseline(Curve(P), Curve(Q), d));
    }
}

TEST(DiscreteDecide, RejectsEmpty) { EXPECT_THROW(discrete_decide({}, {{0, 0}}, 1.0), std::invalid_argument); }
