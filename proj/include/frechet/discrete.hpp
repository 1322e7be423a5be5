#pragma once

// Discrete Frechet distance between point sequences.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

using PointSequence = std::vector<Point>;

/// Is (p_n, q_m) reachable from (p_1, q_1) in the coupling graph G_delta?
/// Row sweep over the shorter sequence, O(|P||Q|) time, O(min(|P|,|Q|)) space.
inline bool discrete_decide(const PointSequence& P, const PointSequence& Q, double delta) {
    if (P.empty() || Q.empty()) throw std::invalid_argument("discrete_decide: empty sequence");
    const PointSequence& outer = P.size() >= Q.size() ? P : Q;
    const PointSequence& inner = P.size() >= Q.size() ? Q : P;
    std::vector<char> prev(inner.size(), 0), cur(inner.size(), 0);
    for (std::size_t i = 0; i < outer.size(); ++i) {
        for (std::size_t j = 0; j < inner.size(); ++j) {
            const bool free = distance(outer[i], inner[j]) <= delta;
            bool reach = false;
            if (free) {
                if (i == 0 && j == 0) reach = true;
                else
                    reach = (i > 0 && prev[j]) || (j > 0 && cur[j - 1]) ||
                            (i > 0 && j > 0 && prev[j - 1]);
            }
            cur[j] = reach;
        }
        std::swap(prev, cur);
    }
    return prev.back() != 0;
}

/// Smallest delta for which discrete_decide holds; binary search over pairwise distances.
inline double discrete_compute(const PointSequence& P, const PointSequence& Q) {
    if (P.empty() || Q.empty()) throw std::invalid_argument("discrete_compute: empty sequence");
    std::vector<double> d;
    d.reserve(P.size() * Q.size());
    for (const Point& p : P)
        for (const Point& q : Q) d.push_back(distance(p, q));
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    std::size_t lo = 0, hi = d.size() - 1;  // d[hi] always feasible
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (discrete_decide(P, Q, d[mid])) hi = mid;
        else lo = mid + 1;
    }
    return d[lo];
}

/// Classic max-min recurrence; the second route for discrete_compute.
inline double discrete_compute_recurrence(const PointSequence& P, const PointSequence& Q) {
    if (P.empty() || Q.empty()) throw std::invalid_argument("discrete_compute: empty sequence");
    std::vector<double> prev(Q.size()), cur(Q.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = 0; j < Q.size(); ++j) {
            const double d = distance(P[i], Q[j]);
            double best;
            if (i == 0 && j == 0) best = d;
            else if (i == 0) best = std::max(cur[j - 1], d);
            else if (j == 0) best = std::max(prev[j], d);
            else best = std::max(std::min({prev[j], cur[j - 1], prev[j - 1]}), d);
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    return prev.back();
}

}  // namespace frechet
