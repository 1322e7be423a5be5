#pragma once

// Shared helpers for the test programs: random inputs and a numeric oracle for one box.

#include <random>
#include <vector>

#include "frechet/fast_decider.hpp"
#include "frechet/freespace.hpp"
#include "frechet/optimizer.hpp"
#include "frechet/strip.hpp"

namespace frechet::testing {

inline Curve random_curve(std::mt19937_64& rng, std::size_t n, double scale = 10.0) {
    std::uniform_real_distribution<double> u(0.0, scale);
    std::vector<Point> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back({u(rng), u(rng)});
    return Curve(std::move(v));
}

/// Random walk with unit Gaussian steps; closer to real trajectories than uniform points.
inline Curve walk_curve(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<Point> v{{0.0, 0.0}};
    while (v.size() < n) {
        const double dx = d(rng), dy = d(rng);
        v.push_back(v.back() + Point{dx, dy});
    }
    return Curve(std::move(v));
}

/// A random sub-interval of `door`, or empty with probability p_empty.
inline Interval random_reach(std::mt19937_64& rng, const Interval& door, double p_empty = 0.25) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (door.is_empty() || u(rng) < p_empty) return Interval::empty();
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: return door;
        case 1: return Interval(door.lo() + u(rng) * (door.hi() - door.lo()), door.hi());
        default: {
            double a = door.lo() + u(rng) * (door.hi() - door.lo());
            double b = door.lo() + u(rng) * (door.hi() - door.lo());
            if (a > b) std::swap(a, b);
            return Interval(a, b);
        }
    }
}

/// One concrete elementary box: w edges of P' by h edges of Q', with incoming reach-doors.
struct BoxCase {
    Curve P, Q;
    double delta = 1.0;
    DoorGrid doors;
    std::vector<Interval> left, bottom;  // incoming, per row / per column
};

inline BoxCase random_box(std::mt19937_64& rng, std::size_t w, std::size_t h) {
    BoxCase b;
    b.P = random_curve(rng, w + 1, 4.0);
    b.Q = random_curve(rng, h + 1, 4.0);
    b.delta = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
    b.doors = build_door_grid(b.P, b.Q, b.delta);
    for (std::size_t j = 0; j < h; ++j) b.left.push_back(random_reach(rng, b.doors.vertical(0, j)));
    for (std::size_t i = 0; i < w; ++i) b.bottom.push_back(random_reach(rng, b.doors.horizontal(i, 0)));
    return b;
}

struct BoxExits {
    std::vector<Interval> right, top;
};

/// Baseline propagation through the box.
inline BoxExits numeric_exits(const BoxCase& b) {
    const std::size_t w = b.P.edge_count(), h = b.Q.edge_count();
    std::vector<Interval> left = b.left;
    BoxExits out;
    for (std::size_t i = 0; i < w; ++i) {
        Interval bottom = b.bottom[i];
        for (std::size_t j = 0; j < h; ++j) {
            const Interval l = left[j];
            left[j] = detail::propagate(l, bottom, b.doors.vertical(i + 1, j));
            bottom = detail::propagate(bottom, l, b.doors.horizontal(i, j + 1));
        }
        out.top.push_back(bottom);
    }
    out.right = left;
    return out;
}

/// Signature route: partial orders from the direct method, completion, symbolic DP, resolution.
inline BoxExits combinatorial_exits(const BoxCase& b, SignatureCache* cache = nullptr) {
    const std::size_t w = b.P.edge_count(), h = b.Q.edge_count();
    PartialSignature psig;
    std::vector<std::vector<DoorValues>> row_vals(h), col_vals(w);
    for (std::size_t j = 0; j < h; ++j) {
        psig.rows.push_back(row_door_order_direct(b.P, b.Q.edge(j), b.delta));
        for (std::size_t i = 1; i <= w; ++i) row_vals[j].push_back(DoorValues::from(b.doors.vertical(i, j)));
    }
    for (std::size_t i = 0; i < w; ++i) {
        psig.columns.push_back(row_door_order_direct(b.Q, b.P.edge(i), b.delta));
        for (std::size_t j = 1; j <= h; ++j) col_vals[i].push_back(DoorValues::from(b.doors.horizontal(i, j)));
    }
    const Signature sig = complete_signature(psig, b.left, b.bottom, row_vals, col_vals);
    const ReachabilityStructure rs = cache ? cache->get(sig) : reachability_structure(sig);
    BoxExits out;
    for (std::size_t j = 0; j < h; ++j)
        out.right.push_back(
            detail::resolve_exit(rs.right_exits[j], sig.rows[j], DoorValues::from(b.left[j]), row_vals[j]));
    for (std::size_t i = 0; i < w; ++i)
        out.top.push_back(
            detail::resolve_exit(rs.top_exits[i], sig.columns[i], DoorValues::from(b.bottom[i]), col_vals[i]));
    return out;
}

/// Same emptiness and endpoints within tol.
inline bool intervals_close(const Interval& a, const Interval& b, double tol) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
    return std::abs(a.lo() - b.lo()) <= tol && std::abs(a.hi() - b.hi()) <= tol;
}

// Inverse of critical_value_at, written against the documented block order.
inline std::uint64_t index_of(const Curve& P, const Curve& Q, const CriticalValue& c) {
    const CriticalIndexSpace s(P, Q);
    switch (c.kind) {
        case CriticalKind::VertexVertex: return c.i * Q.vertex_count() + c.j;
        case CriticalKind::VertexEdge:
            return c.vertices_on_p ? s.vv + c.i * Q.edge_count() + c.e
                                   : s.vv + s.ve_p + c.i * P.edge_count() + c.e;
        case CriticalKind::VertexVertexEdge: {
            const std::uint64_t nv = c.vertices_on_p ? P.vertex_count() : Q.vertex_count();
            const std::uint64_t ne = c.vertices_on_p ? Q.edge_count() : P.edge_count();
            // Pairs (i', j') with i' < i come first: sum over rows of (nv - 1 - i').
            const std::uint64_t pair = c.i * (2 * nv - c.i - 1) / 2 + (c.j - c.i - 1);
            return s.vv + s.ve_p + s.ve_q + (c.vertices_on_p ? 0 : s.vve_p) + pair * ne + c.e;
        }
    }
    return 0;
}

}  // namespace frechet::testing
