#pragma once

// Exact Frechet distance: critical values, uniform sampling over the critical-value index space,
// median search for an atomic interval, and a radius sweep that enumerates the vertex-vertex-edge
// values inside it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frechet/freespace.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

enum class CriticalKind { VertexVertex, VertexEdge, VertexVertexEdge };

/// One slot of the critical-value index space. `vertices_on_p` tells which curve supplies the
/// vertices i (and j); the edge e is on the other curve. For VertexVertex, i is on P and j on Q.
struct CriticalValue {
    CriticalKind kind = CriticalKind::VertexVertex;
    bool vertices_on_p = true;
    std::size_t i = 0, j = 0, e = 0;
    std::optional<double> value;
};

struct AtomicInterval {
    double a = 0.0;
    double b = std::numeric_limits<double>::infinity();
};

/// Sizes of the five blocks of the index space, in enumeration order.
struct CriticalIndexSpace {
    std::uint64_t vv, ve_p, ve_q, vve_p, vve_q;

    explicit CriticalIndexSpace(const Curve& P, const Curve& Q) {
        const std::uint64_t vp = P.vertex_count(), vq = Q.vertex_count();
        const std::uint64_t ep = P.edge_count(), eq = Q.edge_count();
        vv = vp * vq;
        ve_p = vp * eq;
        ve_q = vq * ep;
        vve_p = vp * (vp - 1) / 2 * eq;
        vve_q = vq * (vq - 1) / 2 * ep;
    }
    std::uint64_t size() const { return vv + ve_p + ve_q + vve_p + vve_q; }
};

namespace detail {

/// k-th pair (i < j) of {0..n-1} in lexicographic order.
inline std::pair<std::size_t, std::size_t> pair_at(std::uint64_t k, std::uint64_t n) {
    // Row i starts at i*(2n - i - 1)/2; invert with a square root and correct rounding.
    const double nn = double(n);
    auto start = [&](std::uint64_t i) { return i * (2 * n - i - 1) / 2; };
    std::uint64_t i = std::uint64_t(std::max(
        0.0, std::floor(((2 * nn - 1) - std::sqrt((2 * nn - 1) * (2 * nn - 1) - 8.0 * double(k))) / 2)));
    while (i > 0 && start(i) > k) --i;
    while (i + 1 < n && start(i + 1) <= k) ++i;
    return {std::size_t(i), std::size_t(i + 1 + (k - start(i)))};
}

}  // namespace detail

inline CriticalValue critical_value_at(const Curve& P, const Curve& Q, std::uint64_t idx) {
    const CriticalIndexSpace s(P, Q);
    if (idx >= s.size()) throw std::out_of_range("critical_value_at: index");
    CriticalValue c;
    if (idx < s.vv) {
        c.kind = CriticalKind::VertexVertex;
        c.i = std::size_t(idx / Q.vertex_count());
        c.j = std::size_t(idx % Q.vertex_count());
        c.value = distance(P.vertex(c.i), Q.vertex(c.j));
        return c;
    }
    idx -= s.vv;
    if (idx < s.ve_p + s.ve_q) {
        c.kind = CriticalKind::VertexEdge;
        c.vertices_on_p = idx < s.ve_p;
        if (!c.vertices_on_p) idx -= s.ve_p;
        const Curve& V = c.vertices_on_p ? P : Q;
        const Curve& E = c.vertices_on_p ? Q : P;
        c.i = std::size_t(idx / E.edge_count());
        c.e = std::size_t(idx % E.edge_count());
        c.value = point_segment_distance(V.vertex(c.i), E.edge(c.e));
        return c;
    }
    idx -= s.ve_p + s.ve_q;
    c.kind = CriticalKind::VertexVertexEdge;
    c.vertices_on_p = idx < s.vve_p;
    if (!c.vertices_on_p) idx -= s.vve_p;
    const Curve& V = c.vertices_on_p ? P : Q;
    const Curve& E = c.vertices_on_p ? Q : P;
    std::tie(c.i, c.j) = detail::pair_at(idx / E.edge_count(), V.vertex_count());
    c.e = std::size_t(idx % E.edge_count());
    c.value = bisector_edge_critical(V.vertex(c.i), V.vertex(c.j), E.edge(c.e));
    return c;
}

/// Every defined critical value, sorted, duplicates kept. Endpoint distances are among the
/// vertex-vertex values.
inline std::vector<double> critical_values_all(const Curve& P, const Curve& Q) {
    const CriticalIndexSpace s(P, Q);
    std::vector<double> out;
    out.reserve(std::size_t(s.size()));
    for (std::uint64_t k = 0; k < s.size(); ++k)
        if (auto v = critical_value_at(P, Q, k).value) out.push_back(*v);
    std::sort(out.begin(), out.end());
    return out;
}

/// Smallest critical value accepted by decide_baseline.
inline double compute_bruteforce(const Curve& P, const Curve& Q) {
    const std::vector<double> c = critical_values_all(P, Q);
    std::size_t lo = 0, hi = c.size() - 1;  // the largest value is always accepted
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (decide_baseline(P, Q, c[mid])) hi = mid;
        else lo = mid + 1;
    }
    return c[lo];
}

template <class URBG>
CriticalValue sample_critical(const Curve& P, const Curve& Q, URBG& rng) {
    const CriticalIndexSpace s(P, Q);
    std::uniform_int_distribution<std::uint64_t> pick(0, s.size() - 1);
    return critical_value_at(P, Q, pick(rng));
}

inline double max_vertex_distance(const Curve& P, const Curve& Q) {
    double m = 0.0;
    for (const Point& p : P.vertices())
        for (const Point& q : Q.vertices()) m = std::max(m, distance(p, q));
    return m;
}

/// Median search over a multiset of candidate values: returns (a, b) with decide(a) false or
/// a = 0, decide(b) true or b = +inf, and no candidate strictly between them.
template <class Decide>
AtomicInterval median_search(std::vector<double> values, Decide&& decide, std::size_t* decisions = nullptr) {
    AtomicInterval iv;
    while (!values.empty()) {
        const auto mid = values.begin() + std::ptrdiff_t(values.size() / 2);
        std::nth_element(values.begin(), mid, values.end());
        const double m = *mid;
        if (decisions) ++*decisions;
        if (decide(m)) {
            iv.b = m;
            std::erase_if(values, [m](double v) { return v >= m; });
        } else {
            iv.a = m;
            std::erase_if(values, [m](double v) { return v <= m; });
        }
    }
    return iv;
}

template <class Decide, class URBG>
AtomicInterval atomic_interval(const Curve& P, const Curve& Q, std::size_t K, Decide&& decide, URBG& rng,
                               std::size_t* decisions = nullptr) {
    if (K < 1) throw std::invalid_argument("atomic_interval: K must be positive");
    std::vector<double> sample;
    sample.reserve(K);
    for (std::size_t k = 0; k < K; ++k)
        if (auto v = sample_critical(P, Q, rng).value) sample.push_back(*v);
    AtomicInterval iv = median_search(std::move(sample), decide, decisions);
    if (std::isinf(iv.b)) {
        iv.b = max_vertex_distance(P, Q);
        if (decisions) ++*decisions;
        if (!decide(iv.b)) throw std::logic_error("decider rejects the largest vertex distance");
        if (iv.b < iv.a) throw std::logic_error("decider is not monotone");
    }
    return iv;
}

namespace detail {

/// Parameter on seg where the bisector of u, v crosses its line (same formula as
/// bisector_edge_critical).
inline double bisector_param(Point u, Point v, const Segment& seg) {
    const Point d = seg.direction();
    const Point uv = v - u;
    return ((norm2(v) - norm2(u)) / 2.0 - dot(uv, seg.a)) / dot(uv, d);
}

}  // namespace detail

/// Vertex-vertex-edge critical values on `edge` for the circles around `centers`, with radius
/// in [a, b]. Sweeps the radius from a to b keeping the arc/edge intersection points sorted
/// along the edge; every coincidence of two adjacent points of different circles is one value.
inline std::vector<double> arc_sweep(const Segment& edge, const std::vector<Point>& centers, double a, double b) {
    if (a > b || a < 0.0) throw std::invalid_argument("arc_sweep: need 0 <= a <= b");
    std::vector<double> out;
    if (edge.degenerate() || centers.size() < 2) return out;

    const std::size_t n = centers.size();
    const double len = std::sqrt(norm2(edge.direction()));
    std::vector<double> foot(n), height(n);
    for (std::size_t c = 0; c < n; ++c) {
        foot[c] = foot_param(centers[c], edge);
        height[c] = std::abs(cross(edge.direction(), centers[c] - edge.a)) / len;
    }
    // Point id 2c is the left intersection of circle c, 2c + 1 the right one.
    auto root = [&](std::size_t id, double r) {
        const std::size_t c = id / 2;
        const double h = height[c];
        const double half = std::sqrt(std::max(0.0, (r - h) * (r + h))) / len;
        return id % 2 ? foot[c] + half : foot[c] - half;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> r_in(2 * n, inf), r_out(2 * n, -inf);
    for (std::size_t c = 0; c < n; ++c) {
        const double f = foot[c], da = distance(centers[c], edge.a), db = distance(centers[c], edge.b);
        if (f >= 0.0) {  // left point: born at the foot or enters at t = 1, leaves at t = 0
            r_in[2 * c] = f <= 1.0 ? height[c] : db;
            r_out[2 * c] = da;
        }
        if (f <= 1.0) {  // right point: born at the foot or enters at t = 0, leaves at t = 1
            r_in[2 * c + 1] = f >= 0.0 ? height[c] : da;
            r_out[2 * c + 1] = db;
        }
    }

    enum Kind { Activate = 0, Swap = 1, Deactivate = 2 };
    struct Event {
        double r;
        int kind;
        std::size_t p, q;
        bool operator>(const Event& o) const { return std::tie(r, kind, p, q) > std::tie(o.r, o.kind, o.p, o.q); }
    };
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    std::vector<std::size_t> order;
    std::set<std::pair<std::size_t, std::size_t>> processed;
    double now = a;

    auto schedule_swap = [&](std::size_t pi) {
        if (pi + 1 >= order.size()) return;
        const std::size_t p = order[pi], q = order[pi + 1];
        const std::size_t cp = p / 2, cq = q / 2;
        if (cp == cq || processed.count({std::min(cp, cq), std::max(cp, cq)})) return;
        const auto r = bisector_edge_critical(centers[cp], centers[cq], edge);
        // Meetings at the current radius may be computed a few ulps below it (birth at a foot).
        if (!r || *r < now - 1e-9 * std::max(1.0, now) || *r > b) return;
        // The two points that meet are the ones on the bisector's side of their feet.
        const double x = detail::bisector_param(centers[cp], centers[cq], edge);
        auto role_ok = [&](std::size_t id) {
            const double f = foot[id / 2];
            return id % 2 ? x >= f - 1e-12 : x <= f + 1e-12;
        };
        if (role_ok(p) && role_ok(q)) events.push({std::max(*r, now), Swap, p, q});
    };
    // Positions of points that coincide can differ by about sqrt(ulp) right after a birth.
    constexpr double kNear = 1e-6;
    // Coincident points are ordered as they will be just after `now`: by speed along the edge,
    // r / (L^2 (x - foot)).
    auto speed_key = [&](std::size_t id) {
        const double d = root(id, now) - foot[id / 2];
        if (d == 0.0) return id % 2 ? inf : -inf;
        return 1.0 / d;
    };
    // Two points share a position now if their circles meet at this radius, or (twins, equal or
    // mirrored centres) if they are within kNear.
    auto coincide = [&](std::size_t x, std::size_t y) {
        const std::size_t cx = x / 2, cy = y / 2;
        if (cx != cy) {
            if (const auto r = bisector_edge_critical(centers[cx], centers[cy], edge))
                return std::abs(*r - now) <= 1e-9 * std::max(1.0, now);
        }
        return std::abs(root(x, now) - root(y, now)) <= kNear;
    };
    // Insertion sort: the comparator is not transitive across unrelated near points.
    auto sort_by_speed = [&](std::size_t lo, std::size_t hi) {
        auto before = [&](std::size_t x, std::size_t y) {
            return coincide(x, y) ? speed_key(x) < speed_key(y) : root(x, now) < root(y, now);
        };
        for (std::size_t k = lo + 1; k < hi; ++k)
            for (std::size_t m = k; m > lo && before(order[m], order[m - 1]); --m) std::swap(order[m], order[m - 1]);
    };
    auto insert_at_current = [&](std::size_t id) {
        const double t = root(id, now);
        auto it = std::lower_bound(order.begin(), order.end(), t - kNear,
                                   [&](std::size_t o, double v) { return root(o, now) < v; });
        while (it != order.end() && root(*it, now) <= t + kNear &&
               (coincide(*it, id) ? speed_key(*it) <= speed_key(id) : root(*it, now) <= t))
            ++it;
        const std::size_t pos = std::size_t(it - order.begin());
        order.insert(it, id);
        if (pos > 0) schedule_swap(pos - 1);
        schedule_swap(pos);
    };

    for (std::size_t id = 0; id < 2 * n; ++id) {
        if (r_in[id] > r_out[id]) continue;
        if (r_in[id] <= a && a <= r_out[id]) order.push_back(id);
        else if (r_in[id] > a && r_in[id] <= b) events.push({r_in[id], Activate, id, id});
        if (r_out[id] >= a && r_out[id] <= b) events.push({r_out[id], Deactivate, id, id});
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double rx = root(x, a), ry = root(y, a);
        if (rx != ry) return rx < ry;
        return x < y;
    });
    for (std::size_t lo = 0; lo < order.size();) {
        std::size_t hi = lo + 1;
        while (hi < order.size() && root(order[hi], now) - root(order[hi - 1], now) <= kNear) ++hi;
        sort_by_speed(lo, hi);
        lo = hi;
    }
    for (std::size_t pi = 0; pi + 1 < order.size(); ++pi) schedule_swap(pi);

    while (!events.empty()) {
        const Event ev = events.top();
        events.pop();
        now = ev.r;
        if (ev.kind == Activate) {
            insert_at_current(ev.p);
        } else if (ev.kind == Deactivate) {
            const auto it = std::find(order.begin(), order.end(), ev.p);
            if (it == order.end()) continue;
            const std::size_t pos = std::size_t(it - order.begin());
            order.erase(it);
            if (pos > 0) schedule_swap(pos - 1);
        } else {
            const auto it = std::find(order.begin(), order.end(), ev.p);
            if (it == order.end() || it + 1 == order.end() || *(it + 1) != ev.q) continue;
            const std::size_t cp = ev.p / 2, cq = ev.q / 2;
            if (processed.count({std::min(cp, cq), std::max(cp, cq)})) continue;
            // Several points may meet at once (repeated or mirrored centres, integer inputs):
            // handle the whole block of coincident points.
            const double x = root(ev.p, now);
            std::size_t lo = std::size_t(it - order.begin()), hi = lo + 1;
            while (lo > 0 && std::abs(root(order[lo - 1], now) - x) <= kNear) --lo;
            while (hi + 1 < order.size() && std::abs(root(order[hi + 1], now) - x) <= kNear) ++hi;
            for (std::size_t u = lo; u <= hi; ++u)
                for (std::size_t v = u + 1; v <= hi; ++v) {
                    const std::size_t cu = order[u] / 2, cv = order[v] / 2;
                    if (cu == cv || processed.count({std::min(cu, cv), std::max(cu, cv)})) continue;
                    const auto r = bisector_edge_critical(centers[cu], centers[cv], edge);
                    if (!r || std::abs(*r - now) > 1e-9 * std::max(1.0, now)) continue;
                    processed.insert({std::min(cu, cv), std::max(cu, cv)});
                    if (*r >= a && *r <= b) out.push_back(*r);
                }
            sort_by_speed(lo, hi + 1);
            for (std::size_t u = lo == 0 ? 0 : lo - 1; u <= hi; ++u) schedule_swap(u);
        }
    }
    return out;
}

/// All critical values in [a, b]; pair types by scanning, vertex-vertex-edge by arc sweeps.
inline std::vector<double> collect_in_interval(const Curve& P, const Curve& Q, double a, double b) {
    if (a > b) throw std::invalid_argument("collect_in_interval: a > b");
    std::vector<double> out;
    auto keep = [&](double v) {
        if (v >= a && v <= b) out.push_back(v);
    };
    for (const Point& p : P.vertices())
        for (const Point& q : Q.vertices()) keep(distance(p, q));
    for (const Point& p : P.vertices())
        for (std::size_t e = 0; e < Q.edge_count(); ++e) keep(point_segment_distance(p, Q.edge(e)));
    for (const Point& q : Q.vertices())
        for (std::size_t e = 0; e < P.edge_count(); ++e) keep(point_segment_distance(q, P.edge(e)));
    const double lo = std::max(a, 0.0);
    for (std::size_t e = 0; e < Q.edge_count(); ++e)
        for (double v : arc_sweep(Q.edge(e), P.vertices(), lo, b)) keep(v);
    for (std::size_t e = 0; e < P.edge_count(); ++e)
        for (double v : arc_sweep(P.edge(e), Q.vertices(), lo, b)) keep(v);
    return out;
}

struct FrechetResult {
    double value = 0.0;
    AtomicInterval interval;
    std::size_t samples = 0;       // K
    std::size_t candidates = 0;    // K', critical values inside the atomic interval
    std::size_t decisions = 0;     // decider calls
};

/// Randomized exact computation with any decider bool(double delta).
template <class Decide, class URBG>
FrechetResult compute_frechet(const Curve& P, const Curve& Q, Decide&& decide, URBG& rng) {
    FrechetResult res;
    const std::size_t n = std::max<std::size_t>({P.edge_count(), Q.edge_count(), 1});
    res.samples = 4 * n * n;
    res.interval = atomic_interval(P, Q, res.samples, decide, rng, &res.decisions);
    const std::vector<double> cand = collect_in_interval(P, Q, res.interval.a, res.interval.b);
    res.candidates = cand.size();
    const AtomicInterval fin = median_search(cand, decide, &res.decisions);
    // b of the atomic interval is itself an accepted critical value, so fin.b is finite.
    res.value = std::isinf(fin.b) ? res.interval.b : fin.b;
    return res;
}

template <class URBG>
FrechetResult compute_frechet(const Curve& P, const Curve& Q, URBG& rng) {
    return compute_frechet(P, Q, [&](double d) { return decide_baseline(P, Q, d); }, rng);
}

}  // namespace frechet
