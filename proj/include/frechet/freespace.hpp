#pragma once

// Free-space diagram of two polygonal curves and the quadratic reachability sweep.

#include <cstddef>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

/// Row-major 2D array of intervals indexed (i, j).
class IntervalGrid {
public:
    IntervalGrid() = default;
    IntervalGrid(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Interval::empty()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const IntervalGrid&, const IntervalGrid&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Interval> data_;
};

/// Doors on all cell boundaries.
///   vertical(i, j):   boundary x = i inside row j, parameter along Q's edge j.   (n_p+1) x n_q
///   horizontal(i, j): boundary y = j inside column i, parameter along P's edge i. n_p x (n_q+1)
struct DoorGrid {
    std::size_t n_p = 0;
    std::size_t n_q = 0;
    IntervalGrid vertical;
    IntervalGrid horizontal;
    bool start_free = false;
    bool end_free = false;
};

/// Door intersected with the reachable set, same shapes as DoorGrid.
struct ReachFront {
    IntervalGrid vertical_reach;
    IntervalGrid horizontal_reach;
};

inline DoorGrid build_door_grid(const Curve& P, const Curve& Q, double delta) {
    DoorGrid g;
    g.n_p = P.edge_count();
    g.n_q = Q.edge_count();
    g.vertical = IntervalGrid(g.n_p + 1, g.n_q);
    g.horizontal = IntervalGrid(g.n_p, g.n_q + 1);
    for (std::size_t i = 0; i <= g.n_p; ++i)
        for (std::size_t j = 0; j < g.n_q; ++j)
            g.vertical(i, j) = free_interval(P.vertex(i), Q.edge(j), delta);
    for (std::size_t i = 0; i < g.n_p; ++i)
        for (std::size_t j = 0; j <= g.n_q; ++j)
            g.horizontal(i, j) = free_interval(Q.vertex(j), P.edge(i), delta);
    g.start_free = distance(P.vertex(0), Q.vertex(0)) <= delta + kEps;
    g.end_free = distance(P.vertices().back(), Q.vertices().back()) <= delta + kEps;
    return g;
}

namespace detail {

/// Part of `door` at or above `lower`; empty if none.
inline Interval clip_from(double lower, const Interval& door) {
    if (door.is_empty()) return door;
    const double lo = std::max(lower, door.lo());
    return lo <= door.hi() ? Interval(lo, door.hi()) : Interval::empty();
}

/// One cell of the sweep: reach on the exit door given the two incoming reach-doors.
/// `across` enters from the side perpendicular to the exit, `along` from the opposite side.
inline Interval propagate(const Interval& along, const Interval& across, const Interval& exit_door) {
    if (!across.is_empty()) return exit_door;
    if (along.is_empty()) return Interval::empty();
    return clip_from(along.lo(), exit_door);
}

/// Reach along one outer boundary (x = 0 or y = 0), starting at the origin.
inline void boundary_reach(const IntervalGrid& doors, bool vertical_side, IntervalGrid& out) {
    const std::size_t count = vertical_side ? doors.cols() : doors.rows();
    bool connected = true;
    for (std::size_t k = 0; k < count; ++k) {
        const Interval& door = vertical_side ? doors(0, k) : doors(k, 0);
        Interval r = (connected && !door.is_empty() && door.lo() == 0.0) ? door : Interval::empty();
        (vertical_side ? out(0, k) : out(k, 0)) = r;
        connected = !r.is_empty() && r.hi() == 1.0;
    }
}

/// Decision when one curve has no edges: every point of the other is within delta.
inline bool point_curve_within(Point p, const Curve& C, double delta) {
    if (C.edge_count() == 0) return distance(p, C.vertex(0)) <= delta + kEps;
    for (std::size_t j = 0; j < C.edge_count(); ++j)
        if (!(free_interval(p, C.edge(j), delta) == Interval::full())) return false;
    return true;
}

inline bool degenerate_decision(const Curve& P, const Curve& Q, double delta, bool& result) {
    if (P.edge_count() == 0) {
        result = point_curve_within(P.vertex(0), Q, delta);
        return true;
    }
    if (Q.edge_count() == 0) {
        result = point_curve_within(Q.vertex(0), P, delta);
        return true;
    }
    return false;
}

/// Final corner test shared by all deciders.
inline bool corner_reached(const Interval& last_right, const Interval& last_top) {
    return (!last_right.is_empty() && last_right.hi() == 1.0) ||
           (!last_top.is_empty() && last_top.hi() == 1.0);
}

}  // namespace detail

/// Outer-boundary reach only (x = 0 column and y = 0 row); interior left empty.
inline ReachFront initial_front(const DoorGrid& g) {
    ReachFront f{IntervalGrid(g.n_p + 1, g.n_q), IntervalGrid(g.n_p, g.n_q + 1)};
    detail::boundary_reach(g.vertical, true, f.vertical_reach);
    detail::boundary_reach(g.horizontal, false, f.horizontal_reach);
    return f;
}

/// Cell-by-cell propagation, column-major, bottom to top.
inline ReachFront reach_front(const DoorGrid& g) {
    ReachFront f = initial_front(g);
    for (std::size_t i = 0; i < g.n_p; ++i) {
        for (std::size_t j = 0; j < g.n_q; ++j) {
            const Interval left = f.vertical_reach(i, j);
            const Interval bottom = f.horizontal_reach(i, j);
            f.vertical_reach(i + 1, j) = detail::propagate(left, bottom, g.vertical(i + 1, j));
            f.horizontal_reach(i, j + 1) = detail::propagate(bottom, left, g.horizontal(i, j + 1));
        }
    }
    return f;
}

inline ReachFront reach_front(const Curve& P, const Curve& Q, double delta) {
    return reach_front(build_door_grid(P, Q, delta));
}

inline bool front_accepts(const DoorGrid& g, const ReachFront& f) {
    return detail::corner_reached(f.vertical_reach(g.n_p, g.n_q - 1),
                                  f.horizontal_reach(g.n_p - 1, g.n_q));
}

/// True iff the Frechet distance of P and Q is at most delta.
/// Same sweep as reach_front, but keeps one column of reach-doors and solves doors on the fly.
inline bool decide_baseline(const Curve& P, const Curve& Q, double delta) {
    bool result = false;
    if (detail::degenerate_decision(P, Q, delta, result)) return result;
    const std::size_t n_p = P.edge_count(), n_q = Q.edge_count();

    std::vector<Interval> left(n_q);
    bool connected = true;
    for (std::size_t j = 0; j < n_q; ++j) {
        const Interval door = free_interval(P.vertex(0), Q.edge(j), delta);
        left[j] = (connected && !door.is_empty() && door.lo() == 0.0) ? door : Interval::empty();
        connected = !left[j].is_empty() && left[j].hi() == 1.0;
    }

    connected = true;
    Interval top;
    for (std::size_t i = 0; i < n_p; ++i) {
        const Segment edge = P.edge(i);
        const Point next = P.vertex(i + 1);
        const Interval door = free_interval(Q.vertex(0), edge, delta);
        Interval bottom = (connected && !door.is_empty() && door.lo() == 0.0) ? door : Interval::empty();
        connected = !bottom.is_empty() && bottom.hi() == 1.0;
        for (std::size_t j = 0; j < n_q; ++j) {
            const Interval l = left[j];
            left[j] = detail::propagate(l, bottom, free_interval(next, Q.edge(j), delta));
            bottom = detail::propagate(bottom, l, free_interval(Q.vertex(j + 1), edge, delta));
        }
        top = bottom;
    }
    return detail::corner_reached(left[n_q - 1], top);
}

/// Everything needed to draw a free-space diagram.
struct FsdDiagram {
    double delta = 0.0;
    DoorGrid doors;
    ReachFront reach;
    bool verdict = false;
    /// Per cell (column-major, i * n_q + j): sampled free region in cell-local coords, may be empty.
    std::vector<std::vector<Point>> free_polygons;
    /// Per cell: convex hull of the reach-door endpoints on its boundary, empty if unreachable.
    std::vector<std::vector<Point>> reach_polygons;
};

namespace detail {

inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(),
              [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace detail

/// Diagram data for a pair of curves with at least one edge each; `samples` columns per cell.
inline FsdDiagram export_fsd(const Curve& P, const Curve& Q, double delta, int samples = 64) {
    FsdDiagram d;
    d.delta = delta;
    d.verdict = decide_baseline(P, Q, delta);
    if (P.edge_count() == 0 || Q.edge_count() == 0) return d;
    d.doors = build_door_grid(P, Q, delta);
    d.reach = reach_front(d.doors);
    const std::size_t np = d.doors.n_p, nq = d.doors.n_q;
    d.free_polygons.resize(np * nq);
    d.reach_polygons.resize(np * nq);
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < nq; ++j) {
            std::vector<Point> lower, upper;
            for (int k = 0; k < samples; ++k) {
                const double s = samples == 1 ? 0.5 : double(k) / double(samples - 1);
                const Interval col = free_interval(P.edge(i).at(s), Q.edge(j), delta);
                if (col.is_empty()) continue;
                lower.emplace_back(s, col.lo());
                upper.emplace_back(s, col.hi());
            }
            auto& poly = d.free_polygons[i * nq + j];
            poly = lower;
            poly.insert(poly.end(), upper.rbegin(), upper.rend());

            std::vector<Point> pts;
            auto add_v = [&](const Interval& r, double x) {
                if (!r.is_empty()) { pts.emplace_back(x, r.lo()); pts.emplace_back(x, r.hi()); }
            };
            auto add_h = [&](const Interval& r, double y) {
                if (!r.is_empty()) { pts.emplace_back(r.lo(), y); pts.emplace_back(r.hi(), y); }
            };
            const Interval in_left = d.reach.vertical_reach(i, j);
            const Interval in_bottom = d.reach.horizontal_reach(i, j);
            if (in_left.is_empty() && in_bottom.is_empty()) continue;
            add_v(in_left, 0.0);
            add_h(in_bottom, 0.0);
            add_v(d.reach.vertical_reach(i + 1, j), 1.0);
            add_h(d.reach.horizontal_reach(i, j + 1), 1.0);
            d.reach_polygons[i * nq + j] = detail::convex_hull(std::move(pts));
        }
    }
    return d;
}

}  // namespace frechet
