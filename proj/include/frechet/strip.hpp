#pragma once

// Partial door-orders of a query edge against a tau-edge subcurve P'.
//
// Two routes produce the same order: a direct one (solve each door, sort) and a preprocessed
// one built on the arrangement of radius-delta circles centred at the vertices of P'. The second
// locates the duals of the query line and its two parallels at distance delta in a slab
// subdivision of the dual line arrangement; the resulting cell triple fixes the order in which
// the line crosses the circles, so the crossing list is computed once per triple.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "frechet/door_order.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

/// Doors of `seg` against vertices 1..tau of the subcurve (index k - 1 for door k).
inline std::vector<DoorValues> row_doors(const Curve& sub, const Segment& seg, double delta) {
    std::vector<DoorValues> doors;
    doors.reserve(sub.edge_count());
    for (std::size_t k = 1; k < sub.vertex_count(); ++k)
        doors.push_back(DoorValues::from(free_interval(sub.vertex(k), seg, delta)));
    return doors;
}

inline DoorOrder row_door_order_direct(const Curve& sub, const Segment& seg, double delta) {
    return canonical_partial_order(row_doors(sub, seg, delta));
}

enum class StripStrategy { Direct, Arrangement };

class StripStructure {
public:
    StripStructure(Curve sub, double delta) : sub_(std::move(sub)), delta_(delta) {
        build_circle_vertices();
        build_slabs();
    }

    const Curve& subcurve() const { return sub_; }
    double delta() const { return delta_; }

    /// Vertices of the circle arrangement (pairwise intersection points).
    const std::vector<Point>& arrangement_vertices() const { return circle_vertices_; }
    /// Points whose dual lines form the line arrangement: circle vertices, then P' vertices.
    const std::vector<Point>& dual_sources() const { return dual_points_; }
    /// Vertices of the dual line arrangement, counted with multiplicity.
    std::size_t dual_vertex_count() const { return dual_vertex_count_; }
    std::size_t slab_count() const { return slab_bounds_.size() + 1; }
    std::size_t materialized_lists() const {
        std::lock_guard lock(mutex_);
        return lists_.size();
    }
    std::size_t fallback_queries() const { return fallbacks_; }

    DoorOrder query(const Segment& seg) const {
        const Point d = seg.direction();
        if (seg.degenerate() || std::abs(d.x) <= 1e-12 * std::sqrt(norm2(d)))
            return fallback(seg);

        const double m = d.y / d.x;
        const double c = seg.a.y - m * seg.a.x;
        const double offset = (delta_ + kEps) * std::sqrt(1.0 + m * m);
        const std::size_t slab =
            std::size_t(std::upper_bound(slab_bounds_.begin(), slab_bounds_.end(), m) - slab_bounds_.begin());
        // A query on a cell boundary does not share the cell's crossing order.
        bool boundary = false;
        auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); };
        if (slab > 0 && near(slab_bounds_[slab - 1], m)) boundary = true;
        if (slab < slab_bounds_.size() && near(slab_bounds_[slab], m)) boundary = true;
        const auto& order = slab_orders_[slab];
        // Dual point of y = m x + c is (m, -c); count dual lines strictly below it.
        auto rank = [&](double y) {
            const std::size_t r = std::size_t(std::partition_point(order.begin(), order.end(), [&](std::uint16_t li) {
                                                  return dual_value(li, m) < y;
                                              }) - order.begin());
            if (r > 0 && near(dual_value(order[r - 1], m), y)) boundary = true;
            if (r < order.size() && near(dual_value(order[r], m), y)) boundary = true;
            return std::uint16_t(r);
        };
        const TripleKey key{std::uint32_t(slab), rank(-c), rank(-c - offset), rank(-c + offset),
                            d.x > 0};
        if (boundary) return fallback(seg);

        CrossingList* list = nullptr;
        {
            std::lock_guard lock(mutex_);
            auto it = lists_.find(key);
            if (it == lists_.end()) it = lists_.emplace(key, build_list(seg)).first;
            list = &it->second;
        }
        return locate(*list, seg);
    }

private:
    struct TripleKey {
        std::uint32_t slab;
        std::uint16_t line_cell, above_cell, below_cell;
        bool rightward;
        friend auto operator<=>(const TripleKey&, const TripleKey&) = default;
    };

    struct Crossing {
        std::uint8_t circle;
        bool exit;
    };

    /// Crossings of the query line with the circles, in order along the edge direction.
    struct CrossingList {
        std::vector<Crossing> events;
        std::vector<int> enter_pos;  // per circle, -1 if the line misses it
        std::vector<int> exit_pos;
        std::map<std::array<int, 4>, DoorOrder> orders;  // memo keyed by endpoint locations
    };

    double dual_value(std::uint16_t line, double x) const {
        const Point& p = dual_points_[line];
        return p.x * x - p.y;
    }

    void build_circle_vertices() {
        const auto& c = sub_.vertices();
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                const Point d = c[j] - c[i];
                const double dist2 = norm2(d);
                if (dist2 == 0.0) continue;  // coincident circles
                const double dist = std::sqrt(dist2);
                const double r = delta_ + kEps;  // the radius doors are computed with
                if (dist > 2.0 * r) continue;
                const double along = dist / 2.0;
                const double h = std::sqrt(std::max(0.0, (r - along) * (r + along)));
                const Point mid = c[i] + 0.5 * d;
                const Point perp{-d.y / dist, d.x / dist};
                circle_vertices_.push_back(mid + h * perp);
                vertex_circles_.push_back({circle_vertices_.back(), i, j});
                if (h > 0.0) {
                    circle_vertices_.push_back(mid - h * perp);
                    vertex_circles_.push_back({circle_vertices_.back(), i, j});
                }
            }
        }
        dual_points_ = circle_vertices_;
        for (const Point& p : c) dual_points_.push_back(p);
    }

    void build_slabs() {
        const std::size_t n = dual_points_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Point &p = dual_points_[i], &q = dual_points_[j];
                if (p.x == q.x) continue;  // parallel duals
                slab_bounds_.push_back((p.y - q.y) / (p.x - q.x));
                ++dual_vertex_count_;
            }
        // Slopes at which the crossing order can change without the line passing a point of V':
        // perpendicular to a centre pair (two chord midpoints coincide), and perpendicular to
        // c - v for a vertex v on the circle around c (the tangent point moves across v).
        auto add_perpendicular = [&](Point d) {
            if (d.y != 0.0) slab_bounds_.push_back(-d.x / d.y);
        };
        const auto& c = sub_.vertices();
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) add_perpendicular(c[j] - c[i]);
        for (const auto& [v, i, j] : vertex_circles_) {
            add_perpendicular(v - c[i]);
            add_perpendicular(v - c[j]);
        }
        std::sort(slab_bounds_.begin(), slab_bounds_.end());
        slab_bounds_.erase(std::unique(slab_bounds_.begin(), slab_bounds_.end()), slab_bounds_.end());

        slab_orders_.resize(slab_bounds_.size() + 1);
        for (std::size_t s = 0; s < slab_orders_.size(); ++s) {
            double x;
            if (slab_bounds_.empty()) x = 0.0;
            else if (s == 0) x = slab_bounds_.front() - 1.0;
            else if (s == slab_bounds_.size()) x = slab_bounds_.back() + 1.0;
            else x = 0.5 * (slab_bounds_[s - 1] + slab_bounds_[s]);
            auto& order = slab_orders_[s];
            order.resize(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = std::uint16_t(i);
            std::sort(order.begin(), order.end(), [&](std::uint16_t a, std::uint16_t b) {
                return dual_value(a, x) < dual_value(b, x);
            });
        }
    }

    CrossingList build_list(const Segment& seg) const {
        struct Ev {
            double t;
            Crossing c;
        };
        std::vector<Ev> evs;
        for (std::size_t k = 0; k < sub_.vertex_count(); ++k) {
            auto r = circle_line_params(sub_.vertex(k), seg, delta_);
            if (!r) continue;
            evs.push_back({r->first, {std::uint8_t(k), false}});
            evs.push_back({r->second, {std::uint8_t(k), true}});
        }
        std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) {
            return std::tuple(a.t, a.c.exit, a.c.circle) < std::tuple(b.t, b.c.exit, b.c.circle);
        });
        CrossingList list;
        list.enter_pos.assign(sub_.vertex_count(), -1);
        list.exit_pos.assign(sub_.vertex_count(), -1);
        for (std::size_t p = 0; p < evs.size(); ++p) {
            list.events.push_back(evs[p].c);
            (evs[p].c.exit ? list.exit_pos : list.enter_pos)[evs[p].c.circle] = int(p);
        }
        return list;
    }

    DoorOrder fallback(const Segment& seg) const {
        ++fallbacks_;
        return row_door_order_direct(sub_, seg, delta_);
    }

    DoorOrder locate(CrossingList& list, const Segment& seg) const {
        // Parameter of each crossing for this particular edge, computed on demand.
        std::vector<std::optional<std::pair<double, double>>> roots(sub_.vertex_count());
        std::vector<char> have(sub_.vertex_count(), 0);
        bool missing = false;
        auto param = [&](const Crossing& e) {
            if (!have[e.circle]) {
                roots[e.circle] = circle_line_params(sub_.vertex(e.circle), seg, delta_);
                have[e.circle] = 1;
            }
            if (!roots[e.circle]) {
                missing = true;
                return 0.0;
            }
            return e.exit ? roots[e.circle]->second : roots[e.circle]->first;
        };
        auto count = [&](auto pred) {
            return int(std::partition_point(list.events.begin(), list.events.end(),
                                            [&](const Crossing& e) { return pred(param(e)); }) -
                       list.events.begin());
        };
        const std::array<int, 4> cuts{
            count([](double t) { return t < -kEps; }),       // crossings that end the door early
            count([](double t) { return t <= kEps; }),       // snapped to 0
            count([](double t) { return t < 1.0 - kEps; }),  // below the snap to 1
            count([](double t) { return t <= 1.0 + kEps; }),
        };
        if (missing) return fallback(seg);

        std::lock_guard lock(mutex_);
        auto it = list.orders.find(cuts);
        if (it != list.orders.end()) return it->second;
        return list.orders.emplace(cuts, order_for(list, cuts)).first->second;
    }

    /// Partial door-order given where the edge's endpoints fall in the crossing list.
    DoorOrder order_for(const CrossingList& list, const std::array<int, 4>& cuts) const {
        // (class, rank): class 0 = value 0, 1 = interior at crossing `rank`, 2 = value 1.
        struct Key {
            int cls, rank;
            DoorSymbol sym;
            bool operator<(const Key& o) const {
                if (cls != o.cls) return cls < o.cls;
                if (rank != o.rank) return rank < o.rank;
                if (sym.kind() != o.sym.kind()) return sym.is_s();
                return sym.index() < o.sym.index();
            }
        };
        auto classify = [&](int pos) -> std::pair<int, int> {
            if (pos < cuts[1]) return {0, 0};
            if (pos >= cuts[2]) return {2, 0};
            return {1, pos};
        };
        std::vector<Key> keys;
        for (std::size_t k = 1; k < sub_.vertex_count(); ++k) {
            const int e = list.enter_pos[k], x = list.exit_pos[k];
            const bool closed = e < 0 || x < cuts[0] || e >= cuts[3];
            const auto s = closed ? std::pair{2, 0} : classify(e);
            const auto t = closed ? std::pair{0, 0} : classify(x);
            keys.push_back({s.first, s.second, DoorSymbol::s(int(k))});
            keys.push_back({t.first, t.second, DoorSymbol::t(int(k))});
        }
        std::sort(keys.begin(), keys.end());
        DoorOrder o;
        for (const auto& k : keys) o.order.push_back(k.sym);
        return o;
    }

    Curve sub_;
    double delta_;
    std::vector<Point> circle_vertices_;
    std::vector<std::tuple<Point, std::size_t, std::size_t>> vertex_circles_;
    std::vector<Point> dual_points_;
    std::size_t dual_vertex_count_ = 0;
    std::vector<double> slab_bounds_;
    std::vector<std::vector<std::uint16_t>> slab_orders_;
    mutable std::mutex mutex_;
    mutable std::map<TripleKey, CrossingList> lists_;
    mutable std::atomic<std::size_t> fallbacks_{0};
};

inline StripStructure strip_build(const Curve& sub, double delta) { return StripStructure(sub, delta); }

inline DoorOrder strip_query(const StripStructure& s, const Segment& seg) { return s.query(seg); }

}  // namespace frechet
