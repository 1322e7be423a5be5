#pragma once

// Decision by elementary boxes: partial signatures from strip queries, completion with the
// incoming reach-doors, memoized combinatorial reachability, and mapping back to numbers.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "frechet/door_order.hpp"
#include "frechet/freespace.hpp"
#include "frechet/strip.hpp"

namespace frechet {

struct FastOptions {
    BoxParams params{3};
    StripStrategy strategy = StripStrategy::Direct;
    /// Shared memo; a private one is used when null.
    SignatureCache* cache = nullptr;
};

struct FastStats {
    std::size_t boxes = 0;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;
};

/// Partial signatures of all boxes, box (bx, by) at index bx * boxes_y + by.
struct PartialSignatureGrid {
    std::size_t boxes_x = 0;
    std::size_t boxes_y = 0;
    std::vector<PartialSignature> boxes;

    const PartialSignature& at(std::size_t bx, std::size_t by) const { return boxes[bx * boxes_y + by]; }
};

namespace detail {

inline std::size_t box_count(std::size_t edges, std::size_t tau) { return (edges + tau - 1) / tau; }
inline std::size_t box_extent(std::size_t edges, std::size_t tau, std::size_t b) {
    return std::min(tau, edges - b * tau);
}

/// Partial orders of every edge of `query` against each strip of `base` (tau edges, fewer in the
/// last strip). Result index: strip * query.edge_count() + edge.
inline std::vector<DoorOrder> strip_orders(const Curve& base, const Curve& query, double delta, std::size_t tau,
                                           StripStrategy strategy) {
    const std::size_t strips = box_count(base.edge_count(), tau);
    std::vector<DoorOrder> out;
    out.reserve(strips * query.edge_count());
    for (std::size_t s = 0; s < strips; ++s) {
        const Curve sub = base.sub_curve(s * tau, box_extent(base.edge_count(), tau, s));
        if (strategy == StripStrategy::Arrangement) {
            const StripStructure strip(sub, delta);
            for (std::size_t e = 0; e < query.edge_count(); ++e) out.push_back(strip.query(query.edge(e)));
        } else {
            for (std::size_t e = 0; e < query.edge_count(); ++e)
                out.push_back(row_door_order_direct(sub, query.edge(e), delta));
        }
    }
    return out;
}

}  // namespace detail

/// Partial signatures of all boxes; boxes on the far right / top may be narrower.
inline PartialSignatureGrid partial_signatures(const Curve& P, const Curve& Q, double delta, BoxParams params,
                                               StripStrategy strategy = StripStrategy::Direct) {
    const std::size_t t = std::size_t(params.tau);
    const std::size_t np = P.edge_count(), nq = Q.edge_count();
    const auto rows = detail::strip_orders(P, Q, delta, t, strategy);  // vertical strips x edges of Q
    const auto cols = detail::strip_orders(Q, P, delta, t, strategy);  // horizontal strips x edges of P
    PartialSignatureGrid grid;
    grid.boxes_x = detail::box_count(np, t);
    grid.boxes_y = detail::box_count(nq, t);
    grid.boxes.resize(grid.boxes_x * grid.boxes_y);
    for (std::size_t bx = 0; bx < grid.boxes_x; ++bx)
        for (std::size_t by = 0; by < grid.boxes_y; ++by) {
            auto& sig = grid.boxes[bx * grid.boxes_y + by];
            for (std::size_t k = 0; k < detail::box_extent(nq, t, by); ++k)
                sig.rows.push_back(rows[bx * nq + by * t + k]);
            for (std::size_t k = 0; k < detail::box_extent(np, t, bx); ++k)
                sig.columns.push_back(cols[by * np + bx * t + k]);
        }
    return grid;
}

namespace detail {

/// Numeric value behind an exit symbol of one row or column.
inline double symbol_value(DoorSymbol s, const DoorValues& reach, std::span<const DoorValues> doors) {
    const DoorValues& d = s.index() == 0 ? reach : doors[std::size_t(s.index() - 1)];
    return s.is_s() ? d.lo : d.hi;
}

inline Interval resolve_exit(const ReachPair& p, const DoorOrder& order, const DoorValues& reach,
                             std::span<const DoorValues> doors) {
    std::size_t ls = 0, us = 0;
    for (std::size_t k = 0; k < order.order.size(); ++k) {
        if (order.order[k] == p.lower) ls = k;
        if (order.order[k] == p.upper) us = k;
    }
    if (us < ls) return Interval::empty();
    // Open exits only ever reference open doors of the same row or the incoming reach-door.
    assert(p.lower.index() == 0 ? reach.open : doors[std::size_t(p.lower.index() - 1)].open);
    return {symbol_value(p.lower, reach, doors), symbol_value(p.upper, reach, doors)};
}

}  // namespace detail

/// Full signature from a partial one plus the incoming reach-doors.
/// row_doors[j][k - 1] / col_doors[i][k - 1] are the door values behind s_k, t_k; left_doors and
/// bottom_doors, when given, are the doors on the box's left and bottom sides.
inline Signature complete_signature(const PartialSignature& psig, std::span<const Interval> left_reach,
                                    std::span<const Interval> bottom_reach,
                                    const std::vector<std::vector<DoorValues>>& row_doors,
                                    const std::vector<std::vector<DoorValues>>& col_doors,
                                    std::span<const Interval> left_doors = {},
                                    std::span<const Interval> bottom_doors = {}) {
    const std::size_t h = psig.rows.size(), w = psig.columns.size();
    if (left_reach.size() != h || bottom_reach.size() != w)
        throw std::invalid_argument("complete_signature: need one reach-door per row and column");
    auto check = [](std::span<const Interval> reach, std::span<const Interval> doors) {
        for (std::size_t k = 0; k < doors.size(); ++k)
            if (!reach[k].subset_of(doors[k]))
                throw std::invalid_argument("complete_signature: reach-door outside its door");
    };
    check(left_reach, left_doors);
    check(bottom_reach, bottom_doors);
    Signature full;
    for (std::size_t j = 0; j < h; ++j)
        full.rows.push_back(insert_reach(psig.rows[j], row_doors[j], DoorValues::from(left_reach[j])));
    for (std::size_t i = 0; i < w; ++i)
        full.columns.push_back(insert_reach(psig.columns[i], col_doors[i], DoorValues::from(bottom_reach[i])));
    return full;
}

inline bool decide_fast(const Curve& P, const Curve& Q, double delta, const FastOptions& opt = {},
                        FastStats* stats = nullptr) {
    bool degenerate = false;
    if (detail::degenerate_decision(P, Q, delta, degenerate)) return degenerate;

    const std::size_t tau = std::size_t(opt.params.tau);
    const DoorGrid g = build_door_grid(P, Q, delta);
    const PartialSignatureGrid grid = partial_signatures(P, Q, delta, opt.params, opt.strategy);

    std::unique_ptr<SignatureCache> own;
    SignatureCache* cache = opt.cache;
    if (!cache) {
        own = std::make_unique<SignatureCache>();
        cache = own.get();
    }
    const std::size_t hits0 = cache->hits(), misses0 = cache->misses();

    ReachFront f = initial_front(g);
    std::vector<std::vector<DoorValues>> row_vals, col_vals;
    std::vector<Interval> left, bottom;
    for (std::size_t bx = 0; bx < grid.boxes_x; ++bx) {
        const std::size_t x0 = bx * tau, w = detail::box_extent(g.n_p, tau, bx);
        for (std::size_t by = 0; by < grid.boxes_y; ++by) {
            const std::size_t y0 = by * tau, h = detail::box_extent(g.n_q, tau, by);
            row_vals.assign(h, {});
            col_vals.assign(w, {});
            left.resize(h);
            bottom.resize(w);
            for (std::size_t k = 0; k < h; ++k) {
                for (std::size_t m = 1; m <= w; ++m) row_vals[k].push_back(DoorValues::from(g.vertical(x0 + m, y0 + k)));
                left[k] = f.vertical_reach(x0, y0 + k);
            }
            for (std::size_t k = 0; k < w; ++k) {
                for (std::size_t m = 1; m <= h; ++m) col_vals[k].push_back(DoorValues::from(g.horizontal(x0 + k, y0 + m)));
                bottom[k] = f.horizontal_reach(x0 + k, y0);
            }
            const Signature sig = complete_signature(grid.at(bx, by), left, bottom, row_vals, col_vals);
            const ReachabilityStructure rs = cache->get(sig);
            for (std::size_t k = 0; k < h; ++k)
                f.vertical_reach(x0 + w, y0 + k) = detail::resolve_exit(
                    rs.right_exits[k], sig.rows[k], DoorValues::from(left[k]), row_vals[k]);
            for (std::size_t k = 0; k < w; ++k)
                f.horizontal_reach(x0 + k, y0 + h) = detail::resolve_exit(
                    rs.top_exits[k], sig.columns[k], DoorValues::from(bottom[k]), col_vals[k]);
        }
    }
    if (stats) {
        stats->boxes += grid.boxes_x * grid.boxes_y;
        stats->cache_hits += cache->hits() - hits0;
        stats->cache_misses += cache->misses() - misses0;
    }
    return front_accepts(g, f);
}

inline bool decide_fast(const Curve& P, const Curve& Q, double delta, BoxParams params,
                        StripStrategy strategy = StripStrategy::Direct) {
    FastOptions opt;
    opt.params = params;
    opt.strategy = strategy;
    return decide_fast(P, Q, delta, opt);
}

}  // namespace frechet
