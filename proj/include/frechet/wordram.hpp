#pragma once

// Word-RAM decider: clusters of tau x tau boxes, Z-sets per cluster row, door-indices packed into
// 64-bit words, transposition to regroup them per box, and memoized lookup of outgoing reach-doors.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iostream>
#include <map>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frechet/door_order.hpp"
#include "frechet/fast_decider.hpp"
#include "frechet/freespace.hpp"
#include "frechet/packed.hpp"

namespace frechet {

inline constexpr int kMaxPackedTau = 3;

/// Bits per Z position: positions run 0 .. 2k + 2 with k <= 2 tau^2.
inline int zrow_field_width(int tau) { return int(std::bit_width(unsigned(4 * tau * tau + 2))); }

/// Z = <e_0, z'_0, z_1, z'_1, ..., z_k, z'_k, e_1> for one edge against a cluster subcurve.
/// Position of e_0 is 0, z_i is 2i, z'_i is 2i + 1, e_1 is 2k + 2.
struct ZRow {
    std::vector<double> z;  // z_1..z_k, strictly increasing, inside (0, 1)

    int k() const { return int(z.size()); }
    int size() const { return 2 * k() + 3; }
    int e0() const { return 0; }
    int e1() const { return 2 * k() + 2; }

    /// Position of a door endpoint, which is always 0, 1 or one of the z values.
    int door_pos(double v) const {
        if (v == 0.0) return e0();
        if (v == 1.0) return e1();
        const auto it = std::lower_bound(z.begin(), z.end(), v);
        if (it == z.end() || *it != v) throw std::invalid_argument("ZRow: value is not a door endpoint");
        return 2 * int(it - z.begin() + 1);
    }
    /// Position of a reach-door endpoint: the matching element if the value occurs in Z,
    /// otherwise the placeholder of its gap.
    int reach_pos(double v) const {
        if (v == 0.0) return e0();
        if (v == 1.0) return e1();
        const auto it = std::lower_bound(z.begin(), z.end(), v);
        const int q = int(it - z.begin());
        if (it != z.end() && *it == v) return 2 * (q + 1);
        return 2 * q + 1;
    }
    /// Value at an element position (placeholders have none).
    double value(int pos) const {
        if (pos == e0()) return 0.0;
        if (pos == e1()) return 1.0;
        if (pos < 0 || pos > e1() || pos % 2 != 0) throw std::invalid_argument("ZRow: not an element position");
        return z[std::size_t(pos / 2 - 1)];
    }
};

/// Z-set of `edge` against the circles around all vertices of `sub` but the first.
inline ZRow build_z_row(const Segment& edge, const Curve& sub, double delta) {
    ZRow r;
    for (std::size_t v = 1; v < sub.vertex_count(); ++v) {
        const Interval d = free_interval(sub.vertex(v), edge, delta);
        if (d.is_empty()) continue;
        for (double x : {d.lo(), d.hi()})
            if (x > 0.0 && x < 1.0) r.z.push_back(x);
    }
    std::sort(r.z.begin(), r.z.end());
    r.z.erase(std::unique(r.z.begin(), r.z.end()), r.z.end());
    return r;
}

/// Partial door-index: fields s_1, t_1, ..., s_w, t_w as Z positions.
inline PackedWord door_index_word(const ZRow& zr, std::span<const Interval> doors, int width) {
    PackedWord w{0, width, int(2 * doors.size())};
    for (std::size_t m = 0; m < doors.size(); ++m) {
        const Interval& d = doors[m];
        w.set(int(2 * m), std::uint64_t(d.is_empty() ? zr.e1() : zr.door_pos(d.lo())));
        w.set(int(2 * m + 1), std::uint64_t(d.is_empty() ? zr.e0() : zr.door_pos(d.hi())));
    }
    return w;
}

/// Inverse of door_index_word for one door.
inline Interval decode_door(const ZRow& zr, const PackedWord& w, int m) {
    const int s = int(w.field(2 * m)), t = int(w.field(2 * m + 1));
    if (t < s) return Interval::empty();
    return {zr.value(s), zr.value(t)};
}

/// Partial door-indices of the rows and columns of one box.
struct IndexedSignature {
    std::vector<PackedWord> rows;     // h words of 2w fields
    std::vector<PackedWord> columns;  // w words of 2h fields

    int width() const { return int(columns.size()); }
    int height() const { return int(rows.size()); }
};

/// Reach-door positions: field 2k / 2k+1 hold the lower / upper end for row or column k.
/// A closed reach-door is any pair with upper < lower; it is emitted as (z'_0, e_0) = (1, 0).
struct ReachWords {
    PackedWord right;
    PackedWord top;
    friend bool operator==(const ReachWords&, const ReachWords&) = default;
};

namespace detail {

inline DoorOrder index_order(const PackedWord& doors, std::uint64_t s0, std::uint64_t t0) {
    struct Key {
        std::uint64_t pos;
        DoorSymbol sym;
    };
    std::vector<Key> keys{{s0, DoorSymbol::s(0)}, {t0, DoorSymbol::t(0)}};
    for (int m = 0; m < doors.field_count / 2; ++m) {
        keys.push_back({doors.field(2 * m), DoorSymbol::s(m + 1)});
        keys.push_back({doors.field(2 * m + 1), DoorSymbol::t(m + 1)});
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.sym.kind() != b.sym.kind()) return a.sym.is_s();
        return a.sym.index() < b.sym.index();
    });
    DoorOrder o;
    for (const auto& k : keys) o.order.push_back(k.sym);
    return o;
}

inline std::uint64_t symbol_pos(DoorSymbol s, const PackedWord& doors, std::uint64_t s0, std::uint64_t t0) {
    if (s.index() == 0) return s.is_s() ? s0 : t0;
    return doors.field(2 * (s.index() - 1) + (s.is_s() ? 0 : 1));
}

inline void emit(PackedWord& out, int k, const ReachPair& p, const DoorOrder& order, const PackedWord& doors,
                 std::uint64_t s0, std::uint64_t t0) {
    std::size_t ls = 0, us = 0;
    for (std::size_t q = 0; q < order.order.size(); ++q) {
        if (order.order[q] == p.lower) ls = q;
        if (order.order[q] == p.upper) us = q;
    }
    if (us < ls) {
        out.set(2 * k, 1);
        out.set(2 * k + 1, 0);
    } else {
        out.set(2 * k, symbol_pos(p.lower, doors, s0, t0));
        out.set(2 * k + 1, symbol_pos(p.upper, doors, s0, t0));
    }
}

}  // namespace detail

/// Outgoing reach-door positions of a box, by the Lemma 1 DP in index space.
inline ReachWords lookup_reach(const IndexedSignature& sig, const PackedWord& left, const PackedWord& bottom) {
    const int w = sig.width(), h = sig.height();
    if (w < 1 || h < 1) throw std::invalid_argument("lookup_reach: empty box");
    if (left.field_count != 2 * h || bottom.field_count != 2 * w)
        throw std::invalid_argument("lookup_reach: incoming words need two fields per row / column");
    const int width = left.field_width;
    for (int k = 0; k < left.field_count; ++k)
        if (left.field(k) == PackedWord::mask(width)) throw std::invalid_argument("lookup_reach: invalid index field");
    Signature full;
    for (int j = 0; j < h; ++j)
        full.rows.push_back(detail::index_order(sig.rows[std::size_t(j)], left.field(2 * j), left.field(2 * j + 1)));
    for (int i = 0; i < w; ++i)
        full.columns.push_back(
            detail::index_order(sig.columns[std::size_t(i)], bottom.field(2 * i), bottom.field(2 * i + 1)));
    const ReachabilityStructure rs = reachability_structure(full);
    ReachWords out{PackedWord{0, width, 2 * h}, PackedWord{0, width, 2 * w}};
    for (int j = 0; j < h; ++j)
        detail::emit(out.right, j, rs.right_exits[std::size_t(j)], full.rows[std::size_t(j)],
                     sig.rows[std::size_t(j)], left.field(2 * j), left.field(2 * j + 1));
    for (int i = 0; i < w; ++i)
        detail::emit(out.top, i, rs.top_exits[std::size_t(i)], full.columns[std::size_t(i)],
                     sig.columns[std::size_t(i)], bottom.field(2 * i), bottom.field(2 * i + 1));
    return out;
}

/// Interned partial door-indices and indexed signatures plus the memoized lookup tables.
class WordRamTables {
public:
    explicit WordRamTables(int tau) : tau_(tau), fields_(int(std::bit_ceil(unsigned(tau)))) {}

    int tau() const { return tau_; }
    /// Fields per superstrip / transposed word (tau rounded up to a power of two).
    int fields() const { return fields_; }
    int id_width() const { return kWordBits / fields_; }

    /// Small integer standing for a partial door-index word; 0 is reserved for padding.
    std::uint64_t intern_door_index(const PackedWord& w) {
        const auto key = std::pair{w.field_count, w.bits};
        if (auto it = door_ids_.find(key); it != door_ids_.end()) return it->second;
        const std::uint64_t id = door_words_.size() + 1;
        if (id > PackedWord::mask(id_width())) throw std::overflow_error("too many distinct door-indices");
        door_words_.push_back(w);
        door_ids_.emplace(key, id);
        return id;
    }
    const PackedWord& door_index(std::uint64_t id) const { return door_words_.at(std::size_t(id - 1)); }

    /// Signature id of a box from its transposed row / column words.
    std::uint32_t intern_signature(int w, int h, std::uint64_t row_ids, std::uint64_t col_ids) {
        const SigKey key{w, h, row_ids, col_ids};
        if (auto it = sig_ids_.find(key); it != sig_ids_.end()) return it->second;
        IndexedSignature sig;
        const PackedWord rows{row_ids, id_width(), fields_}, cols{col_ids, id_width(), fields_};
        for (int j = 0; j < h; ++j) sig.rows.push_back(door_index(rows.field(j)));
        for (int i = 0; i < w; ++i) sig.columns.push_back(door_index(cols.field(i)));
        const auto id = std::uint32_t(sigs_.size());
        sigs_.push_back(std::move(sig));
        sig_ids_.emplace(key, id);
        return id;
    }
    const IndexedSignature& signature(std::uint32_t id) const { return sigs_.at(id); }
    std::size_t signature_count() const { return sigs_.size(); }

    ReachWords lookup(std::uint32_t sig, const PackedWord& left, const PackedWord& bottom) {
        const LookupKey key{sig, left.bits, bottom.bits};
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) {
                ++hits_;
                return it->second;
            }
        }
        ReachWords out = lookup_reach(sigs_.at(sig), left, bottom);
        ++misses_;
        std::unique_lock lock(mutex_);
        return table_.try_emplace(key, out).first->second;
    }
    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }

private:
    struct SigKey {
        int w, h;
        std::uint64_t rows, cols;
        friend auto operator<=>(const SigKey&, const SigKey&) = default;
    };
    struct LookupKey {
        std::uint32_t sig;
        std::uint64_t left, bottom;
        friend bool operator==(const LookupKey&, const LookupKey&) = default;
    };
    struct LookupHash {
        std::size_t operator()(const LookupKey& k) const {
            std::uint64_t h = k.sig * 0x9e3779b97f4a7c15ULL;
            h ^= k.left + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= k.bottom + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return std::size_t(h);
        }
    };

    int tau_;
    int fields_;
    std::map<std::pair<int, std::uint64_t>, std::uint64_t> door_ids_;
    std::vector<PackedWord> door_words_;
    std::map<SigKey, std::uint32_t> sig_ids_;
    std::vector<IndexedSignature> sigs_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<LookupKey, ReachWords, LookupHash> table_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

/// Per edge of the crossing curve: its Z-set and a word with one interned door-index per box.
struct Superstrip {
    std::vector<ZRow> z;
    std::vector<PackedWord> words;
};

namespace detail {

/// Superstrip of `base` edges [first, first + cols) crossed by every edge of `query`.
/// doors(v, e) is the door of base vertex v against query edge e.
template <class DoorAt>
Superstrip build_superstrip(const Curve& base, const Curve& query, std::size_t first, std::size_t cols,
                            double delta, std::size_t tau, WordRamTables& tables, DoorAt doors) {
    Superstrip s;
    const Curve sub = base.sub_curve(first, cols);
    const int width = zrow_field_width(int(tau));
    std::vector<Interval> row;
    for (std::size_t e = 0; e < query.edge_count(); ++e) {
        s.z.push_back(build_z_row(query.edge(e), sub, delta));
        PackedWord word{0, tables.id_width(), tables.fields()};
        for (std::size_t b = 0; b < box_count(cols, tau); ++b) {
            row.clear();
            for (std::size_t m = 1; m <= box_extent(cols, tau, b); ++m) row.push_back(doors(first + b * tau + m, e));
            word.set(int(b), tables.intern_door_index(door_index_word(s.z.back(), row, width)));
        }
        s.words.push_back(word);
    }
    return s;
}

inline std::pair<std::uint64_t, std::uint64_t> encode_reach(const ZRow& zr, const Interval& r) {
    if (r.is_empty()) return {1, 0};
    return {std::uint64_t(zr.reach_pos(r.lo())), std::uint64_t(zr.reach_pos(r.hi()))};
}

/// Numeric reach-door from positions; placeholders stand for the cluster's incoming values.
inline Interval decode_reach(const ZRow& zr, std::uint64_t lo, std::uint64_t hi, const Interval& incoming) {
    if (hi < lo) return Interval::empty();
    auto val = [&](std::uint64_t p, bool upper) {
        if (p % 2 == 1) {
            if (incoming.is_empty()) throw std::logic_error("placeholder without an incoming reach-door");
            return upper ? incoming.hi() : incoming.lo();
        }
        return zr.value(int(p));
    };
    return {val(lo, false), val(hi, true)};
}

}  // namespace detail

struct WordRamStats {
    std::size_t clusters = 0;
    std::size_t boxes = 0;
    std::size_t signatures = 0;
    std::size_t lookup_hits = 0;
    std::size_t lookup_misses = 0;
    bool fell_back = false;
};

inline bool decide_wordram(const Curve& P, const Curve& Q, double delta, BoxParams params = BoxParams{2},
                           WordRamStats* stats = nullptr) {
    bool degenerate = false;
    if (detail::degenerate_decision(P, Q, delta, degenerate)) return degenerate;
    if (params.tau > kMaxPackedTau) {
        std::clog << "warning: tau " << params.tau << " does not fit 64-bit words; using the fast decider\n";
        if (stats) stats->fell_back = true;
        FastOptions opt;
        opt.params = params;
        return decide_fast(P, Q, delta, opt);
    }

    const std::size_t tau = std::size_t(params.tau), C = tau * tau;
    const DoorGrid g = build_door_grid(P, Q, delta);
    WordRamTables tables(params.tau);
    const int a = tables.fields();
    const int width = zrow_field_width(params.tau);

    std::vector<Superstrip> vert, horiz;
    for (std::size_t sx = 0; sx < detail::box_count(g.n_p, C); ++sx)
        vert.push_back(detail::build_superstrip(P, Q, sx * C, detail::box_extent(g.n_p, C, sx), delta, tau, tables,
                                                [&](std::size_t v, std::size_t e) { return g.vertical(v, e); }));
    for (std::size_t sy = 0; sy < detail::box_count(g.n_q, C); ++sy)
        horiz.push_back(detail::build_superstrip(Q, P, sy * C, detail::box_extent(g.n_q, C, sy), delta, tau, tables,
                                                 [&](std::size_t v, std::size_t e) { return g.horizontal(e, v); }));

    ReachFront f = initial_front(g);
    std::vector<std::uint64_t> row_pos, col_pos;
    std::vector<PackedWord> X(static_cast<std::size_t>(a));
    std::vector<std::vector<PackedWord>> row_ids, col_ids;  // [box row][box col], transposed words
    WordRamStats local;
    for (std::size_t cx = 0; cx < vert.size(); ++cx) {
        const std::size_t X0 = cx * C, Wc = detail::box_extent(g.n_p, C, cx);
        const std::size_t bxs = detail::box_count(Wc, tau);
        for (std::size_t cy = 0; cy < horiz.size(); ++cy) {
            const std::size_t Y0 = cy * C, Hc = detail::box_extent(g.n_q, C, cy);
            const std::size_t bys = detail::box_count(Hc, tau);
            ++local.clusters;

            // Incoming reach-doors as Z positions, by binary search in each row's / column's Z.
            row_pos.assign(2 * Hc, 0);
            col_pos.assign(2 * Wc, 0);
            for (std::size_t r = 0; r < Hc; ++r)
                std::tie(row_pos[2 * r], row_pos[2 * r + 1]) =
                    detail::encode_reach(vert[cx].z[Y0 + r], f.vertical_reach(X0, Y0 + r));
            for (std::size_t c = 0; c < Wc; ++c)
                std::tie(col_pos[2 * c], col_pos[2 * c + 1]) =
                    detail::encode_reach(horiz[cy].z[X0 + c], f.horizontal_reach(X0 + c, Y0));

            // Regroup superstrip words so one word holds the door-indices of one box's rows.
            row_ids.assign(bys, {});
            for (std::size_t by = 0; by < bys; ++by) {
                for (std::size_t r = 0; r < std::size_t(a); ++r)
                    X[r] = r < detail::box_extent(Hc, tau, by) ? vert[cx].words[Y0 + by * tau + r]
                                                               : PackedWord{0, tables.id_width(), a};
                row_ids[by] = transpose_packed(X);
            }
            col_ids.assign(bxs, {});
            for (std::size_t bx = 0; bx < bxs; ++bx) {
                for (std::size_t r = 0; r < std::size_t(a); ++r)
                    X[r] = r < detail::box_extent(Wc, tau, bx) ? horiz[cy].words[X0 + bx * tau + r]
                                                               : PackedWord{0, tables.id_width(), a};
                col_ids[bx] = transpose_packed(X);
            }

            for (std::size_t bx = 0; bx < bxs; ++bx) {
                const std::size_t w = detail::box_extent(Wc, tau, bx);
                for (std::size_t by = 0; by < bys; ++by) {
                    const std::size_t h = detail::box_extent(Hc, tau, by);
                    const std::uint32_t sig =
                        tables.intern_signature(int(w), int(h), row_ids[by][bx].bits, col_ids[bx][by].bits);
                    PackedWord left{0, width, int(2 * h)}, bottom{0, width, int(2 * w)};
                    for (std::size_t k = 0; k < 2 * h; ++k) left.set(int(k), row_pos[2 * by * tau + k]);
                    for (std::size_t k = 0; k < 2 * w; ++k) bottom.set(int(k), col_pos[2 * bx * tau + k]);
                    const ReachWords out = tables.lookup(sig, left, bottom);
                    for (std::size_t k = 0; k < 2 * h; ++k) row_pos[2 * by * tau + k] = out.right.field(int(k));
                    for (std::size_t k = 0; k < 2 * w; ++k) col_pos[2 * bx * tau + k] = out.top.field(int(k));
                    ++local.boxes;
                }
            }

            for (std::size_t r = 0; r < Hc; ++r)
                f.vertical_reach(X0 + Wc, Y0 + r) = detail::decode_reach(
                    vert[cx].z[Y0 + r], row_pos[2 * r], row_pos[2 * r + 1], f.vertical_reach(X0, Y0 + r));
            for (std::size_t c = 0; c < Wc; ++c)
                f.horizontal_reach(X0 + c, Y0 + Hc) = detail::decode_reach(
                    horiz[cy].z[X0 + c], col_pos[2 * c], col_pos[2 * c + 1], f.horizontal_reach(X0 + c, Y0));
        }
    }
    if (stats) {
        local.signatures = tables.signature_count();
        local.lookup_hits = tables.hits();
        local.lookup_misses = tables.misses();
        *stats = local;
    }
    return front_accepts(g, f);
}

}  // namespace frechet
