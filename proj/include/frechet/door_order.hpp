#pragma once

// Door-orders, signatures and the combinatorial reachability structure of an elementary box.
//
// A box has w columns and h rows of cells (w = h = tau except at the far ends of the diagram). In
// row j the symbols s_k / t_k (k = 1..w) are the lower / upper endpoints of the door on the k-th
// vertical boundary of that row, counted from the box's left side; s_0 / t_0 bound the reach-door
// on the left side itself. Columns are analogous with horizontal boundaries counted from the bottom.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

inline constexpr int kMaxTau = 8;

struct BoxParams {
    int tau = 3;

    explicit BoxParams(int t = 3) : tau(t) {
        if (t < 1 || t > kMaxTau) throw std::invalid_argument("tau must lie in [1, 8]");
    }
};

enum class SymbolKind : std::uint8_t { S = 0, T = 1 };

/// s_index or t_index, packed as 2 * index + kind.
struct DoorSymbol {
    std::uint8_t code = 0;

    constexpr DoorSymbol() = default;
    constexpr DoorSymbol(SymbolKind kind, int index)
        : code(static_cast<std::uint8_t>(2 * index + static_cast<int>(kind))) {}
    static constexpr DoorSymbol s(int i) { return {SymbolKind::S, i}; }
    static constexpr DoorSymbol t(int i) { return {SymbolKind::T, i}; }

    constexpr SymbolKind kind() const { return static_cast<SymbolKind>(code & 1); }
    constexpr int index() const { return code >> 1; }
    constexpr bool is_s() const { return kind() == SymbolKind::S; }

    friend constexpr bool operator==(DoorSymbol, DoorSymbol) = default;
};

inline std::string to_string(DoorSymbol s) {
    return std::string(s.is_s() ? "s" : "t") + std::to_string(s.index());
}

/// Endpoint values of one door in the row's local parameter. For a closed door k > 0 the
/// values are ignored. For the reach-door a closed state must carry hi < lo.
struct DoorValues {
    double lo = 1.0;
    double hi = 0.0;
    bool open = false;

    static DoorValues from(const Interval& iv) {
        return iv.is_empty() ? DoorValues{1.0, 0.0, false} : DoorValues{iv.lo(), iv.hi(), true};
    }
};

/// A permutation of door symbols in ascending order along the row or column.
/// Full orders hold 2 tau + 2 symbols; partial ones omit s_0, t_0.
struct DoorOrder {
    std::vector<DoorSymbol> order;

    std::size_t size() const { return order.size(); }
    bool partial() const { return !contains(DoorSymbol::s(0)); }
    bool contains(DoorSymbol x) const {
        for (auto s : order)
            if (s == x) return true;
        return false;
    }
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i) out += ' ';
            out += to_string(order[i]);
        }
        return out;
    }
    friend bool operator==(const DoorOrder&, const DoorOrder&) = default;
};

namespace detail {

/// Sort key realising the tie rules: by value, then s before t, then by index.
struct SymbolKey {
    double value;
    DoorSymbol sym;

    friend bool operator<(const SymbolKey& a, const SymbolKey& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.sym.kind() != b.sym.kind()) return a.sym.is_s();
        return a.sym.index() < b.sym.index();
    }
};

/// Values of s_k and t_k under the closed-door convention (s at the top, t at the bottom).
inline std::pair<double, double> symbol_values(const DoorValues& d, bool reach) {
    if (!std::isfinite(d.lo) || !std::isfinite(d.hi))
        throw std::invalid_argument("door endpoint values must be finite");
    if (reach) {
        if (d.open ? d.lo > d.hi : d.hi >= d.lo)
            throw std::invalid_argument("reach-door values inconsistent with its open flag");
        return {d.lo, d.hi};
    }
    if (!d.open) return {1.0, 0.0};
    if (d.lo > d.hi) throw std::invalid_argument("open door with lo > hi");
    return {d.lo, d.hi};
}

inline void push_keys(std::vector<SymbolKey>& keys, const DoorValues& d, int index) {
    const auto [sv, tv] = symbol_values(d, index == 0);
    keys.push_back({sv, DoorSymbol::s(index)});
    keys.push_back({tv, DoorSymbol::t(index)});
}

inline DoorOrder order_from_keys(std::vector<SymbolKey>& keys) {
    std::sort(keys.begin(), keys.end());
    DoorOrder o;
    o.order.reserve(keys.size());
    for (const auto& k : keys) o.order.push_back(k.sym);
    return o;
}

}  // namespace detail

/// Full door-order: doors[0] is the reach-door, doors[1..tau] the boundary doors.
inline DoorOrder canonical_door_order(std::span<const DoorValues> doors) {
    std::vector<detail::SymbolKey> keys;
    keys.reserve(2 * doors.size());
    for (std::size_t k = 0; k < doors.size(); ++k) detail::push_keys(keys, doors[k], int(k));
    return detail::order_from_keys(keys);
}

/// Partial door-order: doors[k - 1] is the door with symbols s_k, t_k.
inline DoorOrder canonical_partial_order(std::span<const DoorValues> doors) {
    std::vector<detail::SymbolKey> keys;
    keys.reserve(2 * doors.size());
    for (std::size_t k = 0; k < doors.size(); ++k) detail::push_keys(keys, doors[k], int(k + 1));
    return detail::order_from_keys(keys);
}

/// Insert s_0, t_0 for `reach` into a partial order whose symbol values are `doors`
/// (doors[k - 1] for s_k, t_k), by binary search on the tie-broken keys.
inline DoorOrder insert_reach(const DoorOrder& partial, std::span<const DoorValues> doors,
                              const DoorValues& reach) {
    auto key_of = [&](DoorSymbol s) {
        const auto [sv, tv] = detail::symbol_values(doors[std::size_t(s.index() - 1)], false);
        return detail::SymbolKey{s.is_s() ? sv : tv, s};
    };
    const auto [rs, rt] = detail::symbol_values(reach, true);
    DoorOrder full = partial;
    for (const detail::SymbolKey k : {detail::SymbolKey{rs, DoorSymbol::s(0)},
                                      detail::SymbolKey{rt, DoorSymbol::t(0)}}) {
        std::size_t lo = 0, hi = full.order.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            const DoorSymbol m = full.order[mid];
            const detail::SymbolKey mk =
                m.index() == 0 ? detail::SymbolKey{m.is_s() ? rs : rt, m} : key_of(m);
            if (mk < k) lo = mid + 1;
            else hi = mid;
        }
        full.order.insert(full.order.begin() + std::ptrdiff_t(lo), k.sym);
    }
    return full;
}

/// Door-orders of the columns and rows of a box.
struct Signature {
    std::vector<DoorOrder> columns;
    std::vector<DoorOrder> rows;

    int width() const { return int(columns.size()); }
    int height() const { return int(rows.size()); }

    /// Injective byte encoding, used as the memo key.
    std::string encode() const {
        std::string key;
        key.reserve(2 + 2 * (rows.size() + 1) * (columns.size() + rows.size() + 2));
        key.push_back(char(columns.size()));
        key.push_back(char(rows.size()));
        for (const auto* side : {&columns, &rows})
            for (const auto& o : *side) {
                key.push_back(char(o.size()));
                for (auto s : o.order) key.push_back(char(s.code));
            }
        return key;
    }
    friend bool operator==(const Signature&, const Signature&) = default;
};

using PartialSignature = Signature;

/// Symbols (s_u, t_v) bounding a reach-door; closed when t_v precedes s_u in its order.
struct ReachPair {
    DoorSymbol lower;
    DoorSymbol upper;
    friend bool operator==(const ReachPair&, const ReachPair&) = default;
};

struct ReachabilityStructure {
    std::vector<ReachPair> right_exits;  // per row, on the box's right side
    std::vector<ReachPair> top_exits;    // per column, on the box's top side
    friend bool operator==(const ReachabilityStructure&, const ReachabilityStructure&) = default;
};

namespace detail {

/// Position of every symbol in one order, indexed by symbol code.
struct RankTable {
    std::array<std::int8_t, 2 * kMaxTau + 2> rank{};

    RankTable(const DoorOrder& o, int doors) {
        const int n = 2 * doors + 2;
        rank.fill(-1);
        if (int(o.size()) != n) throw std::invalid_argument("signature: door-order has wrong length");
        for (int p = 0; p < n; ++p) {
            const DoorSymbol s = o.order[std::size_t(p)];
            if (s.index() > doors || rank[s.code] != -1)
                throw std::invalid_argument("signature: door-order is not a permutation");
            rank[s.code] = std::int8_t(p);
        }
    }
    bool before(DoorSymbol a, DoorSymbol b) const { return rank[a.code] < rank[b.code]; }
    bool open(const ReachPair& p) const { return before(p.lower, p.upper); }
    DoorSymbol max(DoorSymbol a, DoorSymbol b) const { return before(a, b) ? b : a; }
};

/// One cell of the symbolic sweep; mirrors the numeric propagate().
inline ReachPair step(const RankTable& along_order, const ReachPair& along, bool across_open, int exit) {
    const DoorSymbol s = DoorSymbol::s(exit), t = DoorSymbol::t(exit);
    if (across_open) return {s, t};
    if (!along_order.open(along)) return along;
    return {along_order.max(along.lower, s), t};
}

}  // namespace detail

/// Combinatorial reachability of a full signature, O(w h), using only symbol comparisons.
inline ReachabilityStructure reachability_structure(const Signature& sig) {
    const int w = sig.width(), h = sig.height();
    if (w < 1 || w > kMaxTau || h < 1 || h > kMaxTau)
        throw std::invalid_argument("signature: box must have 1..8 rows and columns");
    std::vector<detail::RankTable> rows, cols;
    for (const auto& o : sig.rows) rows.emplace_back(o, w);
    for (const auto& o : sig.columns) cols.emplace_back(o, h);

    const ReachPair reach0{DoorSymbol::s(0), DoorSymbol::t(0)};
    std::vector<ReachPair> left(std::size_t(h), reach0);
    ReachabilityStructure out;
    out.top_exits.resize(std::size_t(w));
    for (int i = 0; i < w; ++i) {
        ReachPair bottom = reach0;
        for (int j = 0; j < h; ++j) {
            const auto& row = rows[std::size_t(j)];
            const auto& col = cols[std::size_t(i)];
            const ReachPair l = left[std::size_t(j)];
            left[std::size_t(j)] = detail::step(row, l, col.open(bottom), i + 1);
            bottom = detail::step(col, bottom, row.open(l), j + 1);
        }
        out.top_exits[std::size_t(i)] = bottom;
    }
    out.right_exits = std::move(left);
    return out;
}

/// Lazily memoized signature -> reachability structure dictionary.
/// Concurrent readers share a lock; a miss computes outside the lock and inserts.
class SignatureCache {
public:
    ReachabilityStructure get(const Signature& sig) {
        std::string key = sig.encode();
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) {
                ++hits_;
                return it->second;
            }
        }
        ReachabilityStructure rs = reachability_structure(sig);
        ++misses_;
        std::unique_lock lock(mutex_);
        return table_.try_emplace(std::move(key), std::move(rs)).first->second;
    }

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, ReachabilityStructure> table_;
    std::atomic<std::size_t> hits_{0};
    std::atomic<std::size_t> misses_{0};
};

}  // namespace frechet
