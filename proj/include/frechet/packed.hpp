#pragma once

// Fixed-width fields in a 64-bit word. Field i occupies bits [i * width, (i + 1) * width).

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace frechet {

inline constexpr int kWordBits = 64;

struct PackedWord {
    std::uint64_t bits = 0;
    int field_width = 1;
    int field_count = 0;

    std::uint64_t field(int i) const {
        if (i < 0 || i >= field_count) throw std::out_of_range("PackedWord: field index");
        return (bits >> (i * field_width)) & mask(field_width);
    }
    void set(int i, std::uint64_t v) {
        if (i < 0 || i >= field_count) throw std::out_of_range("PackedWord: field index");
        if (v > mask(field_width)) throw std::overflow_error("PackedWord: value exceeds field width");
        const int shift = i * field_width;
        bits = (bits & ~(mask(field_width) << shift)) | (v << shift);
    }

    static constexpr std::uint64_t mask(int width) {
        return width >= kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }

    friend bool operator==(const PackedWord&, const PackedWord&) = default;
};

namespace detail {

inline void check_layout(int width, std::size_t count) {
    if (width < 1 || width > kWordBits) throw std::invalid_argument("pack_fields: field width must be in [1, 64]");
    if (count * std::size_t(width) > std::size_t(kWordBits))
        throw std::overflow_error("pack_fields: fields exceed the 64-bit word");
}

}  // namespace detail

inline PackedWord pack_fields(std::span<const std::uint64_t> values, int width) {
    detail::check_layout(width, values.size());
    PackedWord w{0, width, int(values.size())};
    for (std::size_t i = 0; i < values.size(); ++i) w.set(int(i), values[i]);
    return w;
}

inline PackedWord pack_fields(std::initializer_list<std::uint64_t> values, int width) {
    return pack_fields(std::span<const std::uint64_t>(values.begin(), values.size()), width);
}

inline std::vector<std::uint64_t> unpack_fields(const PackedWord& w) {
    detail::check_layout(w.field_width, std::size_t(w.field_count));
    if (w.field_count * w.field_width < kWordBits && (w.bits >> (w.field_count * w.field_width)) != 0)
        throw std::invalid_argument("unpack_fields: bits set above the last field");
    std::vector<std::uint64_t> out(std::size_t(w.field_count));
    for (int i = 0; i < w.field_count; ++i) out[std::size_t(i)] = w.field(i);
    return out;
}

namespace detail {

/// Mask selecting fields whose index has bit `h` clear / set, repeated over the word.
inline std::uint64_t block_mask(int width, int fields, int h, bool high) {
    std::uint64_t m = 0;
    for (int i = 0; i < fields; ++i)
        if (((i & h) != 0) == high) m |= PackedWord::mask(width) << (i * width);
    return m;
}

}  // namespace detail

/// Transpose an a x a matrix of fields held in a words (row r in X[r], column c in field c).
/// a must be a power of two. Recursive halving; the off-diagonal blocks of every level are
/// swapped for all sub-matrices at once with shifts and masks.
inline std::vector<PackedWord> transpose_packed(std::span<const PackedWord> X) {
    const int a = int(X.size());
    if (a == 0) return {};
    if (!std::has_single_bit(unsigned(a))) throw std::invalid_argument("transpose_packed: size must be a power of two");
    const int width = X[0].field_width;
    detail::check_layout(width, std::size_t(a));
    for (const auto& w : X)
        if (w.field_width != width || w.field_count != a)
            throw std::invalid_argument("transpose_packed: words must share layout and hold a fields");

    std::vector<std::uint64_t> y(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i) y[std::size_t(i)] = X[std::size_t(i)].bits;

    // Level h swaps the upper-right and lower-left h x h blocks inside every 2h x 2h block.
    // Processed from the largest blocks down, which equals recursing on the halves first and
    // then swapping (the two orders commute for this block structure).
    for (int h = a / 2; h >= 1; h /= 2) {
        const std::uint64_t hi_fields = detail::block_mask(width, a, h, true);
        const int shift = h * width;
        for (int r = 0; r < a; ++r) {
            if (r & h) continue;
            std::uint64_t& top = y[std::size_t(r)];
            std::uint64_t& bottom = y[std::size_t(r + h)];
            // Field c + h of `top` (c with bit h clear) trades places with field c of `bottom`.
            const std::uint64_t t = ((top & hi_fields) >> shift) ^ (bottom & (hi_fields >> shift));
            top ^= t << shift;
            bottom ^= t;
        }
    }
    std::vector<PackedWord> out(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i) out[std::size_t(i)] = PackedWord{y[std::size_t(i)], width, a};
    return out;
}

/// Reference transpose, field by field.
inline std::vector<PackedWord> transpose_naive(std::span<const PackedWord> X) {
    const int a = int(X.size());
    std::vector<PackedWord> out(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i) {
        out[std::size_t(i)] = PackedWord{0, X[0].field_width, a};
        for (int j = 0; j < a; ++j) out[std::size_t(i)].set(j, X[std::size_t(j)].field(i));
    }
    return out;
}

}  // namespace frechet
