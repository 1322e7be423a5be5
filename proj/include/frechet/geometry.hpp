#pragma once

// Planar primitives shared by every decider and by the optimizer.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace frechet {

/// Absolute tolerance for equality-like comparisons (distances and edge parameters).
inline constexpr double kEps = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point() = default;
    Point(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x) || !std::isfinite(y))
            throw std::invalid_argument("Point: coordinates must be finite");
    }

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Segment {
    Point a;
    Point b;

    Point direction() const { return b - a; }
    bool degenerate() const { return a == b; }
    /// Point at parameter lambda, (1 - lambda) a + lambda b.
    Point at(double lambda) const { return (1.0 - lambda) * a + lambda * b; }
};

/// Closed subinterval of [0,1], or empty.
class Interval {
public:
    constexpr Interval() = default;
    constexpr Interval(double lo, double hi) : lo_(lo), hi_(hi), empty_(false) {}

    static constexpr Interval empty() { return {}; }
    static constexpr Interval full() { return {0.0, 1.0}; }

    constexpr bool is_empty() const { return empty_; }
    constexpr double lo() const { return lo_; }
    constexpr double hi() const { return hi_; }

    bool contains(double v) const { return !empty_ && lo_ <= v && v <= hi_; }
    /// Subset test with absolute slack `tol` on the endpoints.
    bool subset_of(const Interval& o, double tol = 0.0) const {
        if (empty_) return true;
        if (o.empty_) return false;
        return lo_ >= o.lo_ - tol && hi_ <= o.hi_ + tol;
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    double lo_ = 1.0;
    double hi_ = 0.0;
    bool empty_ = true;
};

class Curve {
public:
    Curve() = default;
    explicit Curve(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
        if (vertices_.empty()) throw std::invalid_argument("Curve: needs at least one vertex");
    }
    Curve(std::initializer_list<Point> vertices) : Curve(std::vector<Point>(vertices)) {}

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }
    const std::vector<Point>& vertices() const { return vertices_; }
    Segment edge(std::size_t i) const { return {vertices_[i], vertices_[i + 1]}; }

    /// Position at curve parameter s in [0, edge_count()].
    Point at(double s) const {
        if (edge_count() == 0) return vertices_.front();
        auto i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, double(edge_count() - 1)));
        return edge(i).at(s - double(i));
    }

    /// Copy whose edge count is the next multiple of `m`, padded by repeating the last vertex.
    Curve padded_to_multiple(std::size_t m) const {
        std::vector<Point> v = vertices_;
        std::size_t edges = edge_count();
        std::size_t target = edges == 0 ? m : (edges + m - 1) / m * m;
        while (v.size() < target + 1) v.push_back(vertices_.back());
        return Curve(std::move(v));
    }

    Curve sub_curve(std::size_t first, std::size_t edges) const {
        return Curve(std::vector<Point>(vertices_.begin() + std::ptrdiff_t(first),
                                        vertices_.begin() + std::ptrdiff_t(first + edges + 1)));
    }

    friend bool operator==(const Curve&, const Curve&) = default;

private:
    std::vector<Point> vertices_;
};

/// Raw parameters where the line through `seg` meets the circle of radius `radius` + kEps,
/// ordered along the segment direction. The slack keeps two doors that touch exactly (at a
/// vertex-vertex-edge radius) touching after rounding. Returns nullopt if the line misses or
/// the segment is degenerate.
inline std::optional<std::pair<double, double>> circle_line_params(Point center, const Segment& seg,
                                                                   double radius) {
    const Point d = seg.direction();
    const double len2 = norm2(d);
    if (len2 == 0.0) return std::nullopt;
    const Point w = center - seg.a;
    const double len = std::sqrt(len2);
    const double h = std::abs(cross(d, w)) / len;  // distance from center to the line
    const double r = radius + kEps;
    if (h > r) return std::nullopt;
    // Half chord from r^2 - h^2 = (r - h)(r + h), stable near tangency.
    const double half = std::sqrt((r - h) * (r + h)) / len;
    const double foot = dot(d, w) / len2;
    return std::pair{foot - half, foot + half};
}

/// Clamp a raw root to [0,1], snapping values within kEps of an endpoint.
inline double snap_param(double t) {
    if (t <= kEps) return 0.0;
    if (t >= 1.0 - kEps) return 1.0;
    return t;
}

/// Door interval for a pair of raw roots: empty when the chord misses [0,1] by more than kEps.
inline Interval interval_from_params(std::pair<double, double> roots) {
    if (roots.second < -kEps || roots.first > 1.0 + kEps) return Interval::empty();
    return {snap_param(roots.first), snap_param(roots.second)};
}

/// Set of lambda in [0,1] with |center - seg(lambda)| <= radius.
inline Interval free_interval(Point center, const Segment& seg, double radius) {
    if (seg.degenerate())
        return distance(center, seg.a) <= radius + kEps ? Interval::full() : Interval::empty();
    auto roots = circle_line_params(center, seg, radius);
    if (!roots) return Interval::empty();
    return interval_from_params(*roots);
}

inline double point_segment_distance(Point p, const Segment& seg) {
    const Point d = seg.direction();
    const double len2 = norm2(d);
    if (len2 == 0.0) return distance(p, seg.a);
    const double t = std::clamp(dot(p - seg.a, d) / len2, 0.0, 1.0);
    return distance(p, seg.at(t));
}

/// Parameter on seg of the foot of the perpendicular from p (unclamped).
inline double foot_param(Point p, const Segment& seg) {
    const Point d = seg.direction();
    return dot(p - seg.a, d) / norm2(d);
}

/// Distance from u (equivalently v) to where the perpendicular bisector of u,v crosses seg.
inline std::optional<double> bisector_edge_critical(Point u, Point v, const Segment& seg) {
    if (u == v || seg.degenerate()) return std::nullopt;
    const Point d = seg.direction();
    const Point uv = v - u;
    const double denom = dot(uv, d);
    if (std::abs(denom) <= kEps * std::sqrt(norm2(uv) * norm2(d))) return std::nullopt;
    // |seg(t) - u|^2 = |seg(t) - v|^2  <=>  2 (v - u).(a + t d) = |v|^2 - |u|^2
    const double t = ((norm2(v) - norm2(u)) / 2.0 - dot(uv, seg.a)) / denom;
    if (t < 0.0 || t > 1.0) return std::nullopt;
    // Evaluate with the smaller-index vertex first so both argument orders agree bitwise.
    const Point x = seg.at(t);
    const Point& first = (u.x < v.x || (u.x == v.x && u.y < v.y)) ? u : v;
    return distance(first, x);
}

/// Frechet distance between two single-edge curves.
inline double segment_pair_frechet(const Segment& s1, const Segment& s2) {
    return std::max(distance(s1.a, s2.a), distance(s1.b, s2.b));
}

}  // namespace frechet
