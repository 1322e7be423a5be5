#pragma once

// Test curve generators. All randomness comes from the caller's engine.

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

struct CurvePair {
    Curve first;
    Curve second;
};

/// n vertices, starting at the origin, Gaussian steps with standard deviation `step`.
template <class URBG>
Curve random_walk(std::size_t n, URBG& rng, double step = 1.0) {
    if (n < 1) throw std::invalid_argument("random_walk: n must be positive");
    std::normal_distribution<double> d(0.0, step);
    std::vector<Point> v{{0.0, 0.0}};
    while (v.size() < n) {
        const double dx = d(rng);
        const double dy = d(rng);
        v.push_back(v.back() + Point{dx, dy});
    }
    return Curve(std::move(v));
}

/// Copy of `c` with every vertex moved by independent Gaussian noise.
template <class URBG>
Curve perturbed(const Curve& c, double sigma, URBG& rng) {
    std::normal_distribution<double> d(0.0, sigma);
    std::vector<Point> v;
    v.reserve(c.vertex_count());
    for (const Point& p : c.vertices()) {
        const double dx = d(rng);
        const double dy = d(rng);
        v.push_back(p + Point{dx, dy});
    }
    return Curve(std::move(v));
}

template <class URBG>
CurvePair perturbed_pair(std::size_t n, URBG& rng, double sigma = 0.25) {
    Curve a = random_walk(n, rng);
    Curve b = perturbed(a, sigma, rng);
    return {std::move(a), std::move(b)};
}

/// Zigzag with vertices (k * amplitude, 0 or amplitude), and a second curve tracing the same
/// segments but backing up over the middle third. Hausdorff distance 0; for n >= 7 the Frechet
/// distance is at least `amplitude` (half the backtracked horizontal length).
inline CurvePair zigzag_pair(std::size_t n, double amplitude = 1.0) {
    if (n < 7) throw std::invalid_argument("zigzag: n must be at least 7");
    if (!(amplitude > 0.0)) throw std::invalid_argument("zigzag: amplitude must be positive");
    std::vector<Point> z;
    for (std::size_t k = 0; k < n; ++k) z.push_back({double(k) * amplitude, k % 2 ? amplitude : 0.0});
    const std::size_t m = n - 1, j1 = m / 3, j2 = (2 * m + 2) / 3;
    std::vector<Point> back;
    for (std::size_t k = 0; k <= j2; ++k) back.push_back(z[k]);
    for (std::size_t k = j2; k-- > j1;) back.push_back(z[k]);
    for (std::size_t k = j1 + 1; k <= m; ++k) back.push_back(z[k]);
    return {Curve(std::move(z)), Curve(std::move(back))};
}

/// n vertices on a circle, the last one equal to the first (closed polyline).
inline Curve circle_curve(std::size_t n, double radius = 1.0, Point center = {0.0, 0.0}) {
    if (n < 1) throw std::invalid_argument("circle: n must be positive");
    std::vector<Point> v;
    for (std::size_t k = 0; k < n; ++k) {
        if (n > 1 && k == n - 1) {
            v.push_back(v.front());
            break;
        }
        const double a = n == 1 ? 0.0 : 2.0 * std::numbers::pi * double(k) / double(n - 1);
        v.push_back(center + Point{radius * std::cos(a), radius * std::sin(a)});
    }
    return Curve(std::move(v));
}

}  // namespace frechet
