#pragma once

// Body generators shared by the CLI, the verification suites, and tests.

#include "steiner/geom2d.hpp"

namespace steiner {

/// Regular k-gon with the given circumradius, centered at the origin, first
/// vertex at angle pi/2 (apex up).
inline ConvexBody2 regular_polygon(int k, double circumradius = 1.0) {
    if (k < 3) throw invalid_input("regular_polygon: need k >= 3");
    std::vector<Vec2> v(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double t = std::numbers::pi / 2 + kTwoPi * i / k;
        v[static_cast<std::size_t>(i)] = {circumradius * std::cos(t), circumradius * std::sin(t)};
    }
    return normalize(v);
}

/// Regular k-gon scaled to the given area, centered at the origin.
inline ConvexBody2 regular_polygon_with_area(int k, double target_area) {
    if (!(target_area > 0)) throw invalid_input("regular_polygon_with_area: area must be positive");
    // area of a regular k-gon with circumradius R: (k/2) R^2 sin(2 pi / k)
    const double R = std::sqrt(2.0 * target_area / (k * std::sin(kTwoPi / k)));
    return regular_polygon(k, R);
}

/// Uniform point in the closed unit disk.
inline Vec2 random_in_disk(SplitMix64& rng) {
    const double r = std::sqrt(rng.uniform());
    const double t = kTwoPi * rng.uniform();
    return {r * std::cos(t), r * std::sin(t)};
}

/// Convex hull of k uniform points in the unit disk; retries (deterministic)
/// until the hull is a genuine polygon.
inline ConvexBody2 random_polygon(int k, std::uint64_t seed) {
    if (k < 3) throw invalid_input("random_polygon: need k >= 3");
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Vec2> pts(static_cast<std::size_t>(k));
        for (Vec2& p : pts) p = random_in_disk(rng);
        ConvexBody2 K = normalize(pts);
        if (K.is_polygon()) return K;
    }
    throw invalid_input("random_polygon: could not draw a non-degenerate polygon");
}

inline Direction random_direction(SplitMix64& rng) {
    return Direction::from_angle(rng.uniform() * std::numbers::pi);
}

/// Pairwise-distinct directions in [0, pi); gaps forced above 1e-3 so random
/// schedules stay numerically well separated.
inline std::vector<Direction> random_direction_set(int m, SplitMix64& rng) {
    std::vector<Direction> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < m && guard++ < 10000) {
        Direction d = random_direction(rng);
        bool ok = true;
        for (const Direction& e : out) {
            double gap = std::abs(d.theta - e.theta);
            gap = std::min(gap, std::numbers::pi - gap);
            if (gap < 1e-3) ok = false;
        }
        if (ok) out.push_back(d);
    }
    if (static_cast<int>(out.size()) < m)
        throw invalid_input("random_direction_set: could not separate directions");
    return out;
}

inline ConvexBody2 segment_body(double len) {
    if (!(len > 0)) throw invalid_input("segment_body: length must be positive");
    return ConvexBody2::segment({0, 0}, {len, 0});
}

/// The right isoceles triangle (0,0),(1,0),(0,1).
inline ConvexBody2 right_triangle() { return normalize({{0, 0}, {1, 0}, {0, 1}}); }

}  // namespace steiner
