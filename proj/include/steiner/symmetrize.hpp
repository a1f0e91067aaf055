#pragma once

// Steiner symmetrization of planar convex bodies, exact on the polygon
// representation, plus projection utilities.

#include <vector>

#include "steiner/geom2d.hpp"

namespace steiner {

/// Orthogonal projection onto the line u^perp through the origin.
inline ConvexBody2 project(const ConvexBody2& K, const Direction& u, const Tolerances& tol = {}) {
    const Vec2 w = u.perp();
    double smin = std::numeric_limits<double>::infinity(), smax = -smin;
    for (const Vec2& v : K.vertices()) {
        const double s = dot(v, w);
        smin = std::min(smin, s);
        smax = std::max(smax, s);
    }
    if (smax - smin <= tol.vertex_tol) return ConvexBody2::point(w * (0.5 * (smin + smax)));
    return ConvexBody2::segment(w * smin, w * smax, tol);
}

namespace detail {

// Chain evaluators over (s, t) vertex chains that are s-monotone except for a
// single vertical run at one end. `lower` chains may end vertical, `upper`
// chains (left-to-right) may start vertical.
struct ChainCursor {
    const std::vector<Vec2>* chain;
    std::size_t j = 0;

    double eval_lower(double s) {
        const auto& c = *chain;
        while (j + 1 < c.size() && c[j + 1].x < s) ++j;
        if (c[j].x == s) return c[j].y;
        if (j + 1 < c.size()) {
            if (c[j + 1].x == s) return c[j + 1].y;
            const double t = (s - c[j].x) / (c[j + 1].x - c[j].x);
            return c[j].y + t * (c[j + 1].y - c[j].y);
        }
        return c[j].y;
    }

    double eval_upper(double s) {
        const auto& c = *chain;
        while (j + 1 < c.size() && c[j + 1].x <= s) ++j;
        if (c[j].x == s || j + 1 >= c.size()) return c[j].y;
        const double t = (s - c[j].x) / (c[j + 1].x - c[j].x);
        return c[j].y + t * (c[j + 1].y - c[j].y);
    }
};

inline ConvexBody2 finalize_ring(std::vector<Vec2> ring, const Tolerances& tol,
                                 double* pruned_area) {
    prune_ring(ring, tol, pruned_area);
    return classify_ring(std::move(ring), tol);
}

}  // namespace detail

/// Steiner symmetrization s_u K: every chord of K parallel to u slides to be
/// centered on u^perp. Exact on polygons: the chord-length function is
/// concave piecewise-linear with breakpoints at vertex abscissae, and the
/// symmetral's vertices are emitted exactly there. `pruned_area` (optional)
/// accumulates the area bound removed by collinear-vertex pruning.
inline ConvexBody2 symmetrize(const ConvexBody2& K, const Direction& u, const Tolerances& tol = {},
                           double* pruned_area = nullptr) {
    const Vec2 w = u.perp();
    const Vec2 uu = u.unit();

    if (K.is_point()) {
        return ConvexBody2::point(w * dot(K.vertices()[0], w));
    }
    if (K.is_segment()) {
        const Vec2 a = K.vertices()[0], b = K.vertices()[1];
        const double sa = dot(a, w), sb = dot(b, w);
        if (std::abs(sa - sb) <= tol.vertex_tol) {
            // chord parallel to u: recenter the whole segment on u^perp
            const Vec2 mid = w * (0.5 * (sa + sb));
            const Vec2 half = uu * (0.5 * dist(a, b));
            return ConvexBody2::segment(mid - half, mid + half, tol);
        }
        // every chord is a single point: the symmetral is the projection
        return project(K, u, tol);
    }

    const auto& v = K.vertices();
    const std::size_t n = v.size();

    std::vector<Vec2> st(n);
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        st[i] = {dot(v[i], w), dot(v[i], uu)};
        if (lex_less(st[i], st[imin])) imin = i;
        if (lex_less(st[imax], st[i])) imax = i;
    }

    // CCW ring in the right-handed (w, u) frame: lex-min to lex-max along the
    // bottom, back along the top.
    std::vector<Vec2> low, up;
    for (std::size_t i = imin;; i = (i + 1) % n) {
        low.push_back(st[i]);
        if (i == imax) break;
    }
    for (std::size_t i = imax;; i = (i + 1) % n) {
        up.push_back(st[i]);
        if (i == imin) break;
    }
    std::reverse(up.begin(), up.end());

    std::vector<double> ss;
    ss.reserve(low.size() + up.size());
    {
        std::vector<double> sl(low.size()), su(up.size());
        for (std::size_t i = 0; i < low.size(); ++i) sl[i] = low[i].x;
        for (std::size_t i = 0; i < up.size(); ++i) su[i] = up[i].x;
        std::merge(sl.begin(), sl.end(), su.begin(), su.end(), std::back_inserter(ss));
        ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    }

    detail::ChainCursor cl{&low}, cu{&up};
    const std::size_t m = ss.size();
    std::vector<Vec2> ring;
    ring.reserve(2 * m);
    std::vector<double> half_len(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double l = cu.eval_upper(ss[k]) - cl.eval_lower(ss[k]);
        half_len[k] = std::max(0.0, 0.5 * l);
        ring.push_back({ss[k], -half_len[k]});
    }
    for (std::size_t k = m; k-- > 0;) ring.push_back({ss[k], half_len[k]});

    for (Vec2& p : ring) p = w * p.x + uu * p.y;
    return detail::finalize_ring(std::move(ring), tol, pruned_area);
}

/// Is K symmetric under reflection across u^perp, up to `tol_dist` in
/// Hausdorff distance?
inline bool is_symmetric(const ConvexBody2& K, const Direction& u, double tol_dist,
                         const Tolerances& tol = {}) {
    return hausdorff(K, reflect(K, u, tol)) <= tol_dist;
}

/// Max over the direction list of the Hausdorff distance between K and its
/// one-step symmetral: a certificate of being (near) a process fixed point.
inline double fixpoint_residual(const ConvexBody2& K, std::span<const Direction> dirs,
                                const Tolerances& tol = {}) {
    if (dirs.empty()) throw invalid_input("fixpoint_residual: empty direction list");
    const SupportFan fan = build_fan(K);
    double r = 0.0;
    for (const Direction& d : dirs) r = std::max(r, hausdorff(build_fan(symmetrize(K, d, tol)), fan));
    return r;
}

}  // namespace steiner
