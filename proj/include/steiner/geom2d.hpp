#pragma once

// Exact planar convex-body kernel: canonical vertex representation,
// support functions, metrics, Minkowski algebra, containment predicates.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "steiner/base.hpp"

namespace steiner {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

/// Unit vector, canonically parameterized by its angle in [0, 2pi).
struct Direction {
    double theta = 0.0;
    double ux = 1.0;
    double uy = 0.0;

    static Direction from_angle(double t) {
        if (!std::isfinite(t)) throw invalid_input("Direction: non-finite angle");
        Direction d;
        d.theta = wrap_angle(t);
        d.ux = std::cos(d.theta);
        d.uy = std::sin(d.theta);
        return d;
    }

    static Direction from_degrees(double deg) {
        return from_angle(deg * std::numbers::pi / 180.0);
    }

    static Direction from_vector(Vec2 v) {
        double n = norm(v);
        if (!(n > 0) || !std::isfinite(n)) throw invalid_input("Direction: zero or non-finite vector");
        return from_angle(std::atan2(v.y, v.x));
    }

    Vec2 unit() const { return {ux, uy}; }
    /// Perpendicular spanning u^perp; (perp, unit) is a right-handed frame.
    Vec2 perp() const { return {uy, -ux}; }
};

struct Ball2 {
    Vec2 center;
    double radius = 0.0;
};

/// A compact convex set in the plane: point, segment, or strictly convex
/// CCW polygon. Always in canonical form (see normalize()).
class ConvexBody2 {
  public:
    enum class Kind { Point, Segment, Polygon };

    Kind kind() const { return kind_; }
    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    bool is_point() const { return kind_ == Kind::Point; }
    bool is_segment() const { return kind_ == Kind::Segment; }
    bool is_polygon() const { return kind_ == Kind::Polygon; }

    static ConvexBody2 point(Vec2 p) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw invalid_input("ConvexBody2::point: non-finite coordinate");
        return ConvexBody2(Kind::Point, {p});
    }

    static ConvexBody2 segment(Vec2 a, Vec2 b, const Tolerances& tol = {}) {
        if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) || !std::isfinite(b.y))
            throw invalid_input("ConvexBody2::segment: non-finite coordinate");
        if (dist(a, b) <= tol.vertex_tol)
            throw invalid_input("ConvexBody2::segment: endpoints coincide");
        if (lex_less(b, a)) std::swap(a, b);
        return ConvexBody2(Kind::Segment, {a, b});
    }

    bool operator==(const ConvexBody2&) const = default;

    // Internal: trusted construction from an already-canonical ring.
    static ConvexBody2 trusted(Kind k, std::vector<Vec2> v) { return ConvexBody2(k, std::move(v)); }

  private:
    ConvexBody2(Kind k, std::vector<Vec2> v) : kind_(k), verts_(std::move(v)) {}

    Kind kind_;
    std::vector<Vec2> verts_;
};

namespace detail {

inline double ring_area2(std::span<const Vec2> p) {
    double s = 0;
    for (std::size_t i = 0, n = p.size(); i < n; ++i) {
        const Vec2& a = p[i];
        const Vec2& b = p[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    return s;  // twice the signed area
}

/// In-place cleanup of a convex CCW ring: drop duplicate-within-vertex_tol
/// vertices and collinear-within-area_tol vertices, until stable.
/// Accumulates the (signed-positive) area removed by collinear pruning.
inline void prune_ring(std::vector<Vec2>& ring, const Tolerances& tol, double* pruned_area) {
    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        // coincident neighbors
        std::vector<Vec2> tmp;
        tmp.reserve(ring.size());
        for (const Vec2& p : ring) {
            if (!tmp.empty() && dist(tmp.back(), p) <= tol.vertex_tol) continue;
            tmp.push_back(p);
        }
        while (tmp.size() >= 2 && dist(tmp.front(), tmp.back()) <= tol.vertex_tol) tmp.pop_back();
        if (tmp.size() != ring.size()) changed = true;
        ring.swap(tmp);
        if (ring.size() < 3) break;
        // collinear vertices
        tmp.clear();
        for (const Vec2& p : ring) tmp.push_back(p);
        std::vector<Vec2> out;
        out.reserve(tmp.size());
        for (const Vec2& p : tmp) {
            while (out.size() >= 2) {
                double cr = cross(out.back() - out[out.size() - 2], p - out.back());
                if (cr <= tol.area_tol) {
                    if (cr > 0 && pruned_area) *pruned_area += cr * 0.5;
                    out.pop_back();
                    changed = true;
                } else {
                    break;
                }
            }
            out.push_back(p);
        }
        // close the ring: first/last vertices need the same treatment
        bool closing = true;
        while (closing && out.size() >= 3) {
            closing = false;
            double cr = cross(out[0] - out.back(), out[1] - out[0]);
            if (cr <= tol.area_tol) {
                if (cr > 0 && pruned_area) *pruned_area += cr * 0.5;
                out.erase(out.begin());
                changed = closing = true;
                continue;
            }
            cr = cross(out.back() - out[out.size() - 2], out[0] - out.back());
            if (cr <= tol.area_tol) {
                if (cr > 0 && pruned_area) *pruned_area += cr * 0.5;
                out.pop_back();
                changed = closing = true;
            }
        }
        ring.swap(out);
    }
}

inline void rotate_to_lex_min(std::vector<Vec2>& ring) {
    if (ring.size() < 2) return;
    auto it = std::min_element(ring.begin(), ring.end(),
                               [](Vec2 a, Vec2 b) { return lex_less(a, b); });
    std::rotate(ring.begin(), it, ring.end());
}

inline ConvexBody2 classify_ring(std::vector<Vec2> ring, const Tolerances& tol) {
    if (ring.size() >= 3) {
        double a2 = ring_area2(ring);
        if (a2 * 0.5 > tol.area_tol) {
            rotate_to_lex_min(ring);
            return ConvexBody2::trusted(ConvexBody2::Kind::Polygon, std::move(ring));
        }
    }
    // degenerate: farthest pair decides segment vs point
    Vec2 a = ring[0], b = ring[0];
    double best = -1;
    for (std::size_t i = 0; i < ring.size(); ++i)
        for (std::size_t j = i + 1; j < ring.size(); ++j) {
            double d = dist(ring[i], ring[j]);
            if (d > best) { best = d; a = ring[i]; b = ring[j]; }
        }
    if (best > tol.vertex_tol) {
        if (lex_less(b, a)) std::swap(a, b);
        return ConvexBody2::trusted(ConvexBody2::Kind::Segment, {a, b});
    }
    auto it = std::min_element(ring.begin(), ring.end(),
                               [](Vec2 p, Vec2 q) { return lex_less(p, q); });
    return ConvexBody2::trusted(ConvexBody2::Kind::Point, {*it});
}

}  // namespace detail

/// Canonical form of the convex hull of a point cloud. Collinear vertices
/// are pruned (consecutive cross product <= area_tol), orientation is CCW,
/// the lexicographically smallest vertex comes first. Hulls of area
/// <= area_tol demote to Segment, of diameter <= vertex_tol to Point.
/// `pruned_area` (optional) accumulates an upper bound on hull area removed
/// by collinearity pruning.
inline ConvexBody2 normalize(std::span<const Vec2> points, const Tolerances& tol = {},
                             double* pruned_area = nullptr) {
    if (points.empty()) throw invalid_input("normalize: empty point list");
    for (const Vec2& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw invalid_input("normalize: non-finite coordinate");

    std::vector<Vec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return lex_less(a, b); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.size() == 1) return ConvexBody2::point(pts[0]);

    // Andrew's monotone chain, pruning non-left turns up to area_tol.
    auto build = [&](auto begin, auto end) {
        std::vector<Vec2> h;
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= 2) {
                double cr = cross(h.back() - h[h.size() - 2], *it - h.back());
                if (cr <= tol.area_tol) {
                    if (cr > 0 && pruned_area) *pruned_area += cr * 0.5;
                    h.pop_back();
                } else {
                    break;
                }
            }
            h.push_back(*it);
        }
        return h;
    };
    std::vector<Vec2> lower = build(pts.begin(), pts.end());
    std::vector<Vec2> upper = build(pts.rbegin(), pts.rend());
    std::vector<Vec2> ring(lower.begin(), lower.end() - 1);
    ring.insert(ring.end(), upper.begin(), upper.end() - 1);

    if (ring.size() < 3) return detail::classify_ring(std::move(ring), tol);

    detail::prune_ring(ring, tol, pruned_area);
    return detail::classify_ring(std::move(ring), tol);
}

inline ConvexBody2 normalize(std::initializer_list<Vec2> points, const Tolerances& tol = {}) {
    return normalize(std::span<const Vec2>(points.begin(), points.size()), tol);
}

/// h_K(u) = max over x in K of x . u  (u need not be unit; positively homogeneous).
inline double support(const ConvexBody2& K, Vec2 u) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : K.vertices()) best = std::max(best, dot(v, u));
    return best;
}

inline double support(const ConvexBody2& K, const Direction& u) { return support(K, u.unit()); }

inline double area(const ConvexBody2& K) {
    if (!K.is_polygon()) return 0.0;
    return 0.5 * detail::ring_area2(K.vertices());
}

/// Boundary length; a segment counts both sides.
inline double perimeter(const ConvexBody2& K) {
    switch (K.kind()) {
        case ConvexBody2::Kind::Point: return 0.0;
        case ConvexBody2::Kind::Segment: return 2.0 * dist(K.vertices()[0], K.vertices()[1]);
        case ConvexBody2::Kind::Polygon: {
            const auto& v = K.vertices();
            double s = 0;
            for (std::size_t i = 0, n = v.size(); i < n; ++i) s += dist(v[i], v[(i + 1) % n]);
            return s;
        }
    }
    return 0.0;
}

inline double mean_width(const ConvexBody2& K) { return perimeter(K) / std::numbers::pi; }

/// Max pairwise distance, by rotating calipers on the (strictly convex) ring.
inline double diameter(const ConvexBody2& K) {
    const auto& p = K.vertices();
    const std::size_t n = p.size();
    if (n == 1) return 0.0;
    if (n == 2) return dist(p[0], p[1]);
    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t i1 = (i + 1) % n;
        const Vec2 e = p[i1] - p[i];
        for (;;) {
            const std::size_t j1 = (j + 1) % n;
            if (cross(e, p[j1] - p[j]) > 0) j = j1;
            else break;
        }
        best = std::max({best, dist(p[i], p[j]), dist(p[i1], p[j]),
                         dist(p[i], p[(j + 1) % n])});
    }
    return best;
}

inline double max_vertex_norm(const ConvexBody2& K) {
    double m = 0;
    for (const Vec2& v : K.vertices()) m = std::max(m, norm(v));
    return m;
}

inline ConvexBody2 translate(const ConvexBody2& K, Vec2 t) {
    std::vector<Vec2> v = K.vertices();
    for (Vec2& p : v) p = p + t;
    if (K.is_polygon()) detail::rotate_to_lex_min(v);
    else if (K.is_segment() && lex_less(v[1], v[0])) std::swap(v[0], v[1]);
    return ConvexBody2::trusted(K.kind(), std::move(v));
}

/// aK for a >= 0; a = 0 collapses to the origin.
inline ConvexBody2 scale(const ConvexBody2& K, double a, const Tolerances& tol = {}) {
    if (!(a >= 0)) throw invalid_input("scale: factor must be nonnegative");
    if (a == 0.0) return ConvexBody2::point({0.0, 0.0});
    std::vector<Vec2> v = K.vertices();
    for (Vec2& p : v) p = p * a;
    return normalize(v, tol);
}

/// Reflection across the line u^perp through the origin: x - 2(x.u)u.
inline ConvexBody2 reflect(const ConvexBody2& K, const Direction& u, const Tolerances& tol = {}) {
    std::vector<Vec2> v = K.vertices();
    for (Vec2& p : v) {
        const double t = 2.0 * (p.x * u.ux + p.y * u.uy);
        p = {p.x - t * u.ux, p.y - t * u.uy};
    }
    return normalize(v, tol);
}

namespace detail {

inline std::size_t bottom_most(const std::vector<Vec2>& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i].y < v[k].y || (v[i].y == v[k].y && v[i].x < v[k].x)) k = i;
    return k;
}

// Angle-class comparison of edge vectors over [0, 2pi) starting at +x.
inline int half_class(Vec2 e) { return (e.y > 0 || (e.y == 0 && e.x > 0)) ? 0 : 1; }

inline bool edge_angle_less(Vec2 a, Vec2 b) {
    int ca = half_class(a), cb = half_class(b);
    if (ca != cb) return ca < cb;
    return cross(a, b) > 0;
}

}  // namespace detail

/// Exact Minkowski sum. Polygon + polygon uses the merge of edge sequences in
/// polar-angle order; degenerate operands fall back to pairwise vertex sums.
inline ConvexBody2 minkowski_sum(const ConvexBody2& K, const ConvexBody2& L,
                                 const Tolerances& tol = {}) {
    if (K.is_point()) return translate(L, K.vertices()[0]);
    if (L.is_point()) return translate(K, L.vertices()[0]);
    if (!K.is_polygon() || !L.is_polygon()) {
        std::vector<Vec2> sums;
        sums.reserve(K.size() * L.size());
        for (const Vec2& p : K.vertices())
            for (const Vec2& q : L.vertices()) sums.push_back(p + q);
        return normalize(sums, tol);
    }
    const auto& A = K.vertices();
    const auto& B = L.vertices();
    const std::size_t n = A.size(), m = B.size();
    const std::size_t ia0 = detail::bottom_most(A), ib0 = detail::bottom_most(B);
    std::vector<Vec2> out;
    out.reserve(n + m);
    Vec2 cur = A[ia0] + B[ib0];
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        out.push_back(cur);
        if (j >= m) {
            cur = cur + (A[(ia0 + i + 1) % n] - A[(ia0 + i) % n]);
            ++i;
        } else if (i >= n) {
            cur = cur + (B[(ib0 + j + 1) % m] - B[(ib0 + j) % m]);
            ++j;
        } else {
            const Vec2 ea = A[(ia0 + i + 1) % n] - A[(ia0 + i) % n];
            const Vec2 eb = B[(ib0 + j + 1) % m] - B[(ib0 + j) % m];
            if (detail::edge_angle_less(eb, ea)) {
                cur = cur + eb;
                ++j;
            } else {
                cur = cur + ea;
                ++i;
            }
        }
    }
    return normalize(out, tol);
}

// ---------------------------------------------------------------------------
// Support fans and the exact Hausdorff distance.

/// Decomposition of the circle into arcs on which the support function of a
/// body is realized by a single vertex: arc k starts at angles[k] (whose unit
/// direction is normals[k]) and active[k] is the maximizer on it.
struct SupportFan {
    std::vector<double> angles;
    std::vector<Vec2> normals;
    std::vector<Vec2> active;
};

inline SupportFan build_fan(const ConvexBody2& K) {
    SupportFan f;
    const auto& v = K.vertices();
    if (K.is_point()) {
        f.angles = {0.0};
        f.normals = {{1.0, 0.0}};
        f.active = {v[0]};
        return f;
    }
    if (K.is_segment()) {
        const Vec2 e = v[1] - v[0];
        const double len = norm(e);
        Vec2 n1{e.y / len, -e.x / len};
        double t1 = wrap_angle(std::atan2(n1.y, n1.x));
        double t2 = wrap_angle(t1 + std::numbers::pi);
        Vec2 n2 = -n1;
        if (t1 > t2) {
            std::swap(t1, t2);
            std::swap(n1, n2);
        }
        auto argmax_at = [&](double th) {
            Vec2 u{std::cos(th), std::sin(th)};
            return dot(v[0], u) >= dot(v[1], u) ? v[0] : v[1];
        };
        f.angles = {t1, t2};
        f.normals = {n1, n2};
        f.active = {argmax_at((t1 + t2) / 2), argmax_at(wrap_angle(t2 + (t1 + kTwoPi - t2) / 2))};
        return f;
    }
    const std::size_t n = v.size();
    std::vector<double> phi(n);
    std::vector<Vec2> nrm(n);
    std::size_t start = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 e = v[(k + 1) % n] - v[k];
        const double len = norm(e);
        nrm[k] = {e.y / len, -e.x / len};  // outward normal
        phi[k] = wrap_angle(std::atan2(nrm[k].y, nrm[k].x));
        if (phi[k] < phi[start]) start = k;
    }
    f.angles.resize(n);
    f.normals.resize(n);
    f.active.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = (start + k) % n;
        f.angles[k] = phi[src];
        f.normals[k] = nrm[src];
        f.active[k] = v[(src + 1) % n];  // vertex shared by edges src, src+1
    }
    return f;
}

namespace detail {

inline bool angle_in(double c, double t0, double t1) {
    while (c < t0) c += kTwoPi;
    return c < t1;
}

}  // namespace detail

namespace detail {

/// Sweep the merged normal fans of two bodies and return the exact sup over
/// unit directions of f(h_K(u) - h_L(u)), where f is |.| (absolute: the
/// Hausdorff distance) or the identity (signed: the inclusion excess). On
/// each merged arc the difference is A cos(t) + B sin(t), maximized at the
/// arc ends or at an interior critical angle.
template <bool Absolute>
double fan_sweep(const SupportFan& fk, const SupportFan& fl) {
    const std::size_t na = fk.angles.size(), nb = fl.angles.size();
    double best = -std::numeric_limits<double>::infinity();
    std::size_t ia = 0, ib = 0;  // next unconsumed event per fan
    // arc index currently active in each fan (the one containing the sweep
    // angle): the last event <= sweep, wrapping to the final arc initially
    std::size_t ka = na - 1, kb = nb - 1;
    while (ia < na || ib < nb) {
        double t0;
        Vec2 n0;
        const bool take_a = ib >= nb || (ia < na && fk.angles[ia] <= fl.angles[ib]);
        if (take_a) {
            t0 = fk.angles[ia];
            n0 = fk.normals[ia];
            ka = ia++;
            if (ib < nb && fl.angles[ib] == t0) kb = ib++;
        } else {
            t0 = fl.angles[ib];
            n0 = fl.normals[ib];
            kb = ib++;
        }
        const double t1 = (ia < na && ib < nb) ? std::min(fk.angles[ia], fl.angles[ib])
                          : (ia < na)          ? fk.angles[ia]
                          : (ib < nb)          ? fl.angles[ib]
                                               : std::min(fk.angles[0], fl.angles[0]) + kTwoPi;
        const Vec2 d = fk.active[ka] - fl.active[kb];
        const double at_start = dot(d, n0);
        best = std::max(best, Absolute ? std::abs(at_start) : at_start);
        const double amp = norm(d);
        if (amp > best) {
            const double tc = wrap_angle(std::atan2(d.y, d.x));
            if (angle_in(tc, t0, t1) ||
                (Absolute && angle_in(wrap_angle(tc + std::numbers::pi), t0, t1)))
                best = amp;
        }
    }
    // the first merged event also ends the wrap-around arc; evaluate it with
    // the final active pair
    {
        const Vec2 d = fk.active[na - 1] - fl.active[nb - 1];
        const bool first_a = fk.angles[0] <= fl.angles[0];
        const Vec2 n0 = first_a ? fk.normals[0] : fl.normals[0];
        const double v = dot(d, n0);
        best = std::max(best, Absolute ? std::abs(v) : v);
    }
    return best;
}

}  // namespace detail

inline double hausdorff(const SupportFan& fk, const SupportFan& fl) {
    return detail::fan_sweep<true>(fk, fl);
}

/// Exact Hausdorff distance between two convex bodies.
inline double hausdorff(const ConvexBody2& K, const ConvexBody2& L) {
    if (K == L) return 0.0;
    return hausdorff(build_fan(K), build_fan(L));
}

/// Exact sup over unit directions of h_inner - h_outer: at most 0 exactly
/// when inner is contained in outer, and positive by the protrusion depth
/// otherwise.
inline double inclusion_excess(const ConvexBody2& inner, const ConvexBody2& outer) {
    return detail::fan_sweep<false>(build_fan(inner), build_fan(outer));
}

// ---------------------------------------------------------------------------
// Enclosing and inscribed disks.

namespace detail {

inline bool in_ball_eps(Vec2 p, const Ball2& b, double eps) {
    return norm2(p - b.center) <= b.radius * b.radius + eps;
}

inline Ball2 ball_two(Vec2 a, Vec2 b) {
    const Vec2 c = (a + b) * 0.5;
    return {c, dist(a, b) * 0.5};
}

inline Ball2 ball_three(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 B = b - a, C = c - a;
    const double d = 2.0 * cross(B, C);
    if (std::abs(d) < 1e-30) {
        Ball2 r = ball_two(a, b);
        for (const Ball2& cand : {ball_two(a, c), ball_two(b, c)})
            if (cand.radius > r.radius) r = cand;
        return r;
    }
    const double b2 = norm2(B), c2 = norm2(C);
    const Vec2 off{(C.y * b2 - B.y * c2) / d, (B.x * c2 - C.x * b2) / d};
    return {a + off, norm(off)};
}

}  // namespace detail

/// Minimum enclosing disk of the vertex set (Welzl's incremental algorithm,
/// deterministic seeded shuffle).
inline Ball2 circumradius(const ConvexBody2& K) {
    const auto& src = K.vertices();
    if (src.size() == 1) return {src[0], 0.0};
    if (src.size() == 2) return detail::ball_two(src[0], src[1]);

    std::vector<Vec2> p(src.begin(), src.end());
    SplitMix64 rng(0x5EEDBA11u ^ (std::uint64_t)p.size());
    for (std::size_t i = p.size() - 1; i > 0; --i)
        std::swap(p[i], p[rng.below(i + 1)]);

    const double scale2 = [&] {
        double m = 0;
        for (const Vec2& q : p) m = std::max(m, norm2(q));
        return std::max(1.0, m);
    }();
    const double eps = 1e-13 * scale2;

    Ball2 d{p[0], 0.0};
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (detail::in_ball_eps(p[i], d, eps)) continue;
        d = {p[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (detail::in_ball_eps(p[j], d, eps)) continue;
            d = detail::ball_two(p[i], p[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (detail::in_ball_eps(p[k], d, eps)) continue;
                d = detail::ball_three(p[i], p[j], p[k]);
            }
        }
    }
    return d;
}

/// Smallest radius R with K inside the origin-centered ball RB.
inline double circumradius_origin(const ConvexBody2& K) { return max_vertex_norm(K); }

// ---------------------------------------------------------------------------
// Chebyshev disk via a small linear program.

namespace detail {

struct LpRow {
    std::array<double, 3> a;
    double b;
};

/// maximize c.z subject to rows a.z <= b and box lo <= z <= hi, for d <= 3
/// variables (Seidel's incremental scheme, constraints in the given order).
/// Returns false when the constraints are inconsistent.
inline bool lp_max(int d, const std::vector<LpRow>& rows, const std::array<double, 3>& lo,
                   const std::array<double, 3>& hi, const std::array<double, 3>& c,
                   std::array<double, 3>& z) {
    const double eps = 1e-11;
    if (d == 1) {
        double l = lo[0], h = hi[0];
        for (const LpRow& r : rows) {
            const double a = r.a[0];
            if (std::abs(a) < 1e-14) {
                if (r.b < -eps * std::max(1.0, std::abs(a))) return false;
                continue;
            }
            if (a > 0) h = std::min(h, r.b / a);
            else l = std::max(l, r.b / a);
        }
        if (l > h + eps) return false;
        if (l > h) l = h = 0.5 * (l + h);
        z[0] = (c[0] > 0) ? h : l;
        return true;
    }
    for (int k = 0; k < d; ++k) z[k] = (c[k] > 0) ? hi[k] : lo[k];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const LpRow& ri = rows[i];
        double lhs = 0, scale = std::abs(ri.b);
        for (int k = 0; k < d; ++k) {
            lhs += ri.a[k] * z[k];
            scale = std::max(scale, std::abs(ri.a[k]) * std::max(std::abs(lo[k]), std::abs(hi[k])));
        }
        if (lhs <= ri.b + eps * std::max(1.0, scale)) continue;

        // optimum lies on a.z = b; eliminate the variable with the largest coefficient
        int piv = 0;
        for (int k = 1; k < d; ++k)
            if (std::abs(ri.a[k]) > std::abs(ri.a[piv])) piv = k;
        if (std::abs(ri.a[piv]) < 1e-14) return false;
        const double inv = 1.0 / ri.a[piv];
        std::array<double, 2> beta{};  // z_piv = alpha + sum_j beta_j * y_j
        const double alpha = ri.b * inv;
        int keep[2], nk = 0;
        for (int k = 0; k < d; ++k)
            if (k != piv) keep[nk++] = k;
        for (int j = 0; j < d - 1; ++j) beta[j] = -ri.a[keep[j]] * inv;

        std::vector<LpRow> red;
        red.reserve(i + 2);
        auto reduce_row = [&](const LpRow& r) {
            LpRow q{};
            for (int j = 0; j < d - 1; ++j) q.a[j] = r.a[keep[j]] + r.a[piv] * beta[j];
            q.b = r.b - r.a[piv] * alpha;
            red.push_back(q);
        };
        for (std::size_t t = 0; t < i; ++t) reduce_row(rows[t]);
        {
            LpRow up{}, dn{};  // box bounds of the eliminated variable
            for (int j = 0; j < d - 1; ++j) { up.a[j] = beta[j]; dn.a[j] = -beta[j]; }
            up.b = hi[piv] - alpha;
            dn.b = alpha - lo[piv];
            red.push_back(up);
            red.push_back(dn);
        }
        std::array<double, 3> rlo{}, rhi{}, rc{}, rz{};
        for (int j = 0; j < d - 1; ++j) {
            rlo[j] = lo[keep[j]];
            rhi[j] = hi[keep[j]];
            rc[j] = c[keep[j]] + c[piv] * beta[j];
        }
        if (!lp_max(d - 1, red, rlo, rhi, rc, rz)) return false;
        double zp = alpha;
        for (int j = 0; j < d - 1; ++j) {
            z[keep[j]] = rz[j];
            zp += beta[j] * rz[j];
        }
        z[piv] = zp;
    }
    return true;
}

/// Clip a convex polygon by the halfplane a.p <= b (Sutherland-Hodgman).
inline void clip_halfplane(std::vector<Vec2>& poly, Vec2 a, double b) {
    if (poly.empty()) return;
    std::vector<Vec2> out;
    out.reserve(poly.size() + 1);
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = poly[i], q = poly[(i + 1) % n];
        const double fp = dot(a, p) - b, fq = dot(a, q) - b;
        if (fp <= 0) out.push_back(p);
        if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
            const double t = fp / (fp - fq);
            out.push_back(p + (q - p) * t);
        }
    }
    poly.swap(out);
}

}  // namespace detail

/// Chebyshev disk: the largest disk inscribed in a polygon, solved as the
/// 3-variable LP  max r  s.t.  n_i . c + r <= h_i  over the edge constraints.
/// Ties between optimal centers resolve to the lexicographically smallest.
inline Ball2 inradius(const ConvexBody2& K) {
    if (!K.is_polygon())
        throw degenerate_body("inradius: body has empty interior");
    const auto& v = K.vertices();
    const std::size_t n = v.size();

    std::vector<detail::LpRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e = v[(i + 1) % n] - v[i];
        const double len = norm(e);
        const Vec2 nrm{e.y / len, -e.x / len};
        rows[i] = {{nrm.x, nrm.y, 1.0}, dot(nrm, v[i])};
    }
    SplitMix64 rng(0xC0FFEEull ^ (std::uint64_t)n);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(rows[i], rows[rng.below(i + 1)]);

    double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
    for (const Vec2& p : v) {
        xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
    }
    const double diag = std::hypot(xmax - xmin, ymax - ymin);
    const std::array<double, 3> lo{xmin, ymin, 0.0}, hi{xmax, ymax, diag};
    const std::array<double, 3> c{0.0, 0.0, 1.0};
    std::array<double, 3> z{};
    if (!detail::lp_max(3, rows, lo, hi, c, z))
        throw std::logic_error("inradius: infeasible LP on a valid polygon");
    const double r = z[2];

    // Optimal-center set: the inward offset at depth r; take its lex-min vertex.
    std::vector<Vec2> region{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
    const double slack = 1e-12 * std::max(1.0, diag);
    for (std::size_t i = 0; i < n && !region.empty(); ++i)
        detail::clip_halfplane(region, {rows[i].a[0], rows[i].a[1]}, rows[i].b - r + slack);
    Vec2 center{z[0], z[1]};
    if (!region.empty()) {
        center = region[0];
        for (const Vec2& p : region)
            if (lex_less(p, center)) center = p;
    }
    return {center, r};
}

/// Largest radius of an origin-centered ball inside K (0 for degenerate bodies).
inline double inradius_origin(const ConvexBody2& K) {
    if (!K.is_polygon()) return 0.0;
    const auto& v = K.vertices();
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Vec2 e = v[(i + 1) % n] - v[i];
        const double len = norm(e);
        r = std::min(r, (e.y * v[i].x - e.x * v[i].y) / len);
    }
    return std::max(0.0, r);
}

// ---------------------------------------------------------------------------
// Containment predicates with hausdorff_tol slack.

/// ball subset of K?
inline bool contains_ball(const ConvexBody2& K, const Ball2& ball, const Tolerances& tol = {}) {
    const double slack = tol.hausdorff_tol;
    if (!K.is_polygon()) {
        if (ball.radius > slack) return false;
        if (K.is_point()) return dist(ball.center, K.vertices()[0]) <= slack;
        const Vec2 a = K.vertices()[0], b = K.vertices()[1];
        const Vec2 e = b - a;
        const double t = std::clamp(dot(ball.center - a, e) / norm2(e), 0.0, 1.0);
        return dist(ball.center, a + e * t) <= slack;
    }
    const auto& v = K.vertices();
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Vec2 e = v[(i + 1) % n] - v[i];
        const double len = norm(e);
        const double signed_dist = (e.x * (ball.center.y - v[i].y) - e.y * (ball.center.x - v[i].x)) / len;
        // signed_dist > 0 inside (CCW); need >= radius - slack
        if (signed_dist < ball.radius - slack) return false;
    }
    return true;
}

/// K subset of ball?
inline bool in_ball(const ConvexBody2& K, const Ball2& ball, const Tolerances& tol = {}) {
    for (const Vec2& p : K.vertices())
        if (dist(p, ball.center) > ball.radius + tol.hausdorff_tol) return false;
    return true;
}

}  // namespace steiner
