#pragma once

// The layering functional, mixed areas, and polygon/disk clipping.

#include <cmath>

#include "steiner/geom2d.hpp"

namespace steiner {

/// Value of the layering integral together with the quadrature error bound
/// actually achieved.
struct OmegaValue {
    double value = 0.0;
    double abs_error_bound = 0.0;
};

namespace detail {

/// Signed area of triangle(0, a, b) intersected with the origin disk of
/// radius r. Straight sub-chords inside the disk contribute cross/2,
/// sub-chords outside contribute circular sectors.
inline double tri_disk_area(Vec2 a, Vec2 b, double r) {
    const double cr = cross(a, b);
    if (cr == 0.0) return 0.0;
    const double r2 = r * r;
    const Vec2 e = b - a;
    // knots: segment endpoints plus circle crossings
    double ts[4] = {0.0, 1.0, 1.0, 1.0};
    int nt = 2;
    const double A = norm2(e), B = 2.0 * dot(a, e), C = norm2(a) - r2;
    const double disc = B * B - 4 * A * C;
    if (disc > 0 && A > 0) {
        const double sq = std::sqrt(disc);
        for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
            if (t > 0.0 && t < 1.0) ts[nt++] = t;
        std::sort(ts, ts + nt);
    }
    double total = 0.0;
    for (int i = 0; i + 1 < nt; ++i) {
        const double t0 = ts[i], t1 = ts[i + 1];
        if (t1 <= t0) continue;
        const Vec2 p = a + e * t0, q = a + e * t1;
        const Vec2 mid = a + e * (0.5 * (t0 + t1));
        if (norm2(mid) < r2) {
            total += 0.5 * cross(p, q);
        } else {
            total += 0.5 * r2 * std::atan2(cross(p, q), dot(p, q));
        }
    }
    return total;
}

struct QuadAccum {
    double value = 0.0;
    double err = 0.0;
};

template <class F>
void adaptive_simpson(const F& f, double a, double fa, double m, double fm, double b, double fb,
                      double whole, double tol, int depth, QuadAccum& acc) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4 * flm + fm);
    const double right = h6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        acc.value += left + right + delta / 15.0;
        acc.err += std::abs(delta) / 15.0;
        return;
    }
    adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, acc);
    adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, acc);
}

template <class F>
QuadAccum integrate(const F& f, double a, double b, double tol) {
    QuadAccum acc;
    if (!(b > a)) return acc;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, 48, acc);
    return acc;
}

inline constexpr double kSqrtPi = 1.7724538509055160273;

/// g(R) = R^-2 * integral_0^R (sqrt(pi)/2) erfc(rho) rho drho; smooth,
/// bounded by sqrt(pi)/4, with g(0) = sqrt(pi)/4.
inline double layer_kernel(double R) {
    if (R < 1e-3) {
        return kSqrtPi / 4.0 - R / 3.0 + R * R * R / 15.0;
    }
    const double er = std::erf(R);
    const double ec = 1.0 - er;
    const double G2 = kSqrtPi / 4.0 * R * R * ec + kSqrtPi / 8.0 * er -
                      0.25 * R * std::exp(-R * R);
    return G2 / (R * R);
}

}  // namespace detail

/// Exact area of K intersected with the origin-centered disk of radius r.
inline double disk_intersection_area(const ConvexBody2& K, double r, const Tolerances& = {}) {
    if (!(r >= 0)) throw invalid_input("disk_intersection_area: negative radius");
    if (!K.is_polygon() || r == 0.0) return 0.0;
    const auto& v = K.vertices();
    double total = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i)
        total += detail::tri_disk_area(v[i], v[(i + 1) % n], r);
    return std::max(0.0, total);
}

/// Layering integral over radii: integral_0^inf V(K cap rB) e^{-r^2} dr.
/// Adaptive Simpson on [0, R], where R is the farthest vertex from the
/// origin; beyond R the integrand is area(K) e^{-r^2}, integrated in closed
/// form through erfc. Vanishes on bodies with empty interior.
inline OmegaValue omega(const ConvexBody2& K, const Tolerances& tol = {}) {
    if (!K.is_polygon()) return {0.0, 0.0};
    const double R = max_vertex_norm(K);
    const double a = area(K);
    auto f = [&](double r) { return disk_intersection_area(K, r) * std::exp(-r * r); };
    detail::QuadAccum acc = detail::integrate(f, 0.0, R, 0.5 * tol.quadrature_tol);
    const double tail = a * (detail::kSqrtPi / 2.0) * std::erfc(R);
    return {acc.value + tail, acc.err + 1e-16 * a};
}

/// Same functional, evaluated as the body integral of a radial kernel over
/// the origin fan (per-edge one-dimensional quadrature). Agrees with omega()
/// within the combined error bounds and is much cheaper on large polygons.
inline OmegaValue omega_fan(const ConvexBody2& K, const Tolerances& tol = {}) {
    if (!K.is_polygon()) return {0.0, 0.0};
    const auto& v = K.vertices();
    const std::size_t n = v.size();
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        weight_sum += std::abs(cross(v[i], v[(i + 1) % n]));
    if (weight_sum == 0.0) return {0.0, 0.0};
    OmegaValue out;
    const double budget = 0.5 * tol.quadrature_tol;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % n];
        const double w = cross(a, b);
        if (w == 0.0) continue;
        const Vec2 e = b - a;
        auto f = [&](double t) { return detail::layer_kernel(norm(a + e * t)); };
        detail::QuadAccum acc = detail::integrate(f, 0.0, 1.0, budget / weight_sum);
        out.value += w * acc.value;
        out.abs_error_bound += std::abs(w) * acc.err;
    }
    out.value = std::max(0.0, out.value);
    return out;
}

/// Mixed area V_{1,1}(K, L): for polygonal K the edge formula
/// 2 V = sum over edges of h_L(outward normal) * edge length; for degenerate
/// K the polarization (area(K+L) - area(K) - area(L)) / 2.
inline double mixed_area(const ConvexBody2& K, const ConvexBody2& L, const Tolerances& tol = {}) {
    if (!K.is_polygon())
        return 0.5 * (area(minkowski_sum(K, L, tol)) - area(K) - area(L));
    const auto& v = K.vertices();
    double s = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Vec2 e = v[(i + 1) % n] - v[i];
        s += support(L, Vec2{e.y, -e.x});  // unnormalized normal carries the edge length
    }
    return 0.5 * s;
}

}  // namespace steiner
