#pragma once

// Binary occupancy grids in 2-D and 3-D: the brute-force oracle for the exact
// kernel and an approximate symmetrizer for arbitrary compact sets.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "steiner/geom2d.hpp"

namespace steiner {

/// Occupancy grid over the cube [-extent, extent]^dim with `resolution`
/// cells per axis (a power of two).
class GridBody {
  public:
    GridBody(int dim, int resolution, double extent)
        : dim_(dim), res_(resolution), extent_(extent) {
        if (dim != 2 && dim != 3) throw invalid_input("GridBody: dim must be 2 or 3");
        if (resolution < 2 || (resolution & (resolution - 1)) != 0)
            throw invalid_input("GridBody: resolution must be a power of two >= 2");
        if (!(extent > 0)) throw invalid_input("GridBody: extent must be positive");
        std::size_t cells = 1;
        for (int d = 0; d < dim; ++d) cells *= static_cast<std::size_t>(res_);
        bits_.assign((cells + 63) / 64, 0);
        cells_ = cells;
    }

    int dim() const { return dim_; }
    int resolution() const { return res_; }
    double extent() const { return extent_; }
    double cell_size() const { return 2.0 * extent_ / res_; }
    std::size_t cell_count() const { return cells_; }

    std::size_t index(int x, int y, int z = 0) const {
        return (static_cast<std::size_t>(z) * res_ + y) * res_ + x;
    }

    bool get(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        if (v) bits_[i >> 6] |= (1ull << (i & 63));
        else bits_[i >> 6] &= ~(1ull << (i & 63));
    }
    bool get(int x, int y, int z = 0) const { return get(index(x, y, z)); }
    void set(int x, int y, int z, bool v) { set(index(x, y, z), v); }

    /// World coordinate of the cell center along one axis.
    double center(int i) const { return -extent_ + (i + 0.5) * cell_size(); }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (std::uint64_t w : bits_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    const std::vector<std::uint64_t>& words() const { return bits_; }
    std::vector<std::uint64_t>& words() { return bits_; }

    bool same_geometry(const GridBody& o) const {
        return dim_ == o.dim_ && res_ == o.res_ && extent_ == o.extent_;
    }

  private:
    int dim_, res_;
    double extent_;
    std::size_t cells_;
    std::vector<std::uint64_t> bits_;
};

/// Mark cells whose center satisfies the indicator.
template <class F>
GridBody grid_from_indicator(int dim, int resolution, double extent, F&& indicator) {
    GridBody g(dim, resolution, extent);
    const int res = resolution;
    if (dim == 2) {
        for (int y = 0; y < res; ++y)
            for (int x = 0; x < res; ++x)
                if (indicator(std::array<double, 3>{g.center(x), g.center(y), 0.0}))
                    g.set(x, y, 0, true);
    } else {
        for (int z = 0; z < res; ++z)
            for (int y = 0; y < res; ++y)
                for (int x = 0; x < res; ++x)
                    if (indicator(std::array<double, 3>{g.center(x), g.center(y), g.center(z)}))
                        g.set(x, y, z, true);
    }
    return g;
}

/// Rasterize a planar body: cell marked iff the cell center lies in K.
inline GridBody rasterize(const ConvexBody2& K, int resolution, double extent,
                          const Tolerances& tol = {}) {
    if (max_vertex_norm(K) >= extent)
        throw invalid_input("rasterize: body exceeds the grid extent");
    GridBody g(2, resolution, extent);
    const auto& v = K.vertices();
    const std::size_t n = v.size();
    if (K.is_polygon()) {
        for (int y = 0; y < resolution; ++y) {
            const double cy = g.center(y);
            double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2 a = v[i], b = v[(i + 1) % n];
                if ((a.y - cy) * (b.y - cy) <= 0 && a.y != b.y) {
                    const double x = a.x + (b.x - a.x) * (cy - a.y) / (b.y - a.y);
                    xlo = std::min(xlo, x);
                    xhi = std::max(xhi, x);
                }
                if (a.y == cy && b.y == cy) {
                    xlo = std::min({xlo, a.x, b.x});
                    xhi = std::max({xhi, a.x, b.x});
                }
            }
            if (!(xlo <= xhi)) continue;
            const double h = g.cell_size();
            int x0 = static_cast<int>(std::ceil((xlo + extent) / h - 0.5));
            int x1 = static_cast<int>(std::floor((xhi + extent) / h - 0.5));
            x0 = std::max(x0, 0);
            x1 = std::min(x1, resolution - 1);
            for (int x = x0; x <= x1; ++x) g.set(x, y, 0, true);
        }
        return g;
    }
    // lower-dimensional bodies occupy only cells whose center lies on them
    for (int y = 0; y < resolution; ++y)
        for (int x = 0; x < resolution; ++x) {
            const Vec2 c{g.center(x), g.center(y)};
            bool in = false;
            if (K.is_point()) {
                in = dist(c, v[0]) <= tol.vertex_tol;
            } else {
                const Vec2 e = v[1] - v[0];
                const double t = std::clamp(dot(c - v[0], e) / norm2(e), 0.0, 1.0);
                in = dist(c, v[0] + e * t) <= tol.vertex_tol;
            }
            if (in) g.set(x, y, 0, true);
        }
    return g;
}

inline double grid_area(const GridBody& g) {
    if (g.popcount() == 0) throw invalid_input("grid_area: empty grid");
    double cell = g.cell_size();
    double measure = cell * cell;
    if (g.dim() == 3) measure *= cell;
    return static_cast<double>(g.popcount()) * measure;
}

namespace detail {

/// Balance one digital line: re-emit k occupied cells centered on t = 0.
/// `ts` are the running-coordinate values of the line's cells (affine in the
/// slot index), `occ` the occupancy per slot.
inline void balance_line(std::vector<char>& occ, const std::vector<double>& ts) {
    const int len = static_cast<int>(occ.size());
    int k = 0;
    for (char c : occ) k += c;
    if (k == 0) return;
    // slot where t crosses zero (ts is affine and increasing)
    const double t0 = ts.front(), t1 = ts.back();
    double j0;
    if (t1 == t0) j0 = 0.5 * (len - 1);
    else j0 = (0.0 - t0) / (t1 - t0) * (len - 1);
    int start = static_cast<int>(std::lround(j0 - 0.5 * (k - 1)));
    start = std::clamp(start, 0, len - k);
    std::fill(occ.begin(), occ.end(), char(0));
    for (int j = start; j < start + k; ++j) occ[static_cast<std::size_t>(j)] = 1;
}

}  // namespace detail

/// Axis-aligned grid symmetrization: chords run along `axis`; each column's
/// occupied cells are re-emitted centered on the mid-plane. Exactly preserves
/// the per-column cell count.
inline GridBody grid_steiner_axis(const GridBody& g, int axis) {
    if (axis < 0 || axis >= g.dim()) throw invalid_input("grid_steiner_axis: bad axis");
    const int res = g.resolution();
    GridBody out(g.dim(), res, g.extent());
    std::vector<char> occ(static_cast<std::size_t>(res));
    std::vector<double> ts(static_cast<std::size_t>(res));
    for (int j = 0; j < res; ++j) ts[static_cast<std::size_t>(j)] = g.center(j);
    const int zmax = g.dim() == 3 ? res : 1;
    auto cell_of = [&](int a, int b, int c) {
        // (a, b, c) with `a` running along `axis`
        int xyz[3];
        xyz[axis] = a;
        int others[2], no = 0;
        for (int d = 0; d < 3; ++d)
            if (d != axis && no < 2) others[no++] = d;
        xyz[others[0]] = b;
        xyz[others[1]] = c;
        return std::array<int, 3>{xyz[0], xyz[1], xyz[2]};
    };
    for (int c = 0; c < (g.dim() == 3 ? zmax : 1); ++c)
        for (int b = 0; b < res; ++b) {
            for (int a = 0; a < res; ++a) {
                auto q = cell_of(a, b, c);
                occ[static_cast<std::size_t>(a)] = g.get(q[0], q[1], q[2]) ? 1 : 0;
            }
            detail::balance_line(occ, ts);
            for (int a = 0; a < res; ++a) {
                auto q = cell_of(a, b, c);
                out.set(q[0], q[1], q[2], occ[static_cast<std::size_t>(a)] != 0);
            }
        }
    return out;
}

/// 2-D grid symmetrization along an arbitrary direction. The grid is sliced
/// into digital lines parallel to u (one cell per transverse index, shifted
/// by the rounded shear), and each line's occupied cells are re-centered on
/// u^perp. Count-preserving per line; no resampling.
inline GridBody grid_steiner(const GridBody& g, const Direction& u0) {
    if (g.dim() != 2) throw invalid_input("grid_steiner: direction form is 2-D only");
    Direction u = u0;
    if (u.theta >= std::numbers::pi) u = Direction::from_angle(u.theta - std::numbers::pi);
    const int res = g.resolution();
    const bool steep = std::abs(u.uy) >= std::abs(u.ux);  // chords closer to vertical
    const double slope = steep ? u.ux / u.uy : u.uy / u.ux;

    GridBody out(2, res, g.extent());
    // lines indexed by ell = i - round(slope * j), where j runs along the
    // chord axis and i across it
    const int lmin = slope > 0 ? -static_cast<int>(std::lround(slope * (res - 1))) - 1 : 0;
    const int lmax = slope > 0 ? res - 1 : res - 1 - static_cast<int>(std::lround(slope * (res - 1)));
    std::vector<char> occ;
    std::vector<double> ts;
    std::vector<int> ij;
    for (int ell = lmin; ell <= lmax + 1; ++ell) {
        occ.clear();
        ts.clear();
        ij.clear();
        for (int j = 0; j < res; ++j) {
            const int i = ell + static_cast<int>(std::lround(slope * j));
            if (i < 0 || i >= res) continue;
            const double wx = steep ? g.center(i) : g.center(j);
            const double wy = steep ? g.center(j) : g.center(i);
            ij.push_back((j << 16) | i);
            ts.push_back(wx * u.ux + wy * u.uy);
            occ.push_back((steep ? g.get(i, j, 0) : g.get(j, i, 0)) ? 1 : 0);
        }
        if (occ.empty()) continue;
        detail::balance_line(occ, ts);
        for (std::size_t s = 0; s < occ.size(); ++s) {
            if (!occ[s]) continue;
            const int j = ij[s] >> 16, i = ij[s] & 0xFFFF;
            if (steep) out.set(i, j, 0, true);
            else out.set(j, i, 0, true);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact Euclidean distance transform (squared), dimension-separable.

namespace detail {

// Finite stand-in for "unoccupied" seeds: far above any realizable squared
// cell distance, small enough that parabola intersections stay exact.
inline constexpr double kDtFar = 1e12;

inline void dt_1d(std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                  std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    int k = 0;
    v[0] = 0;
    z[0] = -kDtFar;
    z[1] = kDtFar;
    for (int q = 1; q < n; ++q) {
        double s;
        for (;;) {
            s = ((f[q] + q * (double)q) - (f[v[k]] + v[k] * (double)v[k])) / (2.0 * (q - v[k]));
            if (s <= z[k]) --k;
            else break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kDtFar;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double dq = q - (double)v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

inline std::vector<double> squared_edt(const GridBody& g) {
    const int res = g.resolution();
    const std::size_t cells = g.cell_count();
    std::vector<double> dist(cells);
    for (std::size_t i = 0; i < cells; ++i) dist[i] = g.get(i) ? 0.0 : kDtFar;
    std::vector<double> f(res), d(res), z(res + 1);
    std::vector<int> v(res);
    const int planes = g.dim() == 3 ? res : 1;
    // along x
    for (int zp = 0; zp < planes; ++zp)
        for (int y = 0; y < res; ++y) {
            for (int x = 0; x < res; ++x) f[x] = dist[g.index(x, y, zp)];
            dt_1d(f, d, v, z);
            for (int x = 0; x < res; ++x) dist[g.index(x, y, zp)] = d[x];
        }
    // along y
    for (int zp = 0; zp < planes; ++zp)
        for (int x = 0; x < res; ++x) {
            for (int y = 0; y < res; ++y) f[y] = dist[g.index(x, y, zp)];
            dt_1d(f, d, v, z);
            for (int y = 0; y < res; ++y) dist[g.index(x, y, zp)] = d[y];
        }
    if (g.dim() == 3) {
        for (int y = 0; y < res; ++y)
            for (int x = 0; x < res; ++x) {
                for (int zz = 0; zz < res; ++zz) f[zz] = dist[g.index(x, y, zz)];
                dt_1d(f, d, v, z);
                for (int zz = 0; zz < res; ++zz) dist[g.index(x, y, zz)] = d[zz];
            }
    }
    return dist;
}

}  // namespace detail

/// Symmetric Hausdorff distance between the occupied sets, in world units,
/// via two exact Euclidean distance transforms.
inline double grid_hausdorff(const GridBody& a, const GridBody& b) {
    if (!a.same_geometry(b)) throw invalid_input("grid_hausdorff: mismatched grids");
    if (a.popcount() == 0 || b.popcount() == 0)
        throw invalid_input("grid_hausdorff: empty grid");
    const std::vector<double> da = detail::squared_edt(a);
    const std::vector<double> db = detail::squared_edt(b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.cell_count(); ++i) {
        if (a.get(i)) worst = std::max(worst, db[i]);
        if (b.get(i)) worst = std::max(worst, da[i]);
    }
    return std::sqrt(worst) * a.cell_size();
}

}  // namespace steiner
