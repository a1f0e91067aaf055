#pragma once

// Static SVG snapshots: one body per file, fixed square viewBox.

#include <fstream>
#include <string>

#include "steiner/geom2d.hpp"

namespace steiner {

/// Write the body as a single SVG. `view_radius` fixes the viewBox to
/// [-R, R]^2 so a snapshot series keeps a stable frame.
inline void save_svg(const std::string& path, const ConvexBody2& K, double view_radius) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write svg file: " + path);
    const double R = view_radius > 0 ? view_radius : 1.0;
    const double sw = R / 200.0;  // stroke width in world units
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\""
        << -R << " " << -R << " " << 2 * R << " " << 2 * R << "\">\n";
    out << "  <rect x=\"" << -R << "\" y=\"" << -R << "\" width=\"" << 2 * R << "\" height=\""
        << 2 * R << "\" fill=\"white\"/>\n";
    // flip y so the mathematical orientation points up
    out << "  <g transform=\"scale(1,-1)\">\n";
    const auto& v = K.vertices();
    switch (K.kind()) {
        case ConvexBody2::Kind::Point:
            out << "    <circle cx=\"" << v[0].x << "\" cy=\"" << v[0].y << "\" r=\"" << 2 * sw
                << "\" fill=\"#1f77b4\"/>\n";
            break;
        case ConvexBody2::Kind::Segment:
            out << "    <line x1=\"" << v[0].x << "\" y1=\"" << v[0].y << "\" x2=\"" << v[1].x
                << "\" y2=\"" << v[1].y << "\" stroke=\"#1f77b4\" stroke-width=\"" << sw
                << "\"/>\n";
            break;
        case ConvexBody2::Kind::Polygon: {
            out << "    <polygon points=\"";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out << " ";
                out << v[i].x << "," << v[i].y;
            }
            out << "\" fill=\"#aec7e8\" stroke=\"#1f77b4\" stroke-width=\"" << sw << "\"/>\n";
            break;
        }
    }
    out << "  </g>\n</svg>\n";
}

}  // namespace steiner
