#pragma once

// JSON forms for bodies, schedules, and run traces. Trace serialization is
// hand-rolled with fixed key order and %.17g floats so that identical runs
// produce byte-identical output.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "steiner/process.hpp"
#include "steiner/raster.hpp"

namespace steiner {

inline std::string fmt_double(double x) {
    if (std::isnan(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Body JSON: {"type":"polygon","vertices":[[x,y],...]} |
//            {"type":"segment","a":[x,y],"b":[x,y]} |
//            {"type":"point","p":[x,y]}

inline nlohmann::json body_to_json(const ConvexBody2& K) {
    nlohmann::json j;
    const auto& v = K.vertices();
    switch (K.kind()) {
        case ConvexBody2::Kind::Point:
            j["type"] = "point";
            j["p"] = {v[0].x, v[0].y};
            break;
        case ConvexBody2::Kind::Segment:
            j["type"] = "segment";
            j["a"] = {v[0].x, v[0].y};
            j["b"] = {v[1].x, v[1].y};
            break;
        case ConvexBody2::Kind::Polygon: {
            j["type"] = "polygon";
            nlohmann::json verts = nlohmann::json::array();
            for (const Vec2& p : v) verts.push_back({p.x, p.y});
            j["vertices"] = std::move(verts);
            break;
        }
    }
    return j;
}

inline Vec2 parse_vec2(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw invalid_input("body JSON: expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ConvexBody2 body_from_json(const nlohmann::json& j, const Tolerances& tol = {}) {
    if (!j.is_object() || !j.contains("type"))
        throw invalid_input("body JSON: missing \"type\"");
    const std::string type = j["type"].get<std::string>();
    if (type == "point") return ConvexBody2::point(parse_vec2(j.at("p")));
    if (type == "segment")
        return ConvexBody2::segment(parse_vec2(j.at("a")), parse_vec2(j.at("b")), tol);
    if (type == "polygon") {
        std::vector<Vec2> verts;
        for (const auto& e : j.at("vertices")) verts.push_back(parse_vec2(e));
        ConvexBody2 K = normalize(verts, tol);
        return K;
    }
    throw invalid_input("body JSON: unknown type \"" + type + "\"");
}

inline ConvexBody2 load_body(const std::string& path, const Tolerances& tol = {}) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open body file: " + path);
    nlohmann::json j;
    in >> j;
    return body_from_json(j, tol);
}

inline void save_body(const std::string& path, const ConvexBody2& K) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write body file: " + path);
    out << body_to_json(K).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Trace JSONL. First record carries run metadata, then one record per
// iteration in fixed key order, then the final verdict record.

inline const char* schedule_kind_name(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::Periodic: return "periodic";
        case ScheduleKind::Random: return "random";
        case ScheduleKind::Explicit: return "explicit";
    }
    return "?";
}

inline std::string trace_meta_line(const Schedule& schedule, const RunConfig& config) {
    std::ostringstream os;
    os << "{\"type\":\"meta\",\"version\":\"0.1.0\",\"rng\":\"splitmix64\"";
    os << ",\"schedule\":{\"kind\":\"" << schedule_kind_name(schedule.kind()) << "\"";
    os << ",\"angles_deg\":[";
    for (std::size_t i = 0; i < schedule.dirs().size(); ++i) {
        if (i) os << ",";
        os << fmt_double(schedule.dirs()[i].theta * 180.0 / std::numbers::pi);
    }
    os << "]";
    if (schedule.kind() == ScheduleKind::Random) {
        os << ",\"weights\":[";
        for (std::size_t i = 0; i < schedule.weights().size(); ++i) {
            if (i) os << ",";
            os << fmt_double(schedule.weights()[i]);
        }
        os << "],\"seed\":" << schedule.seed();
    }
    if (schedule.kind() == ScheduleKind::Explicit)
        os << ",\"length\":" << schedule.indices().size();
    os << "}";
    os << ",\"eps\":" << fmt_double(config.eps);
    os << ",\"max_iters\":" << config.max_iters;
    os << ",\"window\":" << (config.window > 0 ? config.window
                                               : static_cast<long>(schedule.dirs().size()));
    os << ",\"seed\":" << config.seed;
    os << ",\"metrics\":\"" << (config.metrics == MetricsLevel::Full ? "full" : "light") << "\"";
    os << ",\"tolerances\":{\"vertex_tol\":" << fmt_double(config.tol.vertex_tol)
       << ",\"area_tol\":" << fmt_double(config.tol.area_tol)
       << ",\"hausdorff_tol\":" << fmt_double(config.tol.hausdorff_tol)
       << ",\"quadrature_tol\":" << fmt_double(config.tol.quadrature_tol) << "}}";
    return os.str();
}

inline std::string trace_record_line(const IterationRecord& r) {
    std::ostringstream os;
    os << "{\"type\":\"iter\",\"iter\":" << r.iter << ",\"dir\":" << r.direction_index
       << ",\"area\":" << fmt_double(r.area) << ",\"perimeter\":" << fmt_double(r.perimeter)
       << ",\"mean_width\":" << fmt_double(r.mean_width) << ",\"omega\":" << fmt_double(r.omega)
       << ",\"inradius\":" << fmt_double(r.inradius)
       << ",\"circumradius\":" << fmt_double(r.circumradius)
       << ",\"diameter\":" << fmt_double(r.diameter)
       << ",\"max_vertex_norm\":" << fmt_double(r.max_vertex_norm)
       << ",\"hausdorff_step\":" << fmt_double(r.hausdorff_step)
       << ",\"fixpoint_residual\":" << fmt_double(r.fixpoint_residual)
       << ",\"prune_area_cum\":" << fmt_double(r.prune_area_cum) << "}";
    return os.str();
}

inline std::string trace_final_line(const ProcessTrace& t) {
    std::ostringstream os;
    os << "{\"type\":\"final\",\"verdict\":\""
       << (t.verdict == Verdict::Converged ? "converged" : "max_iters")
       << "\",\"iterations\":" << t.iterations
       << ",\"final_residual\":" << fmt_double(t.final_residual)
       << ",\"body\":" << body_to_json(t.final_body).dump() << "}";
    return os.str();
}

inline std::string trace_to_jsonl(const ProcessTrace& t, const Schedule& schedule,
                                  const RunConfig& config) {
    std::ostringstream os;
    os << trace_meta_line(schedule, config) << "\n";
    for (const IterationRecord& r : t.records) os << trace_record_line(r) << "\n";
    os << trace_final_line(t) << "\n";
    return os.str();
}

inline void save_trace_jsonl(const std::string& path, const ProcessTrace& t,
                             const Schedule& schedule, const RunConfig& config) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write trace file: " + path);
    out << trace_to_jsonl(t, schedule, config);
}

inline std::string trace_csv_header() {
    return "iter,dir,area,perimeter,mean_width,omega,inradius,circumradius,diameter,"
           "max_vertex_norm,hausdorff_step,fixpoint_residual,prune_area_cum";
}

inline std::string trace_csv_row(const IterationRecord& r) {
    std::ostringstream os;
    auto cell = [](double x) { return std::isnan(x) ? std::string() : fmt_double(x); };
    os << r.iter << "," << r.direction_index << "," << cell(r.area) << "," << cell(r.perimeter)
       << "," << cell(r.mean_width) << "," << cell(r.omega) << "," << cell(r.inradius) << ","
       << cell(r.circumradius) << "," << cell(r.diameter) << "," << cell(r.max_vertex_norm) << ","
       << cell(r.hausdorff_step) << "," << cell(r.fixpoint_residual) << ","
       << cell(r.prune_area_cum);
    return os.str();
}

inline void save_trace_csv(const std::string& path, const ProcessTrace& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write csv file: " + path);
    out << trace_csv_header() << "\n";
    for (const IterationRecord& r : t.records) out << trace_csv_row(r) << "\n";
}

// ---------------------------------------------------------------------------
// Grid raw format: packed little-endian bitset (LSB-first within each byte,
// linear cell index (z * res + y) * res + x) plus a JSON sidecar.

inline void save_grid_raw(const std::string& path, const GridBody& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write grid file: " + path);
    const std::size_t nbytes = (g.cell_count() + 7) / 8;
    std::vector<unsigned char> bytes(nbytes, 0);
    for (std::size_t i = 0; i < g.cell_count(); ++i)
        if (g.get(i)) bytes[i >> 3] |= static_cast<unsigned char>(1u << (i & 7));
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    nlohmann::json side;
    side["dim"] = g.dim();
    side["resolution"] = g.resolution();
    side["extent"] = g.extent();
    std::ofstream sc(path + ".json");
    if (!sc) throw invalid_input("cannot write grid sidecar: " + path + ".json");
    sc << side.dump(2) << "\n";
}

inline GridBody load_grid_raw(const std::string& path) {
    std::ifstream sc(path + ".json");
    if (!sc) throw invalid_input("cannot open grid sidecar: " + path + ".json");
    nlohmann::json side;
    sc >> side;
    GridBody g(side.at("dim").get<int>(), side.at("resolution").get<int>(),
               side.at("extent").get<double>());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open grid file: " + path);
    const std::size_t nbytes = (g.cell_count() + 7) / 8;
    std::vector<unsigned char> bytes(nbytes);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(nbytes));
    if (static_cast<std::size_t>(in.gcount()) != nbytes)
        throw invalid_input("grid file truncated: " + path);
    for (std::size_t i = 0; i < g.cell_count(); ++i)
        if ((bytes[i >> 3] >> (i & 7)) & 1) g.set(i, true);
    return g;
}

// PGM (P5, binary, maxval 255): 2-D grids only; row 0 of the image is the
// top of the grid (largest y).

inline void save_grid_pgm(const std::string& path, const GridBody& g) {
    if (g.dim() != 2) throw invalid_input("PGM export is 2-D only");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write pgm file: " + path);
    const int res = g.resolution();
    out << "P5\n" << res << " " << res << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(res));
    for (int y = res - 1; y >= 0; --y) {
        for (int x = 0; x < res; ++x)
            row[static_cast<std::size_t>(x)] = g.get(x, y, 0) ? 255 : 0;
        out.write(reinterpret_cast<const char*>(row.data()), res);
    }
}

inline GridBody load_grid_pgm(const std::string& path, double extent) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open pgm file: " + path);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    if (magic != "P5" || w != h || maxval != 255)
        throw invalid_input("unsupported pgm (need square P5 maxval 255): " + path);
    in.get();  // single whitespace after the header
    GridBody g(2, w, extent);
    std::vector<unsigned char> row(static_cast<std::size_t>(w));
    for (int y = h - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(row.data()), w);
        if (in.gcount() != w) throw invalid_input("pgm file truncated: " + path);
        for (int x = 0; x < w; ++x)
            if (row[static_cast<std::size_t>(x)] >= 128) g.set(x, y, 0, true);
    }
    return g;
}

}  // namespace steiner
