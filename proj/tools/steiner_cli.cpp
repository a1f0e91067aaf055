// Command-line laboratory: run symmetrization schedules, sweep convergence
// rates, and run the verification suites headlessly.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "steiner/generators.hpp"
#include "steiner/json_io.hpp"
#include "steiner/process.hpp"
#include "steiner/raster.hpp"
#include "steiner/svg.hpp"
#include "steiner/verify.hpp"

namespace {

using namespace steiner;

int log_level() {
    static int level = [] {
        const char* v = std::getenv("STEINER_LOG");
        if (!v) return 1;
        const std::string s(v);
        if (s == "error") return 0;
        if (s == "debug") return 2;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[debug] " << msg << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    if (s.empty()) return out;
    for (const std::string& tok : split(s, ',')) out.push_back(std::stod(tok));
    return out;
}

ConvexBody2 make_body(const std::string& generate, const std::string& input,
                      const Tolerances& tol) {
    if (!input.empty()) return load_body(input, tol);
    if (generate.empty()) throw invalid_input("need --input or --generate");
    const auto head = generate.find(':');
    const std::string kind = generate.substr(0, head);
    const std::string rest = head == std::string::npos ? "" : generate.substr(head + 1);
    if (kind == "regular") return regular_polygon(std::stoi(rest));
    if (kind == "random") {
        const auto parts = split(rest, ',');
        if (parts.size() != 2) throw invalid_input("--generate random:k,seed");
        return random_polygon(std::stoi(parts[0]),
                              static_cast<std::uint64_t>(std::stoull(parts[1])));
    }
    if (kind == "segment") return segment_body(std::stod(rest));
    if (kind == "triangle") {
        if (rest.empty() || rest == "right") return right_triangle();
        if (rest == "equilateral") return regular_polygon(3);
        throw invalid_input("unknown triangle preset: " + rest);
    }
    throw invalid_input("unknown generator: " + generate);
}

std::vector<Direction> dirs_from_degrees(const std::vector<double>& degs) {
    std::vector<Direction> dirs;
    for (double d : degs) dirs.push_back(Direction::from_degrees(d));
    return dirs;
}

Schedule make_schedule(const std::string& spec) {
    const auto head = spec.find(':');
    if (head == std::string::npos) throw invalid_input("bad --schedule: " + spec);
    const std::string kind = spec.substr(0, head);
    const std::string rest = spec.substr(head + 1);
    if (kind == "periodic") return Schedule::periodic(dirs_from_degrees(parse_number_list(rest)));
    if (kind == "random") {
        const auto groups = split(rest, ';');
        if (groups.size() < 1 || groups.size() > 3)
            throw invalid_input("--schedule random:angles[;weights][;seed]");
        std::vector<double> weights;
        std::uint64_t seed = 0;
        if (groups.size() >= 2 && !groups[1].empty()) weights = parse_number_list(groups[1]);
        if (groups.size() == 3 && !groups[2].empty())
            seed = static_cast<std::uint64_t>(std::stoull(groups[2]));
        return Schedule::random(dirs_from_degrees(parse_number_list(groups[0])), weights, seed);
    }
    if (kind == "explicit") {
        if (rest.empty() || rest[0] != '@')
            throw invalid_input("--schedule explicit:@angles.json");
        std::ifstream in(rest.substr(1));
        if (!in) throw invalid_input("cannot open schedule file: " + rest.substr(1));
        nlohmann::json j;
        in >> j;
        if (!j.is_array() || j.empty())
            throw invalid_input("explicit schedule file must be a JSON array of angle degrees");
        std::vector<Direction> dirs;
        std::vector<int> indices;
        for (const auto& e : j) {
            const Direction d = canonical_direction(Direction::from_degrees(e.get<double>()));
            int found = -1;
            for (std::size_t k = 0; k < dirs.size(); ++k) {
                double gap = std::abs(dirs[k].theta - d.theta);
                gap = std::min(gap, std::numbers::pi - gap);
                if (gap <= 1e-12) found = static_cast<int>(k);
            }
            if (found < 0) {
                dirs.push_back(d);
                found = static_cast<int>(dirs.size()) - 1;
            }
            indices.push_back(found);
        }
        return Schedule::explicit_seq(std::move(dirs), std::move(indices));
    }
    throw invalid_input("unknown schedule kind: " + kind);
}

int cmd_run(const std::string& input, const std::string& generate, const std::string& sched_spec,
            double eps, long max_iters, long window, std::uint64_t seed,
            const std::string& trace_path, const std::string& csv_path, long svg_every,
            const std::string& svg_dir, bool oracle_check, bool light) {
    Tolerances tol;
    const ConvexBody2 K = make_body(generate, input, tol);
    const Schedule sched = make_schedule(sched_spec);
    RunConfig cfg;
    cfg.eps = eps;
    cfg.max_iters = max_iters;
    cfg.window = window;
    cfg.seed = seed;
    cfg.metrics = light ? MetricsLevel::Light : MetricsLevel::Full;

    const double view_radius = 1.1 * std::max(1e-6, max_vertex_norm(K));
    ConvexBody2 prev = K;
    long oracle_flags = 0;
    if (svg_every > 0 || oracle_check) {
        if (svg_every > 0 && !svg_dir.empty())
            std::filesystem::create_directories(svg_dir);
        cfg.on_iterate = [&, svg_every, oracle_check](long iter, int dix, const ConvexBody2& B) {
            if (svg_every > 0 && iter % svg_every == 0) {
                char name[64];
                std::snprintf(name, sizeof name, "iter_%06ld.svg", iter);
                save_svg((svg_dir.empty() ? std::string(".") : svg_dir) + "/" + name, B,
                         view_radius);
            }
            if (oracle_check) {
                const Direction u = sched.dirs()[static_cast<std::size_t>(dix)];
                const double extent = 2.0 * view_radius;
                const GridBody approx = grid_steiner(rasterize(prev, 512, extent, tol), u);
                const GridBody exact = rasterize(B, 512, extent, tol);
                const double cell = approx.cell_size();
                const double hd = grid_hausdorff(approx, exact);
                const double da =
                    std::abs(grid_area(approx) - grid_area(exact)) / grid_area(exact);
                if (hd > 4 * cell || da > 0.02) {
                    ++oracle_flags;
                    log_info("oracle check flagged iter " + std::to_string(iter) + ": hd " +
                             fmt_double(hd / cell) + " cells, area " + fmt_double(da));
                }
                prev = B;
            }
        };
    }

    const ProcessTrace tr = run(K, sched, cfg);
    if (svg_every > 0) {
        save_svg((svg_dir.empty() ? std::string(".") : svg_dir) + "/final.svg", tr.final_body,
                 view_radius);
    }
    if (!trace_path.empty()) save_trace_jsonl(trace_path, tr, sched, cfg);
    if (!csv_path.empty()) save_trace_csv(csv_path, tr);
    log_info("verdict: " + std::string(tr.verdict == Verdict::Converged ? "converged"
                                                                        : "max_iters") +
             " after " + std::to_string(tr.iterations) +
             " iterations, residual " + fmt_double(tr.final_residual));
    if (oracle_check) log_info("oracle checks flagged " + std::to_string(oracle_flags) + " steps");
    std::cout << trace_final_line(tr) << "\n";
    return tr.verdict == Verdict::Converged ? 0 : 2;
}

// The three deterministic direction patterns over {u, v, w} whose convergence
// rates the sweep compares, as explicit index prefixes.
std::vector<int> pattern_plain(long len) {
    std::vector<int> ix;
    ix.reserve(static_cast<std::size_t>(len));
    for (long i = 0; i < len; ++i) ix.push_back(static_cast<int>(i % 3));
    return ix;
}

std::vector<int> pattern_uvw_v(long len) {
    std::vector<int> ix;
    for (long block = 1; static_cast<long>(ix.size()) < len; ++block) {
        for (long b = 0; b < block; ++b)
            for (int k = 0; k < 3; ++k) ix.push_back(k);
        ix.push_back(1);
    }
    ix.resize(static_cast<std::size_t>(len));
    return ix;
}

std::vector<int> pattern_uv_blocks_w(long len) {
    std::vector<int> ix = {0, 1, 2};
    for (long block = 2; static_cast<long>(ix.size()) < len; ++block) {
        for (long b = 0; b < block; ++b) {
            ix.push_back(0);
            ix.push_back(1);
        }
        ix.push_back(2);
    }
    ix.resize(static_cast<std::size_t>(len));
    return ix;
}

int cmd_experiment_rates(const std::string& preset, long trials, double eps, long max_iters,
                         std::uint64_t seed, const std::string& weights_csv,
                         const std::string& csv_path) {
    if (preset != "s6-triangle")
        throw invalid_input("unknown preset: " + preset + " (available: s6-triangle)");
    const ConvexBody2 K = right_triangle();
    const std::vector<Direction> dirs = {Direction::from_degrees(90), Direction::from_degrees(210),
                                         Direction::from_degrees(330)};
    const std::vector<double> weights = parse_number_list(weights_csv);

    std::ostringstream csv;
    csv << "schedule,trial,seed,converged,iterations,rate,r2\n";
    auto run_one = [&](const std::string& id, const Schedule& sched, long trial,
                       std::uint64_t s) {
        RunConfig cfg;
        cfg.eps = eps;
        cfg.max_iters = max_iters;
        cfg.seed = s;
        cfg.record_bodies = true;
        cfg.metrics = MetricsLevel::Light;
        const ProcessTrace tr = run(K, sched, cfg);
        csv << id << "," << trial << "," << s << ","
            << (tr.verdict == Verdict::Converged ? 1 : 0) << "," << tr.iterations;
        try {
            const RateEstimate re = estimate_rate(tr);
            csv << "," << fmt_double(re.rate) << "," << fmt_double(re.r2) << "\n";
        } catch (const insufficient_data&) {
            csv << ",insufficient-data,\n";
        }
        log_debug("rates: " + id + " trial " + std::to_string(trial) + " took " +
                  std::to_string(tr.iterations) + " iterations");
    };

    for (long t = 0; t < trials; ++t) {
        run_one("periodic-uvw",
                Schedule::explicit_seq(dirs, pattern_plain(max_iters)), t, seed + (std::uint64_t)t);
        run_one("uvw-blocks-v",
                Schedule::explicit_seq(dirs, pattern_uvw_v(max_iters)), t, seed + (std::uint64_t)t);
        run_one("uv-blocks-w",
                Schedule::explicit_seq(dirs, pattern_uv_blocks_w(max_iters)), t,
                seed + (std::uint64_t)t);
        run_one("random", Schedule::random(dirs, weights, seed + (std::uint64_t)t), t,
                seed + (std::uint64_t)t);
    }
    if (csv_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw invalid_input("cannot write csv: " + csv_path);
        out << csv.str();
        log_info("wrote " + csv_path);
    }
    return 0;
}

int cmd_verify(const std::string& only_csv, std::uint64_t seed, long trials, int threads,
               const std::string& report_path) {
    verify::Options opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.threads = threads;
    std::vector<std::string> only;
    if (!only_csv.empty())
        for (const std::string& s : split(only_csv, ','))
            if (!s.empty()) only.push_back(s);
    const std::vector<verify::CheckResult> results = verify::run_all(opt, only);
    if (results.empty()) throw invalid_input("--only matched no suite");
    bool all = true;
    std::printf("%-15s %-6s %-8s %s\n", "suite", "state", "time", "detail");
    for (const auto& r : results) {
        all = all && r.pass;
        std::printf("%-15s %-6s %7.2fs %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                    r.detail.c_str());
    }
    if (!report_path.empty()) {
        nlohmann::json j;
        j["seed"] = seed;
        j["pass"] = all;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results)
            arr.push_back({{"id", r.id},
                           {"title", r.title},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
        j["suites"] = std::move(arr);
        std::ofstream out(report_path);
        if (!out) throw invalid_input("cannot write report: " + report_path);
        out << j.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar symmetrization laboratory"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "iterate a schedule and export the trace");
    std::string input, generate, sched_spec, trace_path, csv_path, svg_dir;
    double eps = 1e-9;
    long max_iters = 100000, window = 0, svg_every = 0;
    std::uint64_t seed = 0;
    bool oracle_check = false, light = false;
    run_cmd->add_option("--input", input, "body JSON file");
    run_cmd->add_option("--generate", generate,
                        "body generator: regular:k | random:k,seed | segment:len | "
                        "triangle:right|equilateral");
    run_cmd->add_option("--schedule", sched_spec,
                        "periodic:deg,... | random:deg,...[;weights][;seed] | explicit:@file")
        ->required();
    run_cmd->add_option("--eps", eps, "convergence threshold");
    run_cmd->add_option("--max-iters", max_iters, "iteration budget");
    run_cmd->add_option("--window", window, "residual-check period (0: number of directions)");
    run_cmd->add_option("--seed", seed, "extra seed for random schedules");
    run_cmd->add_option("--trace", trace_path, "JSONL trace output");
    run_cmd->add_option("--csv", csv_path, "CSV metric summary output");
    run_cmd->add_option("--svg-every", svg_every, "write an SVG snapshot every N iterations");
    run_cmd->add_option("--svg-dir", svg_dir, "snapshot directory");
    run_cmd->add_flag("--oracle-check", oracle_check,
                      "cross-check every step against the grid engine (slow)");
    run_cmd->add_flag("--light", light, "record only the cheap per-iteration metrics");

    auto* rates_cmd =
        app.add_subcommand("experiment-rates", "convergence-rate sweep over schedule families");
    std::string preset = "s6-triangle", weights_csv, rates_csv;
    long trials = 10;
    double r_eps = 1e-8;
    long r_max_iters = 100000;
    std::uint64_t r_seed = 1;
    rates_cmd->add_option("--preset", preset, "experiment preset (s6-triangle)");
    rates_cmd->add_option("--trials", trials, "trials per schedule family");
    rates_cmd->add_option("--eps", r_eps, "convergence threshold");
    rates_cmd->add_option("--max-iters", r_max_iters, "iteration budget");
    rates_cmd->add_option("--seed", r_seed, "base seed");
    rates_cmd->add_option("--weights", weights_csv, "random-mode weights, e.g. 0.8,0.1,0.1");
    rates_cmd->add_option("--csv", rates_csv, "output CSV path (default: stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    std::string only_csv, report_path;
    std::uint64_t v_seed = 2026;
    long v_trials = 0;
    int v_threads = 2;
    verify_cmd->add_option("--only", only_csv, "comma-separated suite ids");
    verify_cmd->add_option("--seed", v_seed, "randomization seed");
    verify_cmd->add_option("--trials", v_trials, "override per-suite trial counts");
    verify_cmd->add_option("--threads", v_threads, "worker threads");
    verify_cmd->add_option("--report", report_path, "machine-readable JSON report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return cmd_run(input, generate, sched_spec, eps, max_iters, window, seed, trace_path,
                           csv_path, svg_every, svg_dir, oracle_check, light);
        if (rates_cmd->parsed())
            return cmd_experiment_rates(preset, trials, r_eps, r_max_iters, r_seed, weights_csv,
                                        rates_csv);
        if (verify_cmd->parsed())
            return cmd_verify(only_csv, v_seed, v_trials, v_threads, report_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
