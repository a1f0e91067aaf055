#pragma once

// Randomized verification suites, one per monotonicity or convergence
// statement the kernel is expected to satisfy. The acceptance runner and the
// CLI `verify` subcommand both drive these.

#include <chrono>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "steiner/generators.hpp"
#include "steiner/json_io.hpp"
#include "steiner/process.hpp"
#include "steiner/raster.hpp"

namespace steiner::verify {

struct CheckResult {
    std::string id;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Options {
    std::uint64_t seed = 2026;
    long trials = 0;  // 0: the per-suite defaults below
    int threads = 2;
};

namespace detail_v {

inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t suite, std::uint64_t trial) {
    SplitMix64 rng(base ^ (suite * 0x9E3779B97F4A7C15ull) ^ (trial * 0xD1B54A32D192ED03ull));
    return rng.next();
}

/// Run fn(trial) -> failure message ("" = pass) over [0, n), split across
/// threads; aggregation is by trial index, so results are deterministic.
template <class Fn>
std::vector<std::string> run_trials(long n, int threads, Fn fn) {
    std::vector<std::string> out(static_cast<std::size_t>(n));
    if (threads <= 1 || n < 4) {
        for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::vector<std::future<void>> futs;
    const long chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (long i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        }));
    }
    for (auto& f : futs) f.get();
    return out;
}

inline CheckResult summarize(std::string id, std::string title,
                             const std::vector<std::string>& fails, std::string extra,
                             std::chrono::steady_clock::time_point t0) {
    CheckResult r;
    r.id = std::move(id);
    r.title = std::move(title);
    long bad = 0;
    std::string first;
    for (std::size_t i = 0; i < fails.size(); ++i)
        if (!fails[i].empty()) {
            if (bad == 0) first = "trial " + std::to_string(i) + ": " + fails[i];
            ++bad;
        }
    r.pass = bad == 0;
    std::ostringstream os;
    os << fails.size() << " trials";
    if (!extra.empty()) os << ", " << extra;
    if (bad) os << ", " << bad << " FAILED (" << first << ")";
    r.detail = os.str();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline ConvexBody2 trial_polygon(SplitMix64& rng) {
    const int k = 3 + static_cast<int>(rng.below(10));
    return random_polygon(k, rng.next());
}

}  // namespace detail_v

// --- volume invariance under one symmetrization ----------------------------
inline CheckResult check_volume(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 1000;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 1, static_cast<std::uint64_t>(i)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const Direction u = random_direction(rng);
        const double a0 = area(K), a1 = area(symmetrize(K, u));
        if (std::abs(a1 - a0) > 1e-9 * a0)
            return "relative area change " + fmt_double(std::abs(a1 - a0) / a0);
        return {};
    });
    return detail_v::summarize("volume", "volume invariance of one symmetrization", fails, "",
                               t0);
}

// --- monotone functional suite ---------------------------------------------
inline CheckResult check_rRsu(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 1000;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 2, static_cast<std::uint64_t>(i)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const Direction u = random_direction(rng);
        const ConvexBody2 S = symmetrize(K, u);
        if (perimeter(S) > perimeter(K) + 1e-9) return "perimeter increased";
        if (mean_width(S) > mean_width(K) + 1e-9) return "mean width increased";
        if (diameter(S) > diameter(K) + 1e-9) return "diameter increased";
        if (circumradius(S).radius > circumradius(K).radius + 1e-9)
            return "circumradius increased";
        if (S.is_polygon() && K.is_polygon() &&
            inradius(S).radius < inradius(K).radius - 1e-9)
            return "inradius decreased";
        // origin-centered sandwich r B within K within R B is preserved
        if (inradius_origin(S) < inradius_origin(K) - 1e-9) return "origin inradius decreased";
        if (circumradius_origin(S) > circumradius_origin(K) + 1e-9)
            return "origin circumradius increased";
        return {};
    });
    return detail_v::summarize(
        "rRsu", "perimeter/mean-width/radii/diameter monotonicity", fails, "", t0);
}

// --- Minkowski-sum superadditivity ------------------------------------------
inline CheckResult check_steinsum(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 500;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 3, static_cast<std::uint64_t>(i)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const ConvexBody2 L = detail_v::trial_polygon(rng);
        const Direction u = random_direction(rng);
        const ConvexBody2 lhs = symmetrize(minkowski_sum(K, L), u);
        const ConvexBody2 rhs = minkowski_sum(symmetrize(K, u), symmetrize(L, u));
        const double excess = inclusion_excess(rhs, lhs);
        if (excess > 1e-9) return "sum of symmetrals protrudes by " + fmt_double(excess);
        return {};
    });
    return detail_v::summarize("steinsum", "symmetral of a sum contains the sum of symmetrals",
                               fails, "", t0);
}

// --- mixed-area monotonicity -------------------------------------------------
inline CheckResult check_reduce(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 500;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 4, static_cast<std::uint64_t>(i)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const ConvexBody2 L = detail_v::trial_polygon(rng);
        const Direction u = random_direction(rng);
        const double before = mixed_area(K, L);
        const double after = mixed_area(symmetrize(K, u), symmetrize(L, u));
        if (after > before + 1e-9)
            return "mixed area rose by " + fmt_double(after - before);
        return {};
    });
    return detail_v::summarize("reduce", "mixed area non-increasing under symmetrization", fails,
                               "", t0);
}

// --- layering functional: monotone, strict off-symmetry, tight at symmetry --
inline CheckResult check_dend(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 500;
    const Tolerances tol;
    const double slack = 2 * tol.quadrature_tol;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 5, static_cast<std::uint64_t>(i)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const Direction u = random_direction(rng);
        const ConvexBody2 S = symmetrize(K, u);
        const double before = omega(K, tol).value;
        const double after = omega(S, tol).value;
        if (after < before - slack)
            return "layering functional dropped by " + fmt_double(before - after);
        if (hausdorff(S, K) >= 1e-3 && area(K) >= 0.1 && after - before <= slack)
            return "no strict increase despite asymmetry";
        // the symmetral is fixed by the same reflection: equality case
        const ConvexBody2 S2 = symmetrize(S, u);
        const double again = omega(S2, tol).value;
        if (std::abs(again - after) > slack)
            return "equality case off by " + fmt_double(std::abs(again - after));
        return {};
    });
    return detail_v::summarize("dend", "layering functional monotone, strictly off symmetry",
                               fails, "", t0);
}

// --- finite-direction convergence --------------------------------------------
inline CheckResult check_findir(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 100;
    std::vector<long> iters(static_cast<std::size_t>(n), 0);
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 6, static_cast<std::uint64_t>(i)));
        const int m = 2 + static_cast<int>(rng.below(5));
        const std::vector<Direction> dirs = random_direction_set(m, rng);
        ConvexBody2 K = ConvexBody2::point({0, 0});
        if (i % 10 == 9) {
            // empty-interior start
            const Vec2 a = random_in_disk(rng), b = random_in_disk(rng);
            if (dist(a, b) < 0.1) return {};  // skip a degenerate draw
            K = ConvexBody2::segment(a, b);
        } else {
            K = detail_v::trial_polygon(rng);
        }
        const Schedule sched = Schedule::random(dirs, {}, rng.next());
        RunConfig cfg;
        cfg.eps = 1e-8;
        cfg.max_iters = 200000;
        cfg.window = 4 * m;
        cfg.metrics = MetricsLevel::Light;
        const ProcessTrace tr = run(K, sched, cfg);
        iters[static_cast<std::size_t>(i)] = tr.iterations;
        if (tr.verdict != Verdict::Converged)
            return "did not converge in 200000 iterations (residual " +
                   fmt_double(tr.final_residual) + ")";
        if (!verify_limit_symmetry(tr, sched.dirs(), 1e-7))
            return "limit misses a required reflection symmetry";
        return {};
    });
    long worst = 0, total = 0;
    for (long it : iters) {
        worst = std::max(worst, it);
        total += it;
    }
    std::ostringstream extra;
    extra << "max " << worst << " iters, mean " << (n ? total / n : 0);
    return detail_v::summarize("findir", "random finite-direction schedules converge symmetric",
                               fails, extra.str(), t0);
}

// --- idempotence of converged schedules --------------------------------------
inline CheckResult check_idem(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 50;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 7, static_cast<std::uint64_t>(i)));
        const int m = 2 + static_cast<int>(rng.below(3));
        const std::vector<Direction> dirs = random_direction_set(m, rng);
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const Schedule sched = Schedule::random(dirs, {}, rng.next());
        RunConfig cfg;
        cfg.eps = 1e-8;
        cfg.max_iters = 200000;
        cfg.window = 4 * m;
        cfg.metrics = MetricsLevel::Light;
        const ProcessTrace tr = run(K, sched, cfg);
        if (tr.verdict != Verdict::Converged) return "first run did not converge";
        const double moved = verify_idempotence(tr.final_body, sched, cfg);
        if (moved > 2e-8) return "replay moved the limit by " + fmt_double(moved);
        return {};
    });
    return detail_v::summarize("idem", "replaying a schedule fixes its limit", fails, "", t0);
}

// --- periodic schedules converge to fully reflection-fixed limits ------------
inline CheckResult check_per(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 10;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 8, static_cast<std::uint64_t>(i)));
        const int m = 2 + static_cast<int>(rng.below(3));
        const std::vector<Direction> dirs = random_direction_set(m, rng);
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const Schedule sched = Schedule::periodic(dirs);
        RunConfig cfg;
        cfg.eps = 1e-8;
        cfg.max_iters = 200000;
        cfg.window = 4 * m;
        cfg.metrics = MetricsLevel::Light;
        const ProcessTrace tr = run(K, sched, cfg);
        if (tr.verdict != Verdict::Converged) return "periodic run did not converge";
        for (const Direction& d : sched.dirs())
            if (hausdorff(symmetrize(tr.final_body, d), tr.final_body) >= cfg.eps)
                return "limit not fixed by every permitted direction";
        return {};
    });
    return detail_v::summarize("per", "periodic schedules converge to reflection-fixed limits",
                               fails, "", t0);
}

// --- two irrational directions round every body -------------------------------
inline CheckResult check_irrat(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 3;
    auto fails = detail_v::run_trials(n, std::min(opt.threads, 2), [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 9, static_cast<std::uint64_t>(i)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const double A = area(K);
        const std::vector<Direction> dirs = {Direction::from_angle(0.0),
                                             Direction::from_angle(1.0)};
        const Schedule sched = Schedule::periodic(dirs);
        RunConfig cfg;
        cfg.eps = 1e-6;
        cfg.max_iters = 100000;
        cfg.window = 8;
        cfg.metrics = MetricsLevel::Light;
        const ProcessTrace tr = run(K, sched, cfg);
        if (tr.verdict != Verdict::Converged) return "irrational pair did not converge";
        const double gap =
            circumradius(tr.final_body).radius - inradius(tr.final_body).radius;
        if (!(gap < 1e-3)) return "circumradius - inradius = " + fmt_double(gap);
        const double dd = hausdorff(tr.final_body, regular_polygon_with_area(256, A));
        if (!(dd < 2e-3)) return "distance to the equal-area disk proxy = " + fmt_double(dd);
        // isoperimetric deficit falls below 1e-5 and never rises beyond the
        // pruning allowance
        double prev = std::numeric_limits<double>::infinity(), prev_prune = 0;
        for (const IterationRecord& r : tr.records) {
            const double deficit = r.perimeter * r.perimeter / (4 * std::numbers::pi * r.area) - 1.0;
            const double allowance = 1e-9 + 4.0 * (r.prune_area_cum - prev_prune) / r.area;
            if (deficit > prev + allowance)
                return "isoperimetric deficit rose at iter " + std::to_string(r.iter);
            prev = deficit;
            prev_prune = r.prune_area_cum;
        }
        if (!(prev < 1e-5)) return "final isoperimetric deficit " + fmt_double(prev);
        return {};
    });
    return detail_v::summarize("irrat", "irrational two-direction schedules converge to disks",
                               fails, "", t0);
}

// --- the explicit non-idempotence counterexample ------------------------------
inline CheckResult check_counterexample(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> fails(1);
    const Direction u = Direction::from_degrees(0), v = Direction::from_degrees(45);
    const double gap = counterexample_nonidempotent(u, v, segment_body(1.0));
    if (!(gap > 0.01)) fails[0] = "segment gap " + fmt_double(gap);
    const double round_gap = counterexample_nonidempotent(u, v, regular_polygon(64));
    if (fails[0].empty() && !(round_gap <= 1e-9))
        fails[0] = "disk-like body moved by " + fmt_double(round_gap);
    bool threw = false;
    try {
        counterexample_nonidempotent(u, Direction::from_degrees(90), segment_body(1.0));
    } catch (const invalid_input&) {
        threw = true;
    }
    if (fails[0].empty() && !threw) fails[0] = "orthogonal directions were accepted";
    return detail_v::summarize("counterexample", "one u then v forever is not idempotent", fails,
                               "segment gap " + fmt_double(gap), t0);
}

// --- exact kernel vs raster engine --------------------------------------------
inline CheckResult check_oracle(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const long n = opt.trials > 0 ? opt.trials : 50;
    auto fails = detail_v::run_trials(n, opt.threads, [&](long i) -> std::string {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 10, static_cast<std::uint64_t>(i)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const Direction u = random_direction(rng);
        const int res = 2048;
        const double extent = 2.0;
        const GridBody approx = grid_steiner(rasterize(K, res, extent), u);
        const GridBody exact = rasterize(symmetrize(K, u), res, extent);
        const double cell = approx.cell_size();
        const double da = std::abs(grid_area(approx) - grid_area(exact)) / grid_area(exact);
        if (da > 0.005) return "area disagreement " + fmt_double(da);
        const double hd = grid_hausdorff(approx, exact);
        if (hd > 2 * cell + 1e-12) return "grid hausdorff " + fmt_double(hd / cell) + " cells";
        return {};
    });
    return detail_v::summarize("oracle", "grid symmetrizer tracks the exact kernel", fails, "",
                               t0);
}

// --- discontinuity at lower-dimensional bodies --------------------------------
inline CheckResult check_discontinuity(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> fails(1);
    const Direction u = Direction::from_angle(0.0);
    const ConvexBody2 origin = ConvexBody2::point({0, 0});
    const ConvexBody2 K = ConvexBody2::segment({-1, 0}, {1, 0});
    if (hausdorff(symmetrize(K, u), K) > 1e-15)
        fails[0] = "the aligned segment is not fixed";
    double prev = std::numeric_limits<double>::infinity(), last = prev;
    for (int i = 0; i < 12 && fails[0].empty(); ++i) {
        const double theta = 0.5 / static_cast<double>(1 << i);
        const Vec2 tip{std::cos(theta), std::sin(theta)};
        const ConvexBody2 Ki = ConvexBody2::segment(-tip, tip);
        const double d = hausdorff(symmetrize(Ki, u), origin);
        if (d > prev) fails[0] = "distance to origin not decreasing";
        prev = d;
        last = d;
    }
    if (fails[0].empty() && !(last < 1e-3))
        fails[0] = "projected segments stay long: " + fmt_double(last);
    (void)opt;
    return detail_v::summarize("discontinuity",
                               "segment family shows symmetrization discontinuity", fails,
                               "final distance " + fmt_double(last), t0);
}

// --- byte-identical traces -----------------------------------------------------
inline CheckResult check_determinism(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> fails(2);
    for (int rep = 0; rep < 2; ++rep) {
        SplitMix64 rng(detail_v::trial_seed(opt.seed, 11, static_cast<std::uint64_t>(rep)));
        const ConvexBody2 K = detail_v::trial_polygon(rng);
        const std::vector<Direction> dirs = random_direction_set(3, rng);
        const Schedule sched = Schedule::random(dirs, {}, 17 + static_cast<std::uint64_t>(rep));
        RunConfig cfg;
        cfg.eps = 1e-8;
        cfg.max_iters = rep == 0 ? 500 : 20000;
        cfg.seed = 99;
        const ProcessTrace a = run(K, sched, cfg);
        const ProcessTrace b = run(K, sched, cfg);
        const std::string sa = trace_to_jsonl(a, sched, cfg);
        const std::string sb = trace_to_jsonl(b, sched, cfg);
        if (sa != sb) fails[static_cast<std::size_t>(rep)] = "traces differ";
    }
    return detail_v::summarize("determinism", "identical config and seed give identical traces",
                               fails, "", t0);
}

inline std::vector<CheckResult> run_all(const Options& opt,
                                        const std::vector<std::string>& only = {}) {
    using Fn = CheckResult (*)(const Options&);
    static const std::pair<const char*, Fn> suites[] = {
        {"volume", check_volume},
        {"rRsu", check_rRsu},
        {"steinsum", check_steinsum},
        {"reduce", check_reduce},
        {"dend", check_dend},
        {"findir", check_findir},
        {"idem", check_idem},
        {"per", check_per},
        {"irrat", check_irrat},
        {"counterexample", check_counterexample},
        {"oracle", check_oracle},
        {"discontinuity", check_discontinuity},
        {"determinism", check_determinism},
    };
    std::vector<CheckResult> out;
    for (const auto& [name, fn] : suites) {
        if (!only.empty()) {
            bool want = false;
            for (const std::string& o : only)
                if (o == name) want = true;
            if (!want) continue;
        }
        out.push_back(fn(opt));
    }
    return out;
}

}  // namespace steiner::verify
