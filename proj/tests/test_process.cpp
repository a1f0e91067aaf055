#include <catch2/catch_amalgamated.hpp>

#include "steiner/generators.hpp"
#include "steiner/json_io.hpp"
#include "steiner/process.hpp"

using namespace steiner;
using Catch::Approx;

namespace {

Schedule d3_schedule() {
    return Schedule::periodic({Direction::from_degrees(90), Direction::from_degrees(210),
                               Direction::from_degrees(330)});
}

}  // namespace

TEST_CASE("schedule validation") {
    REQUIRE_THROWS_AS(Schedule::periodic({}), invalid_input);
    // directions equal modulo pi collapse
    REQUIRE_THROWS_AS(
        Schedule::periodic({Direction::from_degrees(30), Direction::from_degrees(210)}),
        invalid_input);
    REQUIRE_THROWS_AS(Schedule::random({Direction::from_degrees(0)}, {0.5, 0.5}, 1),
                      invalid_input);
    REQUIRE_THROWS_AS(
        Schedule::random({Direction::from_degrees(0), Direction::from_degrees(90)}, {0.9, 0.2}, 1),
        invalid_input);
    REQUIRE_THROWS_AS(
        Schedule::random({Direction::from_degrees(0), Direction::from_degrees(90)}, {1.2, -0.2}, 1),
        invalid_input);
    REQUIRE_THROWS_AS(Schedule::explicit_seq({Direction::from_degrees(0)}, {0, 1}),
                      invalid_input);
    REQUIRE_THROWS_AS(Schedule::explicit_seq({Direction::from_degrees(0)}, {}), invalid_input);

    const Schedule s = Schedule::periodic({Direction::from_degrees(190)});
    REQUIRE(s.dirs()[0].theta == Approx(10.0 * std::numbers::pi / 180.0));
}

TEST_CASE("random schedules are reproducible and weighted") {
    const Schedule s = Schedule::random(
        {Direction::from_degrees(0), Direction::from_degrees(60), Direction::from_degrees(120)},
        {0.8, 0.1, 0.1}, 42);
    ScheduleCursor a(s, 0), b(s, 0);
    long counts[3] = {0, 0, 0};
    for (int i = 0; i < 3000; ++i) {
        const int ia = *a.next(), ib = *b.next();
        REQUIRE(ia == ib);
        ++counts[ia];
    }
    REQUIRE(counts[0] > 2200);
    REQUIRE(counts[1] > 100);
    REQUIRE(counts[2] > 100);
}

TEST_CASE("an already symmetric body converges immediately") {
    const ConvexBody2 sq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    const Schedule axes =
        Schedule::periodic({Direction::from_degrees(0), Direction::from_degrees(90)});
    RunConfig cfg;
    cfg.eps = 1e-9;
    const ProcessTrace tr = run(sq, axes, cfg);
    REQUIRE(tr.verdict == Verdict::Converged);
    REQUIRE(tr.iterations <= 2);
    REQUIRE(hausdorff(tr.final_body, sq) <= 1e-12);
    REQUIRE(verify_idempotence(tr.final_body, axes, cfg) <= 1e-12);
}

TEST_CASE("triangle under the equilateral normals") {
    RunConfig cfg;
    cfg.eps = 1e-8;  // the documented pruning floor sits near 2e-9
    cfg.max_iters = 200000;
    const Schedule sched = d3_schedule();
    const ProcessTrace tr = run(right_triangle(), sched, cfg);
    REQUIRE(tr.verdict == Verdict::Converged);
    REQUIRE(verify_limit_symmetry(tr, sched.dirs(), 1e-7));
    // area preserved up to the recorded pruning allowance
    const IterationRecord& last = tr.records.back();
    REQUIRE(std::abs(last.area - 0.5) <= 1e-9 * 0.5 + last.prune_area_cum);

    SECTION("trace column invariants") {
        double a0 = area(right_triangle());
        double prev_prune = 0;
        const Tolerances tol;
        for (std::size_t i = 0; i < tr.records.size(); ++i) {
            const IterationRecord& r = tr.records[i];
            REQUIRE(std::abs(r.area - a0) <= 1e-9 * a0 + r.prune_area_cum);
            if (i > 0) {
                const IterationRecord& p = tr.records[i - 1];
                const double prune_step = r.prune_area_cum - prev_prune;
                REQUIRE(r.perimeter <= p.perimeter + 1e-9);
                REQUIRE(r.mean_width <= p.mean_width + 1e-9);
                REQUIRE(r.circumradius <= p.circumradius + 1e-9);
                REQUIRE(r.diameter <= p.diameter + 1e-9);
                REQUIRE(r.inradius >= p.inradius - 1e-9);
                // layering loss from pruning is at most (sqrt(pi)/4) * area removed
                REQUIRE(r.omega >=
                        p.omega - 2 * tol.quadrature_tol - 0.45 * prune_step);
                REQUIRE(r.hausdorff_step >= 0.0);
            }
            prev_prune = r.prune_area_cum;
        }
    }
    SECTION("idempotence of the converged limit") {
        REQUIRE(verify_idempotence(tr.final_body, sched, cfg) <= 2 * cfg.eps);
    }
    SECTION("rate estimation") {
        RunConfig cfg2 = cfg;
        cfg2.record_bodies = true;
        const ProcessTrace tr2 = run(right_triangle(), sched, cfg2);
        const RateEstimate re = estimate_rate(tr2);
        REQUIRE(re.rate < 0.0);
        REQUIRE(re.r2 >= 0.9);
    }
    SECTION("boundedness") {
        REQUIRE(boundedness_check(tr, max_vertex_norm(right_triangle())));
        REQUIRE(boundedness_check(tr, 2.0));
        REQUIRE_THROWS_AS(boundedness_check(tr, 0.5), precondition_error);
    }
}

TEST_CASE("rate estimation needs data") {
    const ConvexBody2 sq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    const Schedule axes =
        Schedule::periodic({Direction::from_degrees(0), Direction::from_degrees(90)});
    RunConfig cfg;
    cfg.record_bodies = true;
    const ProcessTrace tr = run(sq, axes, cfg);
    REQUIRE_THROWS_AS(estimate_rate(tr), insufficient_data);
}

TEST_CASE("explicit schedules assert symmetry only for recurring directions") {
    // u once, then v forever: the limit is s_v s_u K, symmetric across v only
    std::vector<Direction> dirs = {Direction::from_degrees(0), Direction::from_degrees(45)};
    std::vector<int> seq = {0};
    for (int i = 0; i < 63; ++i) seq.push_back(1);
    const Schedule sched = Schedule::explicit_seq(dirs, seq);
    RunConfig cfg;
    cfg.eps = 1e-9;
    cfg.max_iters = 1000;
    const ProcessTrace tr = run(segment_body(1.0), sched, cfg);
    REQUIRE(tr.verdict == Verdict::Converged);
    REQUIRE(verify_limit_symmetry(tr, sched.dirs(), 1e-9));
    REQUIRE(is_symmetric(tr.final_body, dirs[1], 1e-9));
    REQUIRE_FALSE(is_symmetric(tr.final_body, dirs[0], 1e-3));
}

TEST_CASE("non-idempotence counterexample") {
    const Direction u = Direction::from_degrees(0), v = Direction::from_degrees(45);
    REQUIRE(counterexample_nonidempotent(u, v, segment_body(1.0)) > 0.01);
    REQUIRE(counterexample_nonidempotent(u, v, regular_polygon(64)) <= 1e-9);
    const ConvexBody2 sq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    REQUIRE(counterexample_nonidempotent(u, v, sq) >= 0.0);
    REQUIRE_THROWS_AS(counterexample_nonidempotent(u, Direction::from_degrees(90), sq),
                      invalid_input);
    REQUIRE_THROWS_AS(counterexample_nonidempotent(u, Direction::from_degrees(180), sq),
                      invalid_input);
}

TEST_CASE("empty-interior starts converge symmetric") {
    SplitMix64 rng(606);
    for (int t = 0; t < 5; ++t) {
        const Vec2 a = random_in_disk(rng), b = random_in_disk(rng);
        if (dist(a, b) < 0.2) continue;
        const std::vector<Direction> dirs = random_direction_set(2 + int(rng.below(3)), rng);
        const Schedule sched = Schedule::random(dirs, {}, rng.next());
        RunConfig cfg;
        cfg.eps = 1e-8;
        cfg.max_iters = 200000;
        cfg.metrics = MetricsLevel::Light;
        const ProcessTrace tr = run(ConvexBody2::segment(a, b), sched, cfg);
        REQUIRE(tr.verdict == Verdict::Converged);
        REQUIRE(verify_limit_symmetry(tr, sched.dirs(), 1e-7));
    }
}

TEST_CASE("traces are deterministic") {
    const ConvexBody2 K = random_polygon(7, 2022);
    SplitMix64 rng(11);
    const std::vector<Direction> dirs = random_direction_set(3, rng);
    const Schedule sched = Schedule::random(dirs, {}, 5);
    RunConfig cfg;
    cfg.eps = 1e-8;
    cfg.max_iters = 3000;
    cfg.seed = 77;
    const ProcessTrace a = run(K, sched, cfg);
    const ProcessTrace b = run(K, sched, cfg);
    REQUIRE(trace_to_jsonl(a, sched, cfg) == trace_to_jsonl(b, sched, cfg));
}

TEST_CASE("run configuration validation") {
    const Schedule axes =
        Schedule::periodic({Direction::from_degrees(0), Direction::from_degrees(90)});
    RunConfig cfg;
    cfg.eps = -1;
    REQUIRE_THROWS_AS(run(right_triangle(), axes, cfg), invalid_input);
    cfg = RunConfig{};
    cfg.max_iters = 0;
    REQUIRE_THROWS_AS(run(right_triangle(), axes, cfg), invalid_input);
}
