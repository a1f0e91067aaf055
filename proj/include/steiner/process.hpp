#pragma once

// Symmetrization processes over finite direction sets: schedules, the
// iteration runner with its metric trace, convergence detection, and the
// checks used to certify limits.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "steiner/functionals.hpp"
#include "steiner/symmetrize.hpp"

namespace steiner {

/// Directions act through reflections, so u and -u induce the same
/// symmetrization; the canonical representative has angle in [0, pi).
inline Direction canonical_direction(const Direction& u) {
    double t = u.theta;
    if (t >= std::numbers::pi) t -= std::numbers::pi;
    return Direction::from_angle(t);
}

enum class ScheduleKind { Periodic, Random, Explicit };

/// A rule emitting directions from a finite permitted set: cyclically,
/// by seeded weighted draws, or from an explicit index sequence.
class Schedule {
  public:
    static Schedule periodic(std::vector<Direction> dirs) {
        Schedule s(ScheduleKind::Periodic, std::move(dirs));
        s.validate();
        return s;
    }

    /// Empty weights mean uniform. Weights must be strictly positive and sum
    /// to 1 within 1e-12.
    static Schedule random(std::vector<Direction> dirs, std::vector<double> weights,
                           std::uint64_t seed) {
        Schedule s(ScheduleKind::Random, std::move(dirs));
        if (weights.empty())
            weights.assign(s.dirs_.size(), 1.0 / static_cast<double>(s.dirs_.size()));
        s.weights_ = std::move(weights);
        s.seed_ = seed;
        s.validate();
        return s;
    }

    static Schedule explicit_seq(std::vector<Direction> dirs, std::vector<int> indices) {
        Schedule s(ScheduleKind::Explicit, std::move(dirs));
        s.indices_ = std::move(indices);
        s.validate();
        return s;
    }

    ScheduleKind kind() const { return kind_; }
    const std::vector<Direction>& dirs() const { return dirs_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<int>& indices() const { return indices_; }
    std::uint64_t seed() const { return seed_; }

  private:
    explicit Schedule(ScheduleKind k, std::vector<Direction> dirs)
        : kind_(k), dirs_(std::move(dirs)) {}

    void validate() {
        if (dirs_.empty()) throw invalid_input("Schedule: empty direction set");
        for (Direction& d : dirs_) d = canonical_direction(d);
        for (std::size_t i = 0; i < dirs_.size(); ++i)
            for (std::size_t j = i + 1; j < dirs_.size(); ++j) {
                double gap = std::abs(dirs_[i].theta - dirs_[j].theta);
                gap = std::min(gap, std::numbers::pi - gap);
                if (gap <= 1e-12)
                    throw invalid_input("Schedule: directions must be distinct modulo pi");
            }
        if (kind_ == ScheduleKind::Random) {
            if (weights_.size() != dirs_.size())
                throw invalid_input("Schedule: one weight per direction required");
            double sum = 0;
            for (double w : weights_) {
                if (!(w > 0)) throw invalid_input("Schedule: weights must be strictly positive");
                sum += w;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw invalid_input("Schedule: weights must sum to 1");
        }
        if (kind_ == ScheduleKind::Explicit) {
            if (indices_.empty()) throw invalid_input("Schedule: empty explicit sequence");
            for (int ix : indices_)
                if (ix < 0 || ix >= static_cast<int>(dirs_.size()))
                    throw invalid_input("Schedule: explicit index out of range");
        }
    }

    ScheduleKind kind_;
    std::vector<Direction> dirs_;
    std::vector<double> weights_;
    std::vector<int> indices_;
    std::uint64_t seed_ = 0;
};

/// Stateful emitter for a schedule; deterministic given the seed.
class ScheduleCursor {
  public:
    ScheduleCursor(const Schedule& s, std::uint64_t extra_seed)
        : sched_(&s), rng_(s.seed() + extra_seed) {}

    /// Index into dirs() of the next emission; nullopt once an explicit
    /// sequence is exhausted.
    std::optional<int> next() {
        const Schedule& s = *sched_;
        switch (s.kind()) {
            case ScheduleKind::Periodic:
                return static_cast<int>(i_++ % s.dirs().size());
            case ScheduleKind::Random: {
                ++i_;
                const double u = rng_.uniform();
                double acc = 0;
                for (std::size_t k = 0; k < s.weights().size(); ++k) {
                    acc += s.weights()[k];
                    if (u < acc) return static_cast<int>(k);
                }
                return static_cast<int>(s.weights().size() - 1);
            }
            case ScheduleKind::Explicit:
                if (i_ >= s.indices().size()) return std::nullopt;
                return s.indices()[i_++];
        }
        return std::nullopt;
    }

  private:
    const Schedule* sched_;
    SplitMix64 rng_;
    std::size_t i_ = 0;
};

enum class Verdict { Converged, MaxItersReached };

enum class MetricsLevel {
    Full,   // every trace column, every iteration
    Light,  // only the O(n) basics; omega/radii/diameter/hausdorff_step skipped
};

struct RunConfig {
    double eps = 1e-9;
    long max_iters = 100000;
    long window = 0;  // residual-check period; 0 means the number of permitted directions
    std::uint64_t seed = 0;
    MetricsLevel metrics = MetricsLevel::Full;
    bool record_bodies = false;
    Tolerances tol{};
    /// Observer called after every iteration (snapshots, per-step checks).
    std::function<void(long iter, int dir_index, const ConvexBody2&)> on_iterate;

    void validate() const {
        tol.validate();
        if (!(eps > 0)) throw invalid_input("RunConfig: eps must be positive");
        if (max_iters < 1) throw invalid_input("RunConfig: max_iters must be >= 1");
        if (window < 0) throw invalid_input("RunConfig: window must be >= 1 (or 0 for default)");
    }
};

struct IterationRecord {
    long iter = 0;  // 1-based
    int direction_index = -1;
    double area = 0;
    double perimeter = 0;
    double mean_width = 0;
    double omega = std::numeric_limits<double>::quiet_NaN();
    double inradius = std::numeric_limits<double>::quiet_NaN();
    double circumradius = std::numeric_limits<double>::quiet_NaN();
    double diameter = std::numeric_limits<double>::quiet_NaN();
    double max_vertex_norm = 0;
    double hausdorff_step = std::numeric_limits<double>::quiet_NaN();
    double fixpoint_residual = std::numeric_limits<double>::quiet_NaN();
    double prune_area_cum = 0;  // cumulative bound on area removed by pruning
};

struct ProcessTrace {
    Verdict verdict = Verdict::MaxItersReached;
    long iterations = 0;
    ConvexBody2 initial_body = ConvexBody2::point({0, 0});
    ConvexBody2 final_body = ConvexBody2::point({0, 0});
    double final_residual = std::numeric_limits<double>::quiet_NaN();
    std::vector<IterationRecord> records;
    std::vector<ConvexBody2> bodies;  // populated when config.record_bodies
    ScheduleKind schedule_kind = ScheduleKind::Periodic;
    long window = 0;
    double eps = 0;
};

namespace detail {

/// Directions against which the fixpoint residual is measured: every
/// permitted direction for periodic/random schedules, and for explicit
/// prefixes only those still occurring in the trailing window of emissions.
inline std::vector<Direction> active_directions(const Schedule& s,
                                                std::span<const int> trailing) {
    if (s.kind() != ScheduleKind::Explicit) return s.dirs();
    std::vector<char> seen(s.dirs().size(), 0);
    for (int ix : trailing) seen[static_cast<std::size_t>(ix)] = 1;
    std::vector<Direction> out;
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (seen[k]) out.push_back(s.dirs()[k]);
    return out;
}

}  // namespace detail

/// Iterate K_i = s_{u_i} K_{i-1} along the schedule, recording the metric
/// trace. Stops with Verdict::Converged as soon as the fixpoint residual over
/// the active directions drops below eps (checked every `window` iterations
/// and when the schedule or iteration budget runs out).
inline ProcessTrace run(const ConvexBody2& K0, const Schedule& schedule, const RunConfig& config) {
    config.validate();
    const auto& dirs = schedule.dirs();
    const long m = static_cast<long>(dirs.size());
    const long window = config.window > 0 ? config.window : m;
    const Tolerances& tol = config.tol;

    ProcessTrace trace;
    trace.initial_body = K0;
    trace.schedule_kind = schedule.kind();
    trace.window = window;
    trace.eps = config.eps;
    trace.records.reserve(static_cast<std::size_t>(std::min(config.max_iters, 4096l)));

    ScheduleCursor cursor(schedule, config.seed);
    ConvexBody2 K = K0;
    SupportFan prev_fan;
    if (config.metrics == MetricsLevel::Full) prev_fan = build_fan(K);
    if (config.record_bodies) trace.bodies.push_back(K);

    std::vector<int> trailing;  // last `window` emitted direction indices
    double prune_cum = 0;
    bool exhausted = false;

    long iter = 0;
    while (iter < config.max_iters) {
        const std::optional<int> ix = cursor.next();
        if (!ix) {
            exhausted = true;
            break;
        }
        ++iter;
        K = symmetrize(K, dirs[static_cast<std::size_t>(*ix)], tol, &prune_cum);
        if (config.record_bodies) trace.bodies.push_back(K);
        if (config.on_iterate) config.on_iterate(iter, *ix, K);
        if (trailing.size() >= static_cast<std::size_t>(window)) trailing.erase(trailing.begin());
        trailing.push_back(*ix);

        IterationRecord rec;
        rec.iter = iter;
        rec.direction_index = *ix;
        rec.area = area(K);
        rec.perimeter = perimeter(K);
        rec.mean_width = rec.perimeter / std::numbers::pi;
        rec.max_vertex_norm = max_vertex_norm(K);
        rec.prune_area_cum = prune_cum;
        if (config.metrics == MetricsLevel::Full) {
            rec.omega = omega_fan(K, tol).value;
            rec.inradius = K.is_polygon() ? inradius(K).radius : 0.0;
            rec.circumradius = circumradius(K).radius;
            rec.diameter = diameter(K);
            SupportFan cur_fan = build_fan(K);
            rec.hausdorff_step = hausdorff(cur_fan, prev_fan);
            prev_fan = std::move(cur_fan);
        }

        const bool budget_done = iter >= config.max_iters;
        if (iter % window == 0 || budget_done) {
            const std::vector<Direction> active = detail::active_directions(schedule, trailing);
            const double res = fixpoint_residual(K, active, tol);
            rec.fixpoint_residual = res;
            trace.final_residual = res;
            if (res < config.eps) {
                trace.records.push_back(rec);
                trace.verdict = Verdict::Converged;
                trace.iterations = iter;
                trace.final_body = std::move(K);
                return trace;
            }
        }
        trace.records.push_back(rec);
    }

    // explicit schedule ran out (or zero-iteration budget): one final check
    const std::vector<Direction> active = detail::active_directions(
        schedule, trailing.empty() ? std::span<const int>{} : std::span<const int>(trailing));
    if (exhausted && !trailing.empty()) {
        const double res = fixpoint_residual(K, active, tol);
        trace.final_residual = res;
        if (!trace.records.empty()) trace.records.back().fixpoint_residual = res;
        if (res < config.eps) trace.verdict = Verdict::Converged;
    }
    trace.iterations = iter;
    trace.final_body = std::move(K);
    return trace;
}

/// Does the converged limit have every required reflection symmetry?
/// Periodic and random schedules require symmetry in all permitted
/// directions; explicit prefixes only in directions still occurring in the
/// trailing emission window (reported by the trace's direction column).
inline bool verify_limit_symmetry(const ProcessTrace& trace, std::span<const Direction> dirs,
                                  double tol_dist, const Tolerances& tol = {}) {
    if (trace.verdict != Verdict::Converged)
        throw precondition_error("verify_limit_symmetry: trace did not converge");
    std::vector<Direction> check(dirs.begin(), dirs.end());
    if (trace.schedule_kind == ScheduleKind::Explicit) {
        const long w = std::min<long>(trace.window, static_cast<long>(trace.records.size()));
        std::vector<char> seen(dirs.size(), 0);
        for (std::size_t i = trace.records.size() - static_cast<std::size_t>(w);
             i < trace.records.size(); ++i)
            seen[static_cast<std::size_t>(trace.records[i].direction_index)] = 1;
        check.clear();
        for (std::size_t k = 0; k < dirs.size(); ++k)
            if (seen[k]) check.push_back(dirs[k]);
    }
    for (const Direction& d : check)
        if (!is_symmetric(trace.final_body, d, tol_dist, tol)) return false;
    return true;
}

/// Distance moved when the schedule is replayed from a converged limit.
/// For schedules emitting every direction infinitely often this is at most
/// about twice the convergence threshold.
inline double verify_idempotence(const ConvexBody2& final_body, const Schedule& schedule,
                                 const RunConfig& config) {
    ProcessTrace second = run(final_body, schedule, config);
    return hausdorff(final_body, second.final_body);
}

/// Gap demonstrating that one application of s_v s_u need not be idempotent:
/// returns hausdorff(s_v s_u K, (s_v s_u)^2 K). Requires distinct,
/// non-orthogonal directions; line segments make the gap strictly positive.
inline double counterexample_nonidempotent(const Direction& u, const Direction& v,
                                           const ConvexBody2& K, const Tolerances& tol = {}) {
    const double d = std::abs(u.ux * v.ux + u.uy * v.uy);
    if (d <= 1e-6) throw invalid_input("counterexample: directions must be non-orthogonal");
    double gap = std::abs(canonical_direction(u).theta - canonical_direction(v).theta);
    gap = std::min(gap, std::numbers::pi - gap);
    if (gap <= 1e-6) throw invalid_input("counterexample: directions must be distinct");
    const ConvexBody2 once = symmetrize(symmetrize(K, u, tol), v, tol);
    const ConvexBody2 twice = symmetrize(symmetrize(once, u, tol), v, tol);
    return hausdorff(once, twice);
}

struct RateEstimate {
    double rate = 0.0;  // least-squares slope of log distance-to-limit per iteration
    double r2 = 0.0;
};

/// Fit log hausdorff(K_i, final) ~ a + rate * i over the iterations whose
/// distance to the limit exceeds 10 * eps. Exploratory: no contractual value.
inline RateEstimate estimate_rate(const ProcessTrace& trace) {
    if (trace.verdict != Verdict::Converged)
        throw precondition_error("estimate_rate: trace did not converge");
    if (trace.bodies.empty())
        throw precondition_error("estimate_rate: run with record_bodies enabled");
    std::vector<double> xs, ys;
    const SupportFan final_fan = build_fan(trace.final_body);
    for (std::size_t i = 1; i < trace.bodies.size(); ++i) {
        const double d = hausdorff(build_fan(trace.bodies[i]), final_fan);
        if (d > 10.0 * trace.eps) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(std::log(d));
        }
    }
    if (xs.size() < 10) throw insufficient_data("estimate_rate: fewer than 10 usable points");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    const double rate = (n * sxy - sx * sy) / denom;
    const double ss_tot = syy - sy * sy / n;
    const double intercept = (sy - rate * sx) / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (intercept + rate * xs[i]);
        ss_res += e * e;
    }
    return {rate, ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
}

/// Did every recorded iterate stay inside rho B?  (K inside rho B implies all
/// iterates do; this scans the recorded max vertex norms.)
inline bool boundedness_check(const ProcessTrace& trace, double rho) {
    const double initial = max_vertex_norm(trace.initial_body);
    if (rho < initial - 1e-12)
        throw precondition_error("boundedness_check: rho below the initial body's radius");
    for (const IterationRecord& r : trace.records)
        if (r.max_vertex_norm > rho + 1e-9) return false;
    return true;
}

}  // namespace steiner
