#include <catch2/catch_amalgamated.hpp>

#include "steiner/generators.hpp"
#include "steiner/geom2d.hpp"

using namespace steiner;
using Catch::Approx;

namespace {

// Exhaustive minimum enclosing disk over vertex pairs and triples.
Ball2 brute_min_disk(const std::vector<Vec2>& pts) {
    Ball2 best{{0, 0}, std::numeric_limits<double>::infinity()};
    auto covers = [&](const Ball2& b) {
        for (const Vec2& p : pts)
            if (dist(p, b.center) > b.radius + 1e-12) return false;
        return true;
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Ball2 b{(pts[i] + pts[j]) * 0.5, 0.5 * dist(pts[i], pts[j])};
            if (b.radius < best.radius && covers(b)) best = b;
        }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                const Vec2 B = pts[j] - pts[i], C = pts[k] - pts[i];
                const double d = 2 * cross(B, C);
                if (std::abs(d) < 1e-18) continue;
                const Vec2 off{(C.y * norm2(B) - B.y * norm2(C)) / d,
                               (B.x * norm2(C) - C.x * norm2(B)) / d};
                Ball2 b{pts[i] + off, norm(off)};
                if (b.radius < best.radius && covers(b)) best = b;
            }
    return best;
}

// Exhaustive Chebyshev radius over active-constraint triples of edge lines.
double brute_chebyshev_radius(const ConvexBody2& K) {
    const auto& v = K.vertices();
    const std::size_t n = v.size();
    std::vector<Vec2> nrm(n);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e = v[(i + 1) % n] - v[i];
        nrm[i] = {e.y / norm(e), -e.x / norm(e)};
        h[i] = dot(nrm[i], v[i]);
    }
    double best = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                // solve n_i . x + r = h_i for the three active constraints
                const double m[3][4] = {{nrm[a].x, nrm[a].y, 1, h[a]},
                                        {nrm[b].x, nrm[b].y, 1, h[b]},
                                        {nrm[c].x, nrm[c].y, 1, h[c]}};
                double aug[3][4];
                std::copy(&m[0][0], &m[0][0] + 12, &aug[0][0]);
                // gaussian elimination
                bool ok = true;
                for (int col = 0; col < 3 && ok; ++col) {
                    int piv = col;
                    for (int r = col + 1; r < 3; ++r)
                        if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
                    if (std::abs(aug[piv][col]) < 1e-14) {
                        ok = false;
                        break;
                    }
                    std::swap_ranges(aug[col], aug[col] + 4, aug[piv]);
                    for (int r = 0; r < 3; ++r) {
                        if (r == col) continue;
                        const double f = aug[r][col] / aug[col][col];
                        for (int cc = col; cc < 4; ++cc) aug[r][cc] -= f * aug[col][cc];
                    }
                }
                if (!ok) continue;
                const double x = aug[0][3] / aug[0][0], y = aug[1][3] / aug[1][1],
                             r = aug[2][3] / aug[2][2];
                if (r < best) continue;
                bool feasible = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (nrm[i].x * x + nrm[i].y * y + r > h[i] + 1e-9) feasible = false;
                if (feasible) best = r;
            }
    return best;
}

double sampled_hausdorff(const ConvexBody2& K, const ConvexBody2& L, int m) {
    double best = 0;
    for (int i = 0; i < m; ++i) {
        const double t = kTwoPi * i / m;
        const Vec2 u{std::cos(t), std::sin(t)};
        best = std::max(best, std::abs(support(K, u) - support(L, u)));
    }
    return best;
}

}  // namespace

TEST_CASE("normalize canonicalizes hulls") {
    const ConvexBody2 sq = normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    REQUIRE(sq.is_polygon());
    REQUIRE(sq.vertices() == std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});

    const ConvexBody2 seg = normalize({{0, 0}, {2, 2}, {1, 1}});
    REQUIRE(seg.is_segment());
    REQUIRE(seg.vertices() == std::vector<Vec2>{{0, 0}, {2, 2}});

    const ConvexBody2 pruned = normalize({{0, 0}, {1, 0}, {0.5, 0.5}, {1, 1}, {0, 1}});
    REQUIRE(pruned.vertices() == std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});

    SECTION("idempotent") {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const ConvexBody2 K = random_polygon(3 + int(s % 9), 1000 + s);
            const ConvexBody2 K2 = normalize(K.vertices());
            REQUIRE(K2 == K);
        }
    }
    SECTION("input validation") {
        REQUIRE_THROWS_AS(normalize(std::vector<Vec2>{}), invalid_input);
        REQUIRE_THROWS_AS(normalize({{0, 0}, {std::nan(""), 1}}), invalid_input);
        REQUIRE_THROWS_AS(normalize({{0, 0}, {std::numeric_limits<double>::infinity(), 1}}),
                          invalid_input);
    }
    SECTION("demotions") {
        REQUIRE(normalize({{0, 0}}).is_point());
        REQUIRE(normalize({{0, 0}, {0, 0}, {1e-14, 1e-14}}).is_point());
        const ConvexBody2 thin = normalize({{0, 0}, {1, 0}, {0.5, 1e-14}});
        REQUIRE(thin.is_segment());
    }
}

TEST_CASE("support function") {
    const ConvexBody2 sq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    REQUIRE(support(sq, Direction::from_angle(0)) == Approx(0.5));
    REQUIRE(support(ConvexBody2::point({3, 4}), Vec2{0.6, 0.8}) == Approx(5.0));
    const ConvexBody2 tri = right_triangle();
    const double s = 1 / std::sqrt(2.0);
    REQUIRE(support(tri, Vec2{s, s}) == Approx(s));
}

TEST_CASE("basic metrics") {
    const ConvexBody2 sq = normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const ConvexBody2 tri = right_triangle();
    const ConvexBody2 seg = ConvexBody2::segment({0, 0}, {0, 1});
    REQUIRE(area(sq) == Approx(1.0));
    REQUIRE(area(seg) == 0.0);
    REQUIRE(area(tri) == Approx(0.5));
    REQUIRE(perimeter(sq) == Approx(4.0));
    REQUIRE(perimeter(seg) == Approx(2.0));
    REQUIRE(perimeter(tri) == Approx(2.0 + std::sqrt(2.0)));
    REQUIRE(mean_width(sq) == Approx(4.0 / std::numbers::pi));
    REQUIRE(mean_width(ConvexBody2::segment({0, 0}, {1, 0})) == Approx(2.0 / std::numbers::pi));
    REQUIRE(mean_width(ConvexBody2::point({2, 3})) == 0.0);
    REQUIRE(diameter(sq) == Approx(std::sqrt(2.0)));
    REQUIRE(diameter(ConvexBody2::segment({0, 0}, {3, 4})) == Approx(5.0));
    REQUIRE(diameter(regular_polygon(6)) == Approx(2.0));
}

TEST_CASE("diameter matches the quadratic scan") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const ConvexBody2 K = random_polygon(3 + int(s % 14), 7000 + s);
        double brute = 0;
        for (std::size_t i = 0; i < K.size(); ++i)
            for (std::size_t j = i + 1; j < K.size(); ++j)
                brute = std::max(brute, dist(K.vertices()[i], K.vertices()[j]));
        REQUIRE(diameter(K) == Approx(brute).margin(1e-13));
    }
}

TEST_CASE("minimum enclosing disk") {
    const ConvexBody2 sq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    Ball2 b = circumradius(sq);
    REQUIRE(b.radius == Approx(std::sqrt(2.0) / 2));
    REQUIRE(b.center.x == Approx(0.0).margin(1e-12));
    REQUIRE(b.center.y == Approx(0.0).margin(1e-12));

    b = circumradius(ConvexBody2::segment({-1, 0}, {1, 0}));
    REQUIRE(b.radius == Approx(1.0));
    REQUIRE(b.center.x == Approx(0.0).margin(1e-15));

    b = circumradius(right_triangle());
    REQUIRE(b.center.x == Approx(0.5));
    REQUIRE(b.center.y == Approx(0.5));
    REQUIRE(b.radius == Approx(std::sqrt(2.0) / 2));

    SECTION("agrees with the exhaustive oracle") {
        for (std::uint64_t s = 0; s < 100; ++s) {
            const ConvexBody2 K = random_polygon(3 + int(s % 12), 4000 + s);
            const Ball2 fast = circumradius(K);
            const Ball2 slow = brute_min_disk(K.vertices());
            REQUIRE(fast.radius == Approx(slow.radius).margin(1e-9));
        }
    }
}

TEST_CASE("Chebyshev disk") {
    const ConvexBody2 sq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    Ball2 b = inradius(sq);
    REQUIRE(b.radius == Approx(0.5));
    REQUIRE(b.center.x == Approx(0.0).margin(1e-9));

    b = inradius(right_triangle());
    REQUIRE(b.radius == Approx((2.0 - std::sqrt(2.0)) / 2));
    REQUIRE(b.radius == Approx(brute_chebyshev_radius(right_triangle())).margin(1e-12));

    REQUIRE(inradius(regular_polygon(6)).radius == Approx(std::sqrt(3.0) / 2));

    SECTION("degenerate bodies have no inscribed disk") {
        REQUIRE_THROWS_AS(inradius(ConvexBody2::point({1, 2})), degenerate_body);
        REQUIRE_THROWS_AS(inradius(ConvexBody2::segment({0, 0}, {1, 0})), degenerate_body);
    }
    SECTION("rectangle ties resolve to the lexicographically smallest center") {
        const Ball2 r = inradius(normalize({{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
        REQUIRE(r.radius == Approx(0.5));
        REQUIRE(r.center.x == Approx(0.5).margin(1e-9));
        REQUIRE(r.center.y == Approx(0.5).margin(1e-9));
    }
    SECTION("agrees with the exhaustive LP oracle") {
        for (std::uint64_t s = 0; s < 100; ++s) {
            const ConvexBody2 K = random_polygon(3 + int(s % 12), 5000 + s);
            REQUIRE(inradius(K).radius ==
                    Approx(brute_chebyshev_radius(K)).margin(1e-9));
        }
    }
}

TEST_CASE("Minkowski sums") {
    const ConvexBody2 sq = normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const ConvexBody2 sum = minkowski_sum(sq, sq);
    REQUIRE(area(sum) == Approx(4.0));
    REQUIRE(hausdorff(sum, scale(sq, 2.0)) <= 1e-12);

    const ConvexBody2 tri = right_triangle();
    const ConvexBody2 moved = minkowski_sum(tri, ConvexBody2::point({1, 1}));
    REQUIRE(hausdorff(moved, translate(tri, {1, 1})) <= 1e-15);

    const ConvexBody2 box = minkowski_sum(ConvexBody2::segment({0, 0}, {1, 0}),
                                          ConvexBody2::segment({0, 0}, {0, 1}));
    REQUIRE(box.is_polygon());
    REQUIRE(hausdorff(box, sq) <= 1e-15);

    SECTION("support functions add") {
        SplitMix64 rng(99);
        for (int t = 0; t < 50; ++t) {
            const ConvexBody2 K = random_polygon(3 + int(rng.below(10)), rng.next());
            const ConvexBody2 L = random_polygon(3 + int(rng.below(10)), rng.next());
            const double a = 2 * rng.uniform(), bq = 2 * rng.uniform();
            const ConvexBody2 S = minkowski_sum(scale(K, a), scale(L, bq));
            for (int i = 0; i < 64; ++i) {
                const Vec2 u{std::cos(kTwoPi * i / 64), std::sin(kTwoPi * i / 64)};
                REQUIRE(support(S, u) ==
                        Approx(a * support(K, u) + bq * support(L, u)).margin(1e-9));
            }
        }
    }
    SECTION("aK + bK = (a+b)K") {
        SplitMix64 rng(123);
        for (int t = 0; t < 50; ++t) {
            const ConvexBody2 K = random_polygon(3 + int(rng.below(10)), rng.next());
            const double a = 2 * rng.uniform(), bq = 2 * rng.uniform();
            REQUIRE(hausdorff(minkowski_sum(scale(K, a), scale(K, bq)), scale(K, a + bq)) <=
                    1e-9);
        }
    }
}

TEST_CASE("scale and reflect") {
    const ConvexBody2 sq = normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    REQUIRE(area(scale(sq, 2)) == Approx(4.0));
    REQUIRE(hausdorff(scale(sq, 1), sq) == 0.0);
    REQUIRE(scale(sq, 0).is_point());
    REQUIRE(scale(sq, 0).vertices()[0] == Vec2{0, 0});
    REQUIRE_THROWS_AS(scale(sq, -1), invalid_input);

    const ConvexBody2 csq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    REQUIRE(hausdorff(reflect(csq, Direction::from_angle(0)), csq) <= 1e-15);
    REQUIRE(reflect(ConvexBody2::point({1, 0}), Direction::from_angle(0)).vertices()[0] ==
            Vec2{-1, 0});
    const ConvexBody2 tri = right_triangle();
    REQUIRE(hausdorff(reflect(tri, Direction::from_angle(0)),
                      normalize({{0, 0}, {-1, 0}, {0, 1}})) <= 1e-15);

    SECTION("reflection is an involution") {
        SplitMix64 rng(7);
        for (int t = 0; t < 100; ++t) {
            const ConvexBody2 K = random_polygon(3 + int(rng.below(10)), rng.next());
            const Direction u = random_direction(rng);
            REQUIRE(hausdorff(reflect(reflect(K, u), u), K) <= 1e-12);
        }
    }
}

TEST_CASE("exact Hausdorff distance") {
    const ConvexBody2 a = normalize({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    const ConvexBody2 b = normalize({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}});
    REQUIRE(hausdorff(a, a) == 0.0);
    REQUIRE(hausdorff(a, b) == Approx(std::sqrt(2.0)));
    const ConvexBody2 sq = normalize({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    REQUIRE(hausdorff(sq, translate(sq, {0.25, 0})) == Approx(0.25));

    SECTION("metric properties and the sampled-direction oracle") {
        SplitMix64 rng(2718);
        for (int t = 0; t < 60; ++t) {
            const ConvexBody2 K = random_polygon(3 + int(rng.below(10)), rng.next());
            const ConvexBody2 L = random_polygon(3 + int(rng.below(10)), rng.next());
            const ConvexBody2 M = random_polygon(3 + int(rng.below(10)), rng.next());
            const double kl = hausdorff(K, L);
            REQUIRE(kl == Approx(hausdorff(L, K)).margin(1e-12));
            REQUIRE(kl <= hausdorff(K, M) + hausdorff(M, L) + 1e-9);
            const double sampled = sampled_hausdorff(K, L, 8192);
            REQUIRE(kl >= sampled - 1e-12);
            const double budget = std::max(diameter(K), diameter(L)) * (kTwoPi / 8192);
            REQUIRE(kl <= sampled + budget);
        }
    }
    SECTION("degenerate pairs") {
        REQUIRE(hausdorff(ConvexBody2::point({0, 0}), ConvexBody2::point({3, 4})) ==
                Approx(5.0));
        REQUIRE(hausdorff(ConvexBody2::segment({-1, 0}, {1, 0}),
                          ConvexBody2::point({0, 0})) == Approx(1.0));
    }
}

TEST_CASE("ball containment predicates") {
    const ConvexBody2 sq = normalize({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    REQUIRE(contains_ball(sq, Ball2{{0, 0}, 0.5}));
    REQUIRE(in_ball(sq, Ball2{{0, 0}, std::sqrt(2.0) / 2}));
    REQUIRE_FALSE(contains_ball(sq, Ball2{{0, 0}, 0.6}));
    REQUIRE_FALSE(in_ball(sq, Ball2{{0, 0}, 0.69}));
    REQUIRE(contains_ball(ConvexBody2::segment({0, 0}, {1, 0}), Ball2{{0.5, 0}, 0.0}));
    REQUIRE_FALSE(contains_ball(ConvexBody2::segment({0, 0}, {1, 0}), Ball2{{0.5, 0.5}, 0.0}));
}

TEST_CASE("inclusion excess") {
    const ConvexBody2 sq = normalize({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    const ConvexBody2 tri = right_triangle();
    REQUIRE(inclusion_excess(tri, sq) <= 0.0);
    REQUIRE(inclusion_excess(sq, tri) == Approx(std::sqrt(2.0)));
    REQUIRE(inclusion_excess(sq, sq) == Approx(0.0).margin(1e-15));
}

TEST_CASE("direction invariants") {
    for (double deg : {0.0, 45.0, 90.0, 179.0, 260.0, 359.9}) {
        const Direction d = Direction::from_degrees(deg);
        REQUIRE(d.ux * d.ux + d.uy * d.uy == Approx(1.0).margin(1e-12));
        REQUIRE(d.ux == Approx(std::cos(d.theta)).margin(1e-12));
        REQUIRE(d.theta >= 0.0);
        REQUIRE(d.theta < kTwoPi);
    }
    REQUIRE_THROWS_AS(Direction::from_vector({0, 0}), invalid_input);
    const Direction v = Direction::from_vector({3, 4});
    REQUIRE(v.ux == Approx(0.6));
    REQUIRE(v.uy == Approx(0.8));
}
